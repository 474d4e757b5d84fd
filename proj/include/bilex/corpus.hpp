#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bilex/types.hpp"

namespace bilex {

inline constexpr std::size_t kDefaultMinDocLength = 5;

// A tokenized monolingual corpus. Document i has doc id i.
struct Corpus {
  std::string language_tag;
  std::vector<std::vector<std::string>> documents;

  std::size_t num_docs() const { return documents.size(); }
  std::size_t num_tokens() const;
};

class Vocabulary {
 public:
  // Returns the id of `word`, assigning the next dense id on first sight.
  WordId add(const std::string& word, std::size_t count = 1);

  // Throws bilex::Error when the word is unknown.
  WordId id(const std::string& word) const;
  bool contains(const std::string& word) const { return index_.count(word) != 0; }
  const std::string* find_word(WordId id) const;

  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t frequency(WordId id) const { return frequencies_.at(id); }
  std::size_t size() const { return words_.size(); }

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::size_t>& frequencies() const { return frequencies_; }

 private:
  std::vector<std::string> words_;
  std::vector<std::size_t> frequencies_;
  std::unordered_map<std::string, WordId> index_;
};

// The inverted index: each word becomes a pseudo-document made of the ids of
// the documents it occurs in, one entry per occurrence, ascending.
struct PseudoDocCollection {
  std::vector<std::vector<DocId>> words;
  std::size_t num_docs = 0;

  std::size_t num_words() const { return words.size(); }
  std::size_t num_tokens() const;
  const std::vector<DocId>& tokens(WordId word) const { return words.at(word); }
};

// Splits a line on ASCII spaces and tabs.
std::vector<std::string> split_tokens(std::string_view line);

// One document per line. Blank lines are skipped and documents shorter than
// `min_length` tokens are dropped. Throws on unreadable or non-UTF-8 input
// and when nothing survives the filter.
Corpus load_corpus(const std::filesystem::path& path, const std::string& language_tag,
                   std::size_t min_length = kDefaultMinDocLength);

// Same filtering rules applied to in-memory lines.
Corpus make_corpus(std::span<const std::string> lines, const std::string& language_tag,
                   std::size_t min_length = kDefaultMinDocLength);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Word ids follow first-occurrence order.
Vocabulary build_vocabulary(const Corpus& corpus);

PseudoDocCollection invert_index(const Corpus& corpus, const Vocabulary& vocab);

// Document contents as word ids, in corpus order.
std::vector<std::vector<WordId>> encode_documents(const Corpus& corpus, const Vocabulary& vocab);

}  // namespace bilex

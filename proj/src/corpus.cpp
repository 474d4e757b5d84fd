#include "bilex/corpus.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "internal.hpp"

namespace bilex {

std::string_view side_name(Side side) { return side == Side::kTarget ? "target" : "source"; }

std::size_t Corpus::num_tokens() const {
  std::size_t total = 0;
  for (const auto& doc : documents) total += doc.size();
  return total;
}

WordId Vocabulary::add(const std::string& word, std::size_t count) {
  auto [it, inserted] = index_.try_emplace(word, static_cast<WordId>(words_.size()));
  if (inserted) {
    words_.push_back(word);
    frequencies_.push_back(0);
  }
  frequencies_[it->second] += count;
  return it->second;
}

WordId Vocabulary::id(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) throw Error("unknown word '" + word + "'");
  return it->second;
}

const std::string* Vocabulary::find_word(WordId id) const {
  return id < words_.size() ? &words_[id] : nullptr;
}

std::size_t PseudoDocCollection::num_tokens() const {
  std::size_t total = 0;
  for (const auto& w : words) total += w.size();
  return total;
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

Corpus make_corpus(std::span<const std::string> lines, const std::string& language_tag,
                   std::size_t min_length) {
  Corpus corpus;
  corpus.language_tag = language_tag;
  std::size_t line_no = 0;
  for (std::string_view line : lines) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!detail::is_valid_utf8(line)) {
      throw Error("corpus '" + language_tag + "': invalid UTF-8 on line " + std::to_string(line_no));
    }
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.size() < min_length) continue;
    corpus.documents.push_back(std::move(tokens));
  }
  if (corpus.documents.empty()) throw Error("corpus '" + language_tag + "': empty corpus");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const std::string& language_tag,
                   std::size_t min_length) {
  auto lines = detail::read_lines(path);
  try {
    return make_corpus(lines, language_tag, min_length);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& doc : corpus.documents) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (i) out << ' ';
      out << doc[i];
    }
    out << '\n';
  }
  detail::write_file(path, out.str());
}

Vocabulary build_vocabulary(const Corpus& corpus) {
  if (corpus.documents.empty()) throw Error("cannot build a vocabulary from an empty corpus");
  Vocabulary vocab;
  for (const auto& doc : corpus.documents) {
    for (const auto& token : doc) vocab.add(token);
  }
  return vocab;
}

std::vector<std::vector<WordId>> encode_documents(const Corpus& corpus, const Vocabulary& vocab) {
  std::vector<std::vector<WordId>> encoded;
  encoded.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    auto& ids = encoded.emplace_back();
    ids.reserve(doc.size());
    for (const auto& token : doc) {
      if (!vocab.contains(token)) {
        throw Error("vocabulary does not match corpus '" + corpus.language_tag + "': missing '" + token + "'");
      }
      ids.push_back(vocab.id(token));
    }
  }
  return encoded;
}

PseudoDocCollection invert_index(const Corpus& corpus, const Vocabulary& vocab) {
  PseudoDocCollection pdocs;
  pdocs.num_docs = corpus.documents.size();
  pdocs.words.resize(vocab.size());
  for (WordId w = 0; w < vocab.size(); ++w) pdocs.words[w].reserve(vocab.frequency(w));

  auto encoded = encode_documents(corpus, vocab);
  // Documents are visited in id order, so each pseudo-document comes out sorted.
  for (DocId d = 0; d < encoded.size(); ++d) {
    for (WordId w : encoded[d]) pdocs.words[w].push_back(d);
  }
  for (WordId w = 0; w < vocab.size(); ++w) {
    if (pdocs.words[w].size() != vocab.frequency(w)) {
      throw Error("vocabulary does not match corpus '" + corpus.language_tag + "': frequency of '" +
                  vocab.word(w) + "' differs");
    }
  }
  return pdocs;
}

}  // namespace bilex

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bilex/corpus.hpp"

namespace bilex {

using StringPairs = std::vector<std::pair<std::string, std::string>>;

// Noisy seed dictionary, source word -> candidate target words. Candidate
// lists are sorted by word id and duplicate-free.
struct SeedDictionary {
  std::map<WordId, std::vector<WordId>> entries;
  Side from = Side::kSource;

  std::size_t size() const { return entries.size(); }
  bool contains(WordId source) const { return entries.count(source) != 0; }
  std::size_t num_candidates(WordId source) const;

  // Reverses the direction; candidate lists stay sorted.
  SeedDictionary transpose() const;
};

// One target per source word. A target may be shared by several sources.
struct PairedDictionary {
  std::map<WordId, WordId> pairs;

  std::size_t size() const { return pairs.size(); }
  SeedDictionary as_seed() const;
};

enum class Split { kFull, kNew };

struct GoldEntry {
  std::vector<WordId> targets;  // sorted, acceptable translations
  bool is_new = false;          // source word has no seed dictionary entry
};

struct TestSet {
  std::map<WordId, GoldEntry> gold;

  std::size_t size() const { return gold.size(); }
  std::size_t count(Split split) const;
  bool accepts(WordId source, WordId target) const;
};

// Parses `source<TAB>target` lines; '#' comments and blank lines are skipped.
// Throws on any line without exactly two fields.
StringPairs read_pair_file(const std::filesystem::path& path);
void write_pair_file(const StringPairs& pairs, const std::filesystem::path& path);

// Groups pairs by source word, dropping pairs with a word outside either
// vocabulary. Throws when nothing survives.
SeedDictionary make_dictionary(const StringPairs& pairs, const Vocabulary& src_vocab,
                               const Vocabulary& tgt_vocab);
SeedDictionary load_dictionary(const std::filesystem::path& path, const Vocabulary& src_vocab,
                               const Vocabulary& tgt_vocab);

// Picks the candidate with the highest target-corpus frequency; ties go to
// the smaller word id.
PairedDictionary most_frequent_pairing(const SeedDictionary& dict, const Vocabulary& tgt_vocab);
PairedDictionary most_frequent_pairing(const SeedDictionary& dict, std::span<const std::size_t> tgt_frequency);

// Dropped OOV pairs are reported through `warnings` when it is non-null.
TestSet make_test_set(const StringPairs& pairs, const SeedDictionary& seed, const Vocabulary& src_vocab,
                      const Vocabulary& tgt_vocab, std::vector<std::string>* warnings = nullptr);
TestSet load_test_set(const std::filesystem::path& path, const SeedDictionary& seed,
                      const Vocabulary& src_vocab, const Vocabulary& tgt_vocab,
                      std::vector<std::string>* warnings = nullptr);

}  // namespace bilex

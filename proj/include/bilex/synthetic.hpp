#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bilex/corpus.hpp"
#include "bilex/dictionary.hpp"

namespace bilex {

// Bilingual corpus with known translations. Each word has a topic mixture
// (shared by the two halves of a true pair) and each document a topic
// profile; a token of topic k lands in document d with probability
// proportional to the profile weight of d on k.
struct SyntheticSpec {
  std::size_t topics = 5;
  std::size_t docs_per_language = 500;
  std::size_t mean_doc_length = 20;  // word frequencies are uniform in [m/2, 3m/2] with m = docs * length / vocab
  std::size_t source_vocab = 100;
  std::size_t target_vocab = 100;
  std::size_t seed_pairs = 60;       // true pairs listed in the seed dictionary
  std::size_t gold_pairs = 40;       // true pairs held out as the test set
  double noise_rate = 0.4;           // fraction of seed entries given one spurious extra candidate
  double alpha = 0.5;                // Dirichlet prior of per-word topic mixtures
  double doc_concentration = 0.1;    // Dirichlet prior of per-document topic profiles
  std::size_t min_doc_length = kDefaultMinDocLength;
  std::uint64_t rng_seed = 1;

  // Throws bilex::Error when the spec cannot be satisfied.
  void validate() const;
};

struct SyntheticData {
  Corpus target;
  Corpus source;
  StringPairs seed_dictionary;
  StringPairs test_set;
  // Every true pair, seed and held-out alike: source word -> target word.
  std::map<std::string, std::string> truth;
  // Source words whose seed entry carries a spurious candidate.
  std::vector<std::string> noisy_words;
  // Sampled pseudo-documents by word, after short documents were removed;
  // indexed by Side.
  std::array<std::map<std::string, std::vector<DocId>>, 2> pseudo_docs;
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Writes source.txt, target.txt, seed_dict.tsv and test_set.tsv into `dir`.
void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir);

}  // namespace bilex

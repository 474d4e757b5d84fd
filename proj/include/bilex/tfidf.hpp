#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bilex/corpus.hpp"
#include "bilex/dictionary.hpp"
#include "bilex/similarity.hpp"

namespace bilex {

inline constexpr std::size_t kDefaultWindow = 4;

// Context vectors of one language over seed-pair pivot dimensions. Pivot i
// is the side's half of the i-th pair of the paired dictionary, so source and
// target vectors built from the same pairing share their axes.
struct ContextVectors {
  using SparseVector = std::vector<std::pair<std::uint32_t, double>>;  // (pivot, weight), ascending pivot

  std::size_t window = kDefaultWindow;
  std::vector<WordId> pivots;   // pivot index -> word id on this side
  std::vector<double> idf;      // per pivot; 0 when the pivot never occurs
  std::vector<SparseVector> vectors;  // per word

  const SparseVector& vector(WordId word) const { return vectors.at(word); }
};

// tf(w, p) counts occurrences of pivot p within +-window tokens of w inside a
// document; idf(p) = ln(N / df(p)). Entries are tf * idf; zeros are omitted.
ContextVectors build_context_vectors(std::span<const std::vector<WordId>> documents, std::size_t num_words,
                                     std::span<const WordId> pivots, std::size_t window = kDefaultWindow);

ContextVectors build_context_vectors(const Corpus& corpus, const Vocabulary& vocab, const PairedDictionary& seed_pairs,
                                     Side side, std::size_t window = kDefaultWindow);

double sparse_cosine(const ContextVectors::SparseVector& a, const ContextVectors::SparseVector& b);

// Cosine ranking of every candidate-side word. Returns nullopt when the query
// has an all-zero context vector.
std::optional<RankedCandidates> rank_tfidf(WordId query, Side query_side, const ContextVectors& query_vectors,
                                           const ContextVectors& candidate_vectors, std::size_t top = 0);

}  // namespace bilex

#include "bilex/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bilex {

ContextVectors build_context_vectors(std::span<const std::vector<WordId>> documents, std::size_t num_words,
                                     std::span<const WordId> pivots, std::size_t window) {
  if (window < 1) throw Error("context window must be at least 1");
  if (pivots.empty()) throw Error("context vectors need at least one seed pair");

  ContextVectors cv;
  cv.window = window;
  cv.pivots.assign(pivots.begin(), pivots.end());

  // A word may back several pivot axes (a target cited by several sources).
  std::vector<std::vector<std::uint32_t>> axes_of(num_words);
  for (std::uint32_t p = 0; p < pivots.size(); ++p) {
    if (pivots[p] >= num_words) throw Error("pivot word outside the vocabulary");
    axes_of[pivots[p]].push_back(p);
  }

  std::vector<std::size_t> df(pivots.size(), 0);
  std::vector<std::map<std::uint32_t, double>> tf(num_words);
  std::vector<char> seen(num_words, 0);
  for (const auto& doc : documents) {
    for (WordId w : doc) {
      if (w >= num_words) throw Error("document token outside the vocabulary");
      if (!seen[w]) {
        seen[w] = 1;
        for (auto p : axes_of[w]) ++df[p];
      }
    }
    for (WordId w : doc) seen[w] = 0;

    const std::size_t n = doc.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i >= window ? i - window : 0;
      const std::size_t hi = std::min(n - 1, i + window);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i) continue;
        for (auto p : axes_of[doc[j]]) tf[doc[i]][p] += 1.0;
      }
    }
  }

  const double n_docs = static_cast<double>(documents.size());
  cv.idf.assign(pivots.size(), 0.0);
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    if (df[p] > 0) cv.idf[p] = std::log(n_docs / static_cast<double>(df[p]));
  }

  cv.vectors.resize(num_words);
  for (std::size_t w = 0; w < num_words; ++w) {
    for (const auto& [p, count] : tf[w]) {
      const double weight = count * cv.idf[p];
      if (weight != 0.0) cv.vectors[w].emplace_back(p, weight);
    }
  }
  return cv;
}

ContextVectors build_context_vectors(const Corpus& corpus, const Vocabulary& vocab, const PairedDictionary& seed_pairs,
                                     Side side, std::size_t window) {
  std::vector<WordId> pivots;
  pivots.reserve(seed_pairs.size());
  for (const auto& [source, target] : seed_pairs.pairs) pivots.push_back(side == Side::kSource ? source : target);
  const auto documents = encode_documents(corpus, vocab);
  return build_context_vectors(documents, vocab.size(), pivots, window);
}

double sparse_cosine(const ContextVectors::SparseVector& a, const ContextVectors::SparseVector& b) {
  double na = 0.0, nb = 0.0, dot = 0.0;
  for (const auto& [_, v] : a) na += v * v;
  for (const auto& [_, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::optional<RankedCandidates> rank_tfidf(WordId query, Side query_side, const ContextVectors& query_vectors,
                                           const ContextVectors& candidate_vectors, std::size_t top) {
  if (query_vectors.pivots.size() != candidate_vectors.pivots.size()) {
    throw Error("context vectors are built over different pivot sets");
  }
  const auto& q = query_vectors.vector(query);
  if (q.empty()) return std::nullopt;

  RankedCandidates out;
  out.query = query;
  out.query_side = query_side;
  out.measure = Measure::kCosine;
  out.entries.reserve(candidate_vectors.vectors.size());
  for (WordId c = 0; c < candidate_vectors.vectors.size(); ++c) {
    out.entries.push_back({c, sparse_cosine(q, candidate_vectors.vectors[c])});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  if (top && out.entries.size() > top) out.entries.resize(top);
  return out;
}

}  // namespace bilex

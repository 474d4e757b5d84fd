#include "bilex/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace bilex {

namespace {

constexpr double kNormalizationTolerance = 1e-6;

void check_normalized(std::span<const double> p, const char* what) {
  double total = 0.0;
  for (double v : p) {
    if (v < 0.0) throw Error(std::string(what) + " has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) throw Error(std::string(what) + " is not normalized");
}

}  // namespace

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::kCosine: return "cosine";
    case Measure::kKl: return "kl";
    case Measure::kSelProb: return "selprob";
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  for (auto m : {Measure::kCosine, Measure::kKl, Measure::kSelProb}) {
    if (measure_name(m) == name) return m;
  }
  throw Error("unknown measure '" + std::string(name) + "'");
}

bool higher_is_better(Measure measure) { return measure != Measure::kKl; }

std::optional<std::size_t> RankedCandidates::rank_of(WordId word) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].word == word) return i + 1;
  }
  return std::nullopt;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("cosine: length mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) throw Error("cosine: zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("kl_divergence: length mismatch");
  check_normalized(p, "kl_divergence: first distribution");
  check_normalized(q, "kl_divergence: second distribution");
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) throw Error("kl_divergence: zero entry in the second distribution");
    d += p[k] * std::log(p[k] / q[k]);
  }
  return d;
}

double sel_prob_log(std::span<const DocId> query_tokens, std::span<const double> candidate_theta,
                    const PosteriorEstimates& estimates, Side query_side) {
  const std::size_t K = estimates.topics;
  if (candidate_theta.size() != K) throw Error("sel_prob_log: topic count mismatch");
  const auto l = index_of(query_side);
  const std::size_t V = estimates.num_docs[l];
  const auto& phi = estimates.phi[l];
  double total = 0.0;
  // Pseudo-documents are sorted, so repeated documents form runs.
  std::size_t i = 0;
  while (i < query_tokens.size()) {
    const DocId d = query_tokens[i];
    if (d >= V) throw Error("sel_prob_log: token references a document outside the topic distributions");
    std::size_t run = 1;
    while (i + run < query_tokens.size() && query_tokens[i + run] == d) ++run;
    double mixture = 0.0;
    for (std::size_t k = 0; k < K; ++k) mixture += phi[k * V + d] * candidate_theta[k];
    total += static_cast<double>(run) * std::log(mixture);
    i += run;
  }
  return total;
}

RankedCandidates rank_candidates(WordId query, Side query_side, std::span<const WordId> candidates,
                                 Measure measure, const PosteriorEstimates& estimates,
                                 const PseudoDocCollection& query_pdocs, const RankOptions& options) {
  if (candidates.empty()) throw Error("rank_candidates: empty candidate set");
  const Side cand_side = other(query_side);
  const auto query_theta = estimates.theta_row(query_side, query);

  RankedCandidates out;
  out.query = query;
  out.query_side = query_side;
  out.measure = measure;
  out.entries.reserve(candidates.size());

  std::span<const DocId> query_tokens;
  if (measure == Measure::kSelProb) {
    if (query >= query_pdocs.num_words()) throw Error("rank_candidates: query has no pseudo-document");
    query_tokens = query_pdocs.tokens(query);
  }

  for (WordId c : candidates) {
    const auto theta = estimates.theta_row(cand_side, c);
    double score = 0.0;
    switch (measure) {
      case Measure::kCosine: score = cosine(query_theta, theta); break;
      case Measure::kKl:
        score = options.kl_direction == KlDirection::kQueryFirst ? kl_divergence(query_theta, theta)
                                                                 : kl_divergence(theta, query_theta);
        break;
      case Measure::kSelProb: score = sel_prob_log(query_tokens, theta, estimates, query_side); break;
    }
    out.entries.push_back({c, score});
  }

  const bool descending = higher_is_better(measure);
  auto better = [descending](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.score != b.score) return descending ? a.score > b.score : a.score < b.score;
    return a.word < b.word;
  };
  std::sort(out.entries.begin(), out.entries.end(), better);
  out.entries.erase(std::unique(out.entries.begin(), out.entries.end(),
                                [](const auto& a, const auto& b) { return a.word == b.word; }),
                    out.entries.end());
  if (options.top && out.entries.size() > options.top) out.entries.resize(options.top);
  return out;
}

std::vector<WordId> all_candidates(const PosteriorEstimates& estimates, Side query_side,
                                   const PseudoDocCollection* candidate_pdocs, std::size_t min_frequency) {
  const auto n = estimates.num_words[index_of(other(query_side))];
  std::vector<WordId> out;
  out.reserve(n);
  for (WordId w = 0; w < n; ++w) {
    if (min_frequency && candidate_pdocs && candidate_pdocs->tokens(w).size() < min_frequency) continue;
    out.push_back(w);
  }
  return out;
}

double doc_given_word(DocId doc, Side doc_side, WordId word, const PosteriorEstimates& estimates) {
  const auto theta = estimates.theta_row(other(doc_side), word);
  double p = 0.0;
  for (Topic k = 0; k < estimates.topics; ++k) p += estimates.phi_at(doc_side, k, doc) * theta[k];
  return p;
}

void write_ranking_rows(std::ostream& out, const RankedCandidates& ranking, const Vocabulary& query_vocab,
                        const Vocabulary& candidate_vocab, std::size_t top) {
  const auto& query = query_vocab.word(ranking.query);
  const std::size_t n = top ? std::min(top, ranking.entries.size()) : ranking.entries.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = ranking.entries[i];
    out << query << '\t' << (i + 1) << '\t' << candidate_vocab.word(e.word) << '\t'
        << detail::format_score(e.score) << '\n';
  }
}

}  // namespace bilex

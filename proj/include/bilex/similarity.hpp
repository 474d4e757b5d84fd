#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "bilex/corpus.hpp"
#include "bilex/sampler.hpp"

namespace bilex {

enum class Measure { kCosine, kKl, kSelProb };

std::string_view measure_name(Measure measure);
Measure parse_measure(std::string_view name);
// Whether larger scores rank first.
bool higher_is_better(Measure measure);

struct ScoredCandidate {
  WordId word = 0;
  double score = 0.0;
};

struct RankedCandidates {
  WordId query = 0;
  Side query_side = Side::kSource;
  Measure measure = Measure::kCosine;
  std::vector<ScoredCandidate> entries;  // best first

  // 1-based rank of `word`, or nullopt when absent.
  std::optional<std::size_t> rank_of(WordId word) const;
};

double cosine(std::span<const double> a, std::span<const double> b);

// D(p || q) in nats. Both arguments must be normalized within 1e-6 and q
// strictly positive wherever p is.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// log p(query pseudo-document | candidate topic mixture) in nats: the sum
// over tokens of the log of the mixture sum_k phi_k(doc) theta_k.
double sel_prob_log(std::span<const DocId> query_tokens, std::span<const double> candidate_theta,
                    const PosteriorEstimates& estimates, Side query_side);

// KL ranks by D(query || candidate) unless reversed.
enum class KlDirection { kQueryFirst, kCandidateFirst };

struct RankOptions {
  KlDirection kl_direction = KlDirection::kQueryFirst;
  std::size_t top = 0;  // 0 keeps every candidate
};

// Scores `candidates` (words on the other side) against `query`. selProb
// needs the query side's pseudo-documents. Sorted best first; ties go to the
// smaller word id. Throws on unknown ids or an empty candidate set.
RankedCandidates rank_candidates(WordId query, Side query_side, std::span<const WordId> candidates,
                                 Measure measure, const PosteriorEstimates& estimates,
                                 const PseudoDocCollection& query_pdocs, const RankOptions& options = {});

// Every word on the other side, optionally restricted to a corpus frequency
// of at least `min_frequency` tokens.
std::vector<WordId> all_candidates(const PosteriorEstimates& estimates, Side query_side,
                                   const PseudoDocCollection* candidate_pdocs = nullptr,
                                   std::size_t min_frequency = 0);

// p(d | w) = sum_z phi_side(d | z) theta_w(z), for a document on `doc_side`
// and a word on the other side.
double doc_given_word(DocId doc, Side doc_side, WordId word, const PosteriorEstimates& estimates);

// `query<TAB>rank<TAB>candidate<TAB>score` rows, scores with 6 significant
// digits.
void write_ranking_rows(std::ostream& out, const RankedCandidates& ranking, const Vocabulary& query_vocab,
                        const Vocabulary& candidate_vocab, std::size_t top = 0);

}  // namespace bilex

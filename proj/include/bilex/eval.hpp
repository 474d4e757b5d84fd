#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bilex/dictionary.hpp"
#include "bilex/similarity.hpp"

namespace bilex {

// Per-query rankings keyed by query word id. A query with an empty entry
// list (e.g. no tf-idf context) counts as a miss.
using RankingSet = std::map<WordId, RankedCandidates>;

// Fraction of gold queries in `split` whose top-k candidates contain an
// acceptable target. Throws when the split is empty or a gold query has no
// ranking.
double accuracy_at_k(const RankingSet& rankings, const TestSet& gold, std::size_t k, Split split = Split::kFull);

struct RankingRun {
  std::string model;
  std::string measure;
  RankingSet rankings;
};

struct EvalRow {
  std::string model;
  std::string measure;
  std::optional<double> acc1_full, acc10_full, acc1_new, acc10_new;  // nullopt: split empty
  std::size_t n_full = 0;
  std::size_t n_new = 0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::map<std::string, std::string> fingerprint;  // configuration, seeds, input hashes
};

EvalReport evaluate(std::span<const RankingRun> runs, const TestSet& test,
                    std::map<std::string, std::string> fingerprint = {});

// Tab-separated table with a header row; absent cells read "NA".
std::string report_to_tsv(const EvalReport& report);
// JSON sidecar with the fingerprint and query counts.
std::string report_metadata_json(const EvalReport& report);

// Ranks every gold query of `test` against the full target vocabulary.
RankingSet rank_test_queries(const TestSet& test, Measure measure, const PosteriorEstimates& estimates,
                             const PseudoDocCollection& source_pdocs, std::size_t top = 10);

// Parses ranking TSV rows back into a RankingSet using the vocabularies.
RankingSet read_ranking_rows(const std::string& tsv, const Vocabulary& query_vocab, const Vocabulary& candidate_vocab,
                             Measure measure);

// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace bilex

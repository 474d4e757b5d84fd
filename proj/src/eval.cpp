#include "bilex/eval.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "internal.hpp"

namespace bilex {

namespace {

std::string format_accuracy(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

}  // namespace

double accuracy_at_k(const RankingSet& rankings, const TestSet& gold, std::size_t k, Split split) {
  if (k == 0) throw Error("accuracy_at_k: k must be positive");
  std::size_t total = 0;
  std::size_t hits = 0;
  for (const auto& [query, entry] : gold.gold) {
    if (split == Split::kNew && !entry.is_new) continue;
    auto it = rankings.find(query);
    if (it == rankings.end()) throw Error("accuracy_at_k: no ranking for gold query " + std::to_string(query));
    ++total;
    const auto& list = it->second.entries;
    const std::size_t n = std::min(k, list.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (std::binary_search(entry.targets.begin(), entry.targets.end(), list[i].word)) {
        ++hits;
        break;
      }
    }
  }
  if (total == 0) throw Error("accuracy_at_k: empty gold set");
  return static_cast<double>(hits) / static_cast<double>(total);
}

EvalReport evaluate(std::span<const RankingRun> runs, const TestSet& test, std::map<std::string, std::string> fingerprint) {
  EvalReport report;
  report.fingerprint = std::move(fingerprint);
  const std::size_t n_full = test.count(Split::kFull);
  const std::size_t n_new = test.count(Split::kNew);
  for (const auto& run : runs) {
    EvalRow row;
    row.model = run.model;
    row.measure = run.measure;
    row.n_full = n_full;
    row.n_new = n_new;
    row.acc1_full = accuracy_at_k(run.rankings, test, 1, Split::kFull);
    row.acc10_full = accuracy_at_k(run.rankings, test, 10, Split::kFull);
    if (n_new > 0) {
      row.acc1_new = accuracy_at_k(run.rankings, test, 1, Split::kNew);
      row.acc10_new = accuracy_at_k(run.rankings, test, 10, Split::kNew);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string report_to_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "model\tmeasure\tacc1_full\tacc10_full\tacc1_new\tacc10_new\tn_full\tn_new\n";
  for (const auto& row : report.rows) {
    out << row.model << '\t' << row.measure << '\t' << format_accuracy(row.acc1_full) << '\t'
        << format_accuracy(row.acc10_full) << '\t' << format_accuracy(row.acc1_new) << '\t'
        << format_accuracy(row.acc10_new) << '\t' << row.n_full << '\t' << row.n_new << '\n';
  }
  return out.str();
}

std::string report_metadata_json(const EvalReport& report) {
  nlohmann::json j;
  j["fingerprint"] = report.fingerprint;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    j["rows"].push_back({{"model", row.model}, {"measure", row.measure}, {"n_full", row.n_full}, {"n_new", row.n_new}});
  }
  return j.dump(2) + "\n";
}

RankingSet rank_test_queries(const TestSet& test, Measure measure, const PosteriorEstimates& estimates,
                             const PseudoDocCollection& source_pdocs, std::size_t top) {
  const auto candidates = all_candidates(estimates, Side::kSource);
  RankingSet out;
  RankOptions options;
  options.top = top;
  for (const auto& [query, _] : test.gold) {
    out.emplace(query, rank_candidates(query, Side::kSource, candidates, measure, estimates, source_pdocs, options));
  }
  return out;
}

RankingSet read_ranking_rows(const std::string& tsv, const Vocabulary& query_vocab, const Vocabulary& candidate_vocab,
                             Measure measure) {
  RankingSet out;
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto fields = detail::split_fields(line, '\t');
    if (fields.size() != 4) throw Error("malformed ranking row: " + line);
    const WordId q = query_vocab.id(std::string(fields[0]));
    const auto rank = std::stoul(std::string(fields[1]));
    auto& ranking = out[q];
    ranking.query = q;
    ranking.measure = measure;
    if (rank != ranking.entries.size() + 1) throw Error("ranking rows out of order for '" + std::string(fields[0]) + "'");
    ranking.entries.push_back({candidate_vocab.id(std::string(fields[2])), std::stod(std::string(fields[3]))});
  }
  return out;
}

std::string file_sha256(const std::filesystem::path& path) {
  const auto data = detail::read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed for '" + path.string() + "'");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

}  // namespace bilex

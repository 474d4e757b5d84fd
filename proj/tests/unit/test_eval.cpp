#include <doctest.h>

#include "bilex/eval.hpp"
#include "temp_dir.hpp"

using namespace bilex;

namespace {

RankedCandidates ranking(WordId q, std::vector<WordId> words) {
  RankedCandidates r;
  r.query = q;
  double s = 1.0;
  for (auto w : words) r.entries.push_back({w, s -= 0.1});
  return r;
}

TestSet gold(std::vector<std::tuple<WordId, std::vector<WordId>, bool>> rows) {
  TestSet t;
  for (auto& [q, targets, is_new] : rows) t.gold[q] = {targets, is_new};
  return t;
}

}  // namespace

TEST_CASE("accuracy at k by definition") {
  auto t = gold({{0, {5}, false}});
  RankingSet r{{0, ranking(0, {4, 5, 6})}};
  CHECK(accuracy_at_k(r, t, 1) == 0.0);
  CHECK(accuracy_at_k(r, t, 10) == 1.0);
  CHECK_THROWS_AS(accuracy_at_k(r, t, 0), Error);
}

TEST_CASE("any acceptable target counts") {
  auto t = gold({{0, {3, 4}, false}, {1, {9}, true}});
  RankingSet r{{0, ranking(0, {4, 1})}, {1, ranking(1, {2, 1})}};
  CHECK(accuracy_at_k(r, t, 1) == 0.5);
  CHECK(accuracy_at_k(r, t, 1, Split::kNew) == 0.0);
}

TEST_CASE("k at least the candidate count gives the found fraction") {
  auto t = gold({{0, {2}, false}, {1, {7}, false}, {2, {1}, false}});
  RankingSet r{{0, ranking(0, {0, 1, 2})}, {1, ranking(1, {0, 1, 2})}, {2, ranking(2, {0, 1, 2})}};
  CHECK(accuracy_at_k(r, t, 3) == doctest::Approx(2.0 / 3.0));
  CHECK(accuracy_at_k(r, t, 50) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("accuracy is monotone in k") {
  auto t = gold({{0, {2}, false}, {1, {7}, false}, {2, {0}, true}, {3, {3}, true}});
  RankingSet r;
  for (WordId q = 0; q < 4; ++q) r[q] = ranking(q, {(q + 1) % 8, q, 3, 2, 7, 0});
  double prev = 0.0;
  for (std::size_t k = 1; k <= 8; ++k) {
    const double a = accuracy_at_k(r, t, k);
    CHECK(a >= prev);
    CHECK(a <= 1.0);
    prev = a;
  }
}

TEST_CASE("empty gold and missing rankings are errors") {
  RankingSet r;
  CHECK_THROWS_AS(accuracy_at_k(r, TestSet{}, 1), Error);
  auto t = gold({{0, {1}, false}});
  CHECK_THROWS_AS(accuracy_at_k(r, t, 1), Error);
  CHECK_THROWS_AS(accuracy_at_k(RankingSet{{0, ranking(0, {1})}}, t, 1, Split::kNew), Error);
}

TEST_CASE("report with two queries") {
  auto t = gold({{0, {5}, false}, {1, {6}, true}});
  RankingRun run{"blockprobbilda", "selprob", {{0, ranking(0, {5})}, {1, ranking(1, {1, 6})}}};
  auto rep = evaluate(std::span(&run, 1), t, {{"seed", "1"}});
  REQUIRE(rep.rows.size() == 1);
  const auto& row = rep.rows[0];
  CHECK(*row.acc1_full == 0.5);
  CHECK(*row.acc10_full == 1.0);
  CHECK(*row.acc1_new == 0.0);
  CHECK(*row.acc10_new == 1.0);
  CHECK(row.n_full == 2);
  CHECK(row.n_new == 1);
  CHECK(report_to_tsv(rep) ==
        "model\tmeasure\tacc1_full\tacc10_full\tacc1_new\tacc10_new\tn_full\tn_new\n"
        "blockprobbilda\tselprob\t0.500000\t1.000000\t0.000000\t1.000000\t2\t1\n");
  CHECK(report_to_tsv(rep) == report_to_tsv(evaluate(std::span(&run, 1), t, {{"seed", "1"}})));
  CHECK(report_metadata_json(rep).find("\"seed\": \"1\"") != std::string::npos);
}

TEST_CASE("empty new split is marked absent") {
  auto t = gold({{0, {5}, false}});
  RankingRun run{"bilda", "kl", {{0, ranking(0, {5})}}};
  auto rep = evaluate(std::span(&run, 1), t);
  CHECK_FALSE(rep.rows[0].acc1_new.has_value());
  CHECK(report_to_tsv(rep).find("1.000000\t1.000000\tNA\tNA\t1\t0") != std::string::npos);
}

TEST_CASE("ranking rows read back") {
  Vocabulary qv, cv;
  qv.add("q");
  cv.add("a");
  cv.add("b");
  auto rs = read_ranking_rows("q\t1\tb\t0.5\nq\t2\ta\t0.25\n", qv, cv, Measure::kCosine);
  REQUIRE(rs.at(0).entries.size() == 2);
  CHECK(rs.at(0).entries[0].word == 1);
  CHECK_THROWS_AS(read_ranking_rows("q\t2\ta\t0.1\n", qv, cv, Measure::kCosine), Error);
  CHECK_THROWS_AS(read_ranking_rows("q\t1\ta\n", qv, cv, Measure::kCosine), Error);
}

TEST_CASE("sha256 of a file") {
  bilex::testing::TempDir dir;
  CHECK(file_sha256(dir.write("a", "abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(file_sha256(dir.write("e", "")) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bilex/similarity.hpp"

using namespace bilex;

namespace {

// K=2, two source documents; target words: 0 equal to the query, 1 far, 2 between.
PosteriorEstimates hand_estimates() {
  PosteriorEstimates e;
  e.topics = 2;
  e.num_words = {3, 1};
  e.num_docs = {2, 2};
  e.theta[0] = {0.8, 0.2, 0.05, 0.95, 0.5, 0.5};
  e.theta[1] = {0.8, 0.2};
  e.phi[0] = {0.5, 0.5, 0.5, 0.5};
  e.phi[1] = {0.9, 0.1, 0.2, 0.8};
  e.samples = 1;
  return e;
}

double scalar_cos(double a0, double a1, double b0, double b1) {
  return (a0 * b0 + a1 * b1) / (std::sqrt(a0 * a0 + a1 * a1) * std::sqrt(b0 * b0 + b1 * b1));
}

}  // namespace

TEST_CASE("cosine examples") {
  std::vector<double> h{0.5, 0.5}, e0{1, 0}, e1{0, 1}, a{0.7, 0.3}, b{0.3, 0.7};
  CHECK(cosine(h, h) == doctest::Approx(1.0));
  CHECK(cosine(e0, e1) == 0.0);
  CHECK(std::abs(cosine(a, b) - 0.72414) < 1e-5);
  CHECK(cosine(a, b) == cosine(b, a));
  std::vector<double> z{0, 0}, three{1, 0, 0};
  CHECK_THROWS_AS(cosine(a, z), Error);
  CHECK_THROWS_AS(cosine(a, three), Error);
}

TEST_CASE("KL examples") {
  std::vector<double> a{0.7, 0.3}, b{0.3, 0.7}, c{0.6, 0.4};
  CHECK(kl_divergence(a, a) == 0.0);
  CHECK(std::abs(kl_divergence(a, b) - 0.33892) < 1e-5);
  CHECK(std::abs(kl_divergence(a, b) - 0.4 * std::log(7.0 / 3.0)) < 1e-12);
  CHECK(kl_divergence(a, c) != doctest::Approx(kl_divergence(c, a)));
  std::vector<double> zero{1.0, 0.0}, bad{0.5, 0.6};
  CHECK_THROWS_AS(kl_divergence(a, zero), Error);
  CHECK_THROWS_AS(kl_divergence(bad, a), Error);
  CHECK(kl_divergence(zero, a) == doctest::Approx(std::log(1.0 / 0.7)));
}

TEST_CASE("selProb examples") {
  PosteriorEstimates e;
  e.topics = 2;
  e.num_words = {1, 1};
  e.num_docs = {2, 2};
  e.phi[1] = {0.6, 0.4, 0.2, 0.8};
  e.phi[0] = {0.5, 0.5, 0.5, 0.5};
  e.theta[0] = {0.5, 0.5};
  e.theta[1] = {0.5, 0.5};
  std::vector<DocId> tokens{0, 0, 1};
  std::vector<double> theta{0.5, 0.5};
  const double s = sel_prob_log(tokens, theta, e, Side::kSource);
  CHECK(std::abs(s - (-2.34341)) < 1e-5);
  CHECK(std::abs(s - (2 * std::log(0.4) + std::log(0.6))) < 1e-12);

  std::vector<DocId> longer{0, 0, 1, 1};
  CHECK(sel_prob_log(longer, theta, e, Side::kSource) < s);

  std::vector<DocId> outside{0, 2};
  CHECK_THROWS_AS(sel_prob_log(outside, theta, e, Side::kSource), Error);
}

TEST_CASE("selProb with one topic is the sum of log phi") {
  PosteriorEstimates e;
  e.topics = 1;
  e.num_words = {1, 1};
  e.num_docs = {3, 3};
  e.phi[1] = {0.2, 0.3, 0.5};
  e.phi[0] = {0.2, 0.3, 0.5};
  std::vector<DocId> tokens{2, 0, 2};
  std::vector<double> theta{1.0};
  CHECK(sel_prob_log(tokens, theta, e, Side::kSource) ==
        doctest::Approx(2 * std::log(0.5) + std::log(0.2)).epsilon(1e-12));
}

TEST_CASE("the matching candidate ranks first under every measure") {
  auto e = hand_estimates();
  PseudoDocCollection q{{{0, 0, 0, 1}}, 2};
  std::vector<WordId> cands{0, 1, 2};
  for (auto m : {Measure::kCosine, Measure::kKl, Measure::kSelProb}) {
    CAPTURE(measure_name(m));
    auto r = rank_candidates(0, Side::kSource, cands, m, e, q);
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries.front().word == 0);
    CHECK(r.entries.back().word == 1);
    CHECK(r.rank_of(2) == 2u);
  }
  auto r = rank_candidates(0, Side::kSource, cands, Measure::kCosine, e, q);
  CHECK(r.entries[1].score == doctest::Approx(scalar_cos(0.8, 0.2, 0.5, 0.5)));
}

TEST_CASE("ranking details") {
  auto e = hand_estimates();
  PseudoDocCollection q{{{0, 1}}, 2};
  std::vector<WordId> one{1};
  auto r = rank_candidates(0, Side::kSource, one, Measure::kKl, e, q);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].word == 1);

  std::vector<WordId> none;
  CHECK_THROWS_AS(rank_candidates(0, Side::kSource, none, Measure::kKl, e, q), Error);
  std::vector<WordId> bad{7};
  CHECK_THROWS_AS(rank_candidates(0, Side::kSource, bad, Measure::kKl, e, q), Error);

  // ties by smaller id
  e.theta[0] = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  std::vector<WordId> all{2, 0, 1};
  auto t = rank_candidates(0, Side::kSource, all, Measure::kCosine, e, q, {KlDirection::kQueryFirst, 2});
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].word == 0);
  CHECK(t.entries[1].word == 1);
}

TEST_CASE("KL direction") {
  auto e = hand_estimates();
  PseudoDocCollection q{{{0}}, 2};
  std::vector<WordId> c{2};
  std::vector<double> qt{0.8, 0.2}, ct{0.5, 0.5};
  auto fwd = rank_candidates(0, Side::kSource, c, Measure::kKl, e, q);
  auto rev = rank_candidates(0, Side::kSource, c, Measure::kKl, e, q, {KlDirection::kCandidateFirst, 0});
  CHECK(fwd.entries[0].score == doctest::Approx(kl_divergence(qt, ct)));
  CHECK(rev.entries[0].score == doctest::Approx(kl_divergence(ct, qt)));
}

TEST_CASE("selProb ranking equals brute-force argmax") {
  // 20 candidate words with deterministic mixtures
  PosteriorEstimates e;
  e.topics = 3;
  e.num_words = {20, 1};
  e.num_docs = {4, 4};
  e.phi[0].assign(12, 0.25);
  e.phi[1] = {0.4, 0.3, 0.2, 0.1, 0.1, 0.1, 0.4, 0.4, 0.25, 0.25, 0.25, 0.25};
  for (int w = 0; w < 20; ++w) {
    double a = 1 + (w * 7) % 5, b = 1 + (w * 3) % 4, c = 1 + w % 3;
    const double t = a + b + c;
    e.theta[0].insert(e.theta[0].end(), {a / t, b / t, c / t});
  }
  e.theta[1] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  PseudoDocCollection q{{{0, 0, 2, 3, 3, 1}}, 4};
  auto cands = all_candidates(e, Side::kSource);
  CHECK(cands.size() == 20);
  auto r = rank_candidates(0, Side::kSource, cands, Measure::kSelProb, e, q);

  WordId best = 0;
  double best_score = -1e300;
  for (WordId w = 0; w < 20; ++w) {
    double s = 0;
    for (DocId d : q.words[0]) {
      double p = 0;
      for (int k = 0; k < 3; ++k) p += e.phi[1][k * 4 + d] * e.theta[0][w * 3 + k];
      s += std::log(p);
    }
    CHECK(r.entries[*r.rank_of(w) - 1].score == doctest::Approx(s).epsilon(1e-12));
    if (s > best_score) best_score = s, best = w;
  }
  CHECK(r.entries[0].word == best);
  for (std::size_t i = 1; i < r.entries.size(); ++i) CHECK(r.entries[i - 1].score >= r.entries[i].score);
}

TEST_CASE("frequency floor for candidates") {
  auto e = hand_estimates();
  PseudoDocCollection t{{{0}, {0, 1, 1}, {1, 1}}, 2};
  CHECK(all_candidates(e, Side::kSource, &t, 2) == std::vector<WordId>{1, 2});
}

TEST_CASE("p(d|w) special cases") {
  auto e = hand_estimates();
  e.theta[0] = {1.0, 0.0, 0.5, 0.5, 0.5, 0.5};
  CHECK(doc_given_word(1, Side::kSource, 0, e) == doctest::Approx(0.1));
  e.phi[1] = {0.5, 0.5, 0.5, 0.5};
  CHECK(doc_given_word(0, Side::kSource, 2, e) == doctest::Approx(0.5));
}

TEST_CASE("measure names") {
  for (auto m : {Measure::kCosine, Measure::kKl, Measure::kSelProb}) CHECK(parse_measure(measure_name(m)) == m);
  CHECK_THROWS_AS(parse_measure("jaccard"), Error);
  CHECK(higher_is_better(Measure::kSelProb));
  CHECK_FALSE(higher_is_better(Measure::kKl));
}

TEST_CASE("ranking rows") {
  Vocabulary qv, cv;
  qv.add("犬");
  cv.add("dog");
  cv.add("cat");
  RankedCandidates r;
  r.entries = {{1, 0.123456789}, {0, -2.5}};
  std::ostringstream out;
  write_ranking_rows(out, r, qv, cv);
  CHECK(out.str() == "犬\t1\tcat\t0.123457\n犬\t2\tdog\t-2.5\n");
  std::ostringstream top;
  write_ranking_rows(top, r, qv, cv, 1);
  CHECK(top.str() == "犬\t1\tcat\t0.123457\n");
}

#include <doctest.h>

#include "bilex/checkpoint.hpp"
#include "temp_dir.hpp"

using namespace bilex;
using bilex::testing::TempDir;

namespace {

Checkpoint trained(ModelKind model) {
  PseudoDocCollection tgt{{{0, 1, 1}, {2, 0}, {1}}, 3};
  PseudoDocCollection src{{{0, 2, 2}, {1, 1}, {0}}, 3};
  SeedDictionary d;
  d.entries[0] = {0, 1};
  d.entries[2] = {2};
  HyperParams hp;
  hp.topics = 3;
  hp.iterations = 12;
  hp.burn_in = 4;
  hp.sample_lag = 3;
  auto r = train(tgt, src, d, model, hp);
  Checkpoint cp;
  cp.model = model;
  cp.hp = hp;
  cp.vocab[0] = {"dog", "hound", "cat"};
  cp.vocab[1] = {"犬", "猫", "鳥"};
  cp.state = r.state;
  cp.estimates = r.estimates;
  return cp;
}

}  // namespace

TEST_CASE("save, load, save is byte-identical") {
  TempDir dir;
  for (auto model : {ModelKind::kBiLda, ModelKind::kBiLdaAll, ModelKind::kProbBiLda, ModelKind::kBlockProbBiLda}) {
    CAPTURE(model_name(model));
    auto cp = trained(model);
    save_checkpoint(cp, dir.path() / "a.json");
    auto back = load_checkpoint(dir.path() / "a.json");
    save_checkpoint(back, dir.path() / "b.json");
    CHECK(bilex::testing::slurp(dir.path() / "a.json") == bilex::testing::slurp(dir.path() / "b.json"));
    REQUIRE(back.state);
    CHECK(count_mismatches(*back.state) == 0);
    CHECK(back.state->cmk == cp.state->cmk);
    CHECK(back.estimates->theta[1] == cp.estimates->theta[1]);
    CHECK(back.vocab == cp.vocab);
  }
}

TEST_CASE("a restored state continues like the original") {
  auto cp = trained(ModelKind::kProbBiLda);
  auto back = parse_checkpoint(serialize_checkpoint(cp));
  auto a = *cp.state;
  auto b = *back.state;
  for (int i = 0; i < 3; ++i) {
    sweep(a);
    sweep(b);
  }
  CHECK(a.sides[1].z == b.sides[1].z);
  CHECK(a.token_selection == b.token_selection);
}

TEST_CASE("estimates-only checkpoint") {
  auto cp = trained(ModelKind::kBiLda);
  cp.state.reset();
  auto back = parse_checkpoint(serialize_checkpoint(cp));
  CHECK_FALSE(back.state.has_value());
  CHECK(back.estimates->phi[0] == cp.estimates->phi[0]);
}

TEST_CASE("foreign or damaged checkpoints are rejected") {
  auto text = serialize_checkpoint(trained(ModelKind::kBiLda));
  auto bump = text;
  bump.replace(bump.find("\"version\":1"), 11, "\"version\":7");
  CHECK_THROWS_WITH_AS(parse_checkpoint(bump), doctest::Contains("version"), Error);
  CHECK_THROWS_AS(parse_checkpoint("{\"format\":\"other\"}"), Error);
  CHECK_THROWS_AS(parse_checkpoint(text.substr(0, text.size() / 2)), Error);
  CHECK_THROWS_AS(parse_checkpoint("[]"), Error);
  TempDir dir;
  CHECK_THROWS_AS(load_checkpoint(dir.path() / "none.json"), Error);
}

#include <doctest.h>

#include "oracle/enumeration.hpp"

using namespace bilex;
using namespace bilex::oracle;

TEST_CASE("enumerated kernels leave the exact posterior invariant") {
  const auto inst = reference_instance();
  for (auto model : {ModelKind::kBiLda, ModelKind::kProbBiLda}) {
    EnumerationOracle o(inst, model);
    const auto exact = o.exact_posterior();
    const auto pi = o.stationary();
    CAPTURE(model_name(model));
    CHECK(total_variation(exact, pi) < 1e-9);
  }
  EnumerationOracle block(inst, ModelKind::kBlockProbBiLda, SelectionRule::kSample);
  CHECK(total_variation(block.exact_posterior(), block.stationary()) < 1e-9);
}

TEST_CASE("state space of the reference instance") {
  const auto inst = reference_instance();
  CHECK(EnumerationOracle(inst, ModelKind::kBiLda).num_states() == 128);
  CHECK(EnumerationOracle(inst, ModelKind::kBlockProbBiLda).num_states() == 256);
  CHECK(EnumerationOracle(inst, ModelKind::kProbBiLda).num_states() == 512);
}

TEST_CASE("sampler marginals match the enumerated distribution") {
  const auto inst = reference_instance();
  struct Case {
    ModelKind model;
    SelectionRule rule;
    bool exact;
  };
  for (auto c : {Case{ModelKind::kBiLda, SelectionRule::kArgmax, true},
                 Case{ModelKind::kBiLdaAll, SelectionRule::kArgmax, false},
                 Case{ModelKind::kProbBiLda, SelectionRule::kArgmax, true},
                 Case{ModelKind::kBlockProbBiLda, SelectionRule::kArgmax, false},
                 Case{ModelKind::kBlockProbBiLda, SelectionRule::kSample, true}}) {
    EnumerationOracle o(inst, c.model, c.rule);
    const auto ref = c.exact ? o.exact_posterior() : o.stationary();
    const auto emp = run_sampler(o, inst, c.model, c.rule, 1000, 20000, 7);
    CAPTURE(model_name(c.model));
    CAPTURE(selection_rule_name(c.rule));
    CHECK(max_marginal_tv(emp.marginals, o.marginals(ref)) < 0.03);
    CHECK(max_abs_diff(emp.agreement, o.topic_agreement(ref)) < 0.03);
  }
}

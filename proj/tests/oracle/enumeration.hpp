#pragma once

// Brute-force reference for tiny sampler instances. Everything here is
// recomputed from scratch per configuration and shares no code with the
// sampler kernels.

#include <cstddef>
#include <string>
#include <vector>

#include "bilex/sampler.hpp"

namespace bilex::oracle {

struct TinyInstance {
  std::size_t topics = 2;
  double alpha = 0.5;
  double beta = 0.5;
  double alpha_psi = 0.5;
  std::size_t target_docs = 2;
  std::size_t source_docs = 2;
  std::vector<std::vector<DocId>> target_words;
  std::vector<std::vector<DocId>> source_words;
  std::vector<std::vector<WordId>> candidates;  // per source word, ascending

  PseudoDocCollection target_pdocs() const;
  PseudoDocCollection source_pdocs() const;
  SeedDictionary dictionary() const;
  HyperParams hyperparams(std::uint64_t seed) const;
};

struct Variable {
  enum class Kind { kTargetTopic, kSourceTopic, kSelection };
  Kind kind;
  WordId word;
  std::size_t pos;    // token position; unused for per-word selections
  std::size_t arity;  // number of values
  std::string label() const;
};

class EnumerationOracle {
 public:
  EnumerationOracle(TinyInstance instance, ModelKind model, SelectionRule rule = SelectionRule::kArgmax);

  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t num_states() const { return num_states_; }

  // Normalized joint posterior over all configurations, from Dirichlet-
  // multinomial marginal likelihoods. Defined for BiLDA, ProbBiLDA and
  // BlockProbBiLDA (uniform selection prior).
  std::vector<double> exact_posterior() const;

  // Stationary distribution of one systematic-scan sweep, obtained by power
  // iteration over the exactly enumerated transition kernel.
  std::vector<double> stationary(double tol = 1e-14, std::size_t max_iter = 200000) const;

  // Per-variable marginals of a distribution over configurations.
  std::vector<std::vector<double>> marginals(const std::vector<double>& dist) const;
  // P(z_a == z_b) for every pair of topic variables, row-major over pairs.
  std::vector<double> topic_agreement(const std::vector<double>& dist) const;

  // Reads the configuration index out of a sampler state.
  std::size_t encode(const SamplerState& state) const;

 private:
  using Config = std::vector<std::size_t>;

  Config decode(std::size_t index) const;
  std::size_t encode(const Config& config) const;

  WordId cited(const Config& c, WordId w, std::size_t pos) const;
  double log_joint(const Config& c) const;

  // Distribution over new values of variable `v` given the rest of `c`.
  std::vector<double> conditional(const Config& c, std::size_t v) const;
  std::vector<double> block_selection_step(const Config& c, WordId w) const;

  std::vector<double> apply_resample(const std::vector<double>& dist, std::size_t v) const;
  std::vector<double> apply_deterministic_block(const std::vector<double>& dist, WordId w) const;
  std::vector<double> apply_uniform_selection(const std::vector<double>& dist, std::size_t v) const;

  TinyInstance inst_;
  ModelKind model_;
  SelectionRule rule_;
  std::vector<Variable> vars_;
  std::vector<std::size_t> stride_;
  std::size_t num_states_ = 1;
  // index of the per-word selection variable of each source word, or -1
  std::vector<long> word_sel_var_;
  // index of the per-token selection variable, or -1
  std::vector<std::vector<long>> token_sel_var_;
  std::vector<std::vector<std::size_t>> target_topic_var_;
  std::vector<std::vector<std::size_t>> source_topic_var_;
};

// Empirical marginals from a real sampler run: `burn_in` discarded sweeps
// then `samples` sweeps, one sample each.
struct EmpiricalResult {
  std::vector<std::vector<double>> marginals;
  std::vector<double> agreement;
};
EmpiricalResult run_sampler(const EnumerationOracle& oracle, const TinyInstance& instance, ModelKind model,
                            SelectionRule rule, std::size_t burn_in, std::size_t samples, std::uint64_t seed);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);
// Largest per-variable TV distance between two marginal tables.
double max_marginal_tv(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

// Instance used by the oracle-equivalence checks: 2 target words, one
// dictionary source word with the given candidates, one plain source word;
// 7 tokens in total.
TinyInstance reference_instance(std::vector<WordId> candidates = {0, 1});

}  // namespace bilex::oracle

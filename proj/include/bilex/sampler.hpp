#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bilex/corpus.hpp"
#include "bilex/dictionary.hpp"
#include "bilex/random.hpp"
#include "bilex/types.hpp"

namespace bilex {

enum class ModelKind {
  kBiLda,           // each dictionary word hard-paired with its most frequent candidate
  kBiLdaAll,        // pairing redrawn uniformly at the start of every sweep
  kProbBiLda,       // per-token translation selection with a Dirichlet prior
  kBlockProbBiLda,  // per-word translation selection
};

std::string_view model_name(ModelKind model);
ModelKind parse_model(std::string_view name);

// How BlockProbBiLDA updates a word's selection after its tokens are
// resampled. kArgmax takes the candidate with the largest log-space product
// score. kSample draws from the exact collapsed conditional instead, which
// makes the sweep a proper Gibbs step when no target word is cited by more
// than one source word.
enum class SelectionRule { kArgmax, kSample };

std::string_view selection_rule_name(SelectionRule rule);
SelectionRule parse_selection_rule(std::string_view name);

struct HyperParams {
  std::size_t topics = 50;
  double alpha = 0.5;
  double beta = 0.01;
  double alpha_psi = 0.5;
  std::size_t iterations = 1500;
  std::size_t burn_in = 1000;
  std::size_t sample_lag = 10;
  std::uint64_t rng_seed = 1;
  SelectionRule block_selection = SelectionRule::kArgmax;

  // Throws bilex::Error on K < 2, non-positive priors, burn_in >= iterations
  // or a zero sample lag.
  void validate() const;
};

// Assignments and count tables for one language.
struct SideState {
  std::vector<std::vector<DocId>> docs;  // pseudo-document tokens per word
  std::size_t num_docs = 0;
  std::vector<std::vector<Topic>> z;
  std::vector<std::int32_t> nmk;  // [word * K + topic]
  std::vector<std::int32_t> nm;   // [word]
  std::vector<std::int32_t> nkv;  // [topic * num_docs + doc]
  std::vector<std::int32_t> nk;   // [topic]

  std::size_t num_words() const { return docs.size(); }
  std::size_t num_tokens() const;
};

struct SamplerState {
  ModelKind model = ModelKind::kBiLda;
  HyperParams hp;
  std::array<SideState, 2> sides;

  // Candidate target words per source word, ascending; empty when the source
  // word has no dictionary entry.
  std::vector<std::vector<WordId>> candidates;
  // ProbBiLDA: candidate index per source token.
  std::vector<std::vector<std::uint32_t>> token_selection;
  // Other models: candidate index per source word.
  std::vector<std::uint32_t> word_selection;

  // Source tokens citing each target word, by topic, and their totals.
  std::vector<std::int32_t> cmk;  // [target word * K + topic]
  std::vector<std::int32_t> cm;
  // ProbBiLDA: source tokens of each word selecting each candidate.
  std::vector<std::vector<std::int32_t>> nms;
  // Per-word models: source words currently citing each target word, ascending.
  std::vector<std::vector<WordId>> citing;

  Rng rng;
  std::size_t sweeps_done = 0;

  SideState& side(Side s) { return sides[index_of(s)]; }
  const SideState& side(Side s) const { return sides[index_of(s)]; }
  std::size_t topics() const { return hp.topics; }
  bool per_token_selection() const { return model == ModelKind::kProbBiLda; }

  // Target word cited by the given source token, -1 when the word has no
  // dictionary entry.
  std::int64_t cited_target(WordId source, std::size_t pos) const;
};

// Random initial assignments from hp.rng_seed. Topics are drawn for target
// words, then source words, in id and token order; selections follow in
// source word order. Candidate sets of size one consume no draws. For
// ModelKind::kBiLda, multi-candidate entries are first reduced with
// most_frequent_pairing using pseudo-document lengths as frequencies.
SamplerState init_state(const PseudoDocCollection& target, const PseudoDocCollection& source,
                        const SeedDictionary& dict, ModelKind model, const HyperParams& hp);
SamplerState init_state(const PseudoDocCollection& target, const PseudoDocCollection& source,
                        const PairedDictionary& dict, const HyperParams& hp);

// Recomputes every count table from z and the selections.
void rebuild_counts(SamplerState& state);

// Number of count-table cells (plus citation-set entries) that disagree with
// a rebuild from the assignments.
std::size_t count_mismatches(const SamplerState& state);

void sweep_bilda(SamplerState& state);
void sweep_bilda_all(SamplerState& state);
void sweep_probbilda(SamplerState& state);
void sweep_blockprobbilda(SamplerState& state);
// Dispatches on state.model.
void sweep(SamplerState& state);

// Log-space selection score of `candidate` for dictionary word `source`
// under the current topic assignments, excluding the word's own citation.
double block_selection_score(const SamplerState& state, WordId source, WordId candidate);

struct PosteriorEstimates {
  std::size_t topics = 0;
  std::array<std::size_t, 2> num_words{};
  std::array<std::size_t, 2> num_docs{};
  std::array<std::vector<double>, 2> theta;  // [word * K + topic]
  std::array<std::vector<double>, 2> phi;    // [topic * num_docs + doc]
  std::size_t samples = 0;

  std::span<const double> theta_row(Side side, WordId word) const;
  std::span<const double> phi_row(Side side, Topic topic) const;
  double phi_at(Side side, Topic topic, DocId doc) const;
};

// Point estimates from the current counts.
PosteriorEstimates estimate(const SamplerState& state);

using SweepCallback = std::function<void(const SamplerState&)>;

struct TrainingResult {
  SamplerState state;
  PosteriorEstimates estimates;
};

// Runs hp.iterations sweeps. After burn-in, every sample_lag-th sweep
// contributes a sample to the average; if none qualifies the final state is
// used. `on_sweep` runs after each sweep.
TrainingResult train(const PseudoDocCollection& target, const PseudoDocCollection& source,
                     const SeedDictionary& dict, ModelKind model, const HyperParams& hp,
                     const SweepCallback& on_sweep = {});

// Continues an initialized state from state.sweeps_done to hp.iterations.
// Only sweeps run by this call contribute samples.
PosteriorEstimates continue_training(SamplerState& state, const SweepCallback& on_sweep = {});

PosteriorEstimates run_training(const PseudoDocCollection& target, const PseudoDocCollection& source,
                                const SeedDictionary& dict, ModelKind model, const HyperParams& hp);

}  // namespace bilex

#include "support/experiment.hpp"

#include "bilex/eval.hpp"

namespace bilex::testing {

RecoveryResult run_recovery(const SyntheticSpec& spec, const HyperParams& hp, Measure measure) {
  const auto data = generate_synthetic(spec);
  const auto tvocab = build_vocabulary(data.target);
  const auto svocab = build_vocabulary(data.source);
  const auto tpdocs = invert_index(data.target, tvocab);
  const auto spdocs = invert_index(data.source, svocab);
  const auto dict = make_dictionary(data.seed_dictionary, svocab, tvocab);
  const auto test = make_test_set(data.test_set, dict, svocab, tvocab);

  RecoveryResult out;
  for (auto model : {ModelKind::kBiLda, ModelKind::kBiLdaAll, ModelKind::kProbBiLda, ModelKind::kBlockProbBiLda}) {
    auto result = train(tpdocs, spdocs, dict, model, hp);
    const auto rankings = rank_test_queries(test, measure, result.estimates, spdocs, 10);
    out.acc1[model] = accuracy_at_k(rankings, test, 1);
    if (model != ModelKind::kBlockProbBiLda) continue;
    std::size_t agree = 0;
    for (const auto& word : data.noisy_words) {
      const WordId s = svocab.id(word);
      const WordId chosen = result.state.candidates[s][result.state.word_selection[s]];
      if (tvocab.word(chosen) == data.truth.at(word)) ++agree;
    }
    out.noisy_words = data.noisy_words.size();
    out.selection_agreement = out.noisy_words ? static_cast<double>(agree) / static_cast<double>(out.noisy_words) : 0.0;
  }
  return out;
}

}  // namespace bilex::testing

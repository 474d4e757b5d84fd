#include "bilex/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bilex {

namespace {

constexpr std::size_t kTarget = index_of(Side::kTarget);
constexpr std::size_t kSource = index_of(Side::kSource);

void require_model(const SamplerState& state, ModelKind expected) {
  if (state.model != expected) {
    throw Error("sampler state was initialized for " + std::string(model_name(state.model)) + ", not " +
                std::string(model_name(expected)));
  }
}

SideState make_side(const PseudoDocCollection& pdocs, std::size_t topics) {
  SideState side;
  side.docs = pdocs.words;
  side.num_docs = pdocs.num_docs;
  for (const auto& tokens : side.docs) {
    for (DocId d : tokens) {
      if (d >= side.num_docs) throw Error("pseudo-document references a document outside the collection");
    }
  }
  side.z.resize(side.docs.size());
  for (std::size_t w = 0; w < side.docs.size(); ++w) side.z[w].assign(side.docs[w].size(), 0);
  side.nmk.assign(side.docs.size() * topics, 0);
  side.nm.assign(side.docs.size(), 0);
  side.nkv.assign(topics * side.num_docs, 0);
  side.nk.assign(topics, 0);
  return side;
}

// Moves every source token of `source` from citing `from` to citing `to`.
void move_citation(SamplerState& st, WordId source, WordId from, WordId to) {
  if (from == to) return;
  const std::size_t K = st.topics();
  const auto& src = st.sides[kSource];
  for (std::size_t k = 0; k < K; ++k) {
    const auto n = src.nmk[source * K + k];
    st.cmk[from * K + k] -= n;
    st.cmk[to * K + k] += n;
  }
  st.cm[from] -= src.nm[source];
  st.cm[to] += src.nm[source];
  auto& old_set = st.citing[from];
  old_set.erase(std::lower_bound(old_set.begin(), old_set.end(), source));
  auto& new_set = st.citing[to];
  new_set.insert(std::lower_bound(new_set.begin(), new_set.end(), source), source);
}

// Counts, topic weights and draws shared by all sweep kernels.
class Kernel {
 public:
  explicit Kernel(SamplerState& st)
      : st_(st),
        K_(st.topics()),
        alpha_(st.hp.alpha),
        beta_(st.hp.beta),
        weights_(K_),
        v_beta_{static_cast<double>(st.sides[0].num_docs) * st.hp.beta,
                static_cast<double>(st.sides[1].num_docs) * st.hp.beta} {}

  // Target token: own counts plus citing source tokens. The word-level
  // denominator is constant in k and omitted.
  void sample_target_word(WordId w) {
    auto& side = st_.sides[kTarget];
    const auto& docs = side.docs[w];
    auto& z = side.z[w];
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const DocId n = docs[i];
      remove(side, w, z[i], n);
      for (std::size_t k = 0; k < K_; ++k) {
        const double own = side.nmk[w * K_ + k] + st_.cmk[w * K_ + k];
        weights_[k] = (own + alpha_) * doc_factor(kTarget, k, n);
      }
      z[i] = draw();
      add(side, w, z[i], n);
    }
  }

  // Source word without a translation: plain LDA.
  void sample_plain_source_word(WordId w) {
    auto& side = st_.sides[kSource];
    const auto& docs = side.docs[w];
    auto& z = side.z[w];
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const DocId n = docs[i];
      remove(side, w, z[i], n);
      for (std::size_t k = 0; k < K_; ++k) {
        weights_[k] = (side.nmk[w * K_ + k] + alpha_) * doc_factor(kSource, k, n);
      }
      z[i] = draw();
      add(side, w, z[i], n);
    }
  }

  // Source word citing target `c` with all of its tokens: the topic factor
  // pools the word's own counts with the cited word's own counts.
  void sample_paired_source_word(WordId w, WordId c) {
    auto& side = st_.sides[kSource];
    const auto& target = st_.sides[kTarget];
    const auto& docs = side.docs[w];
    auto& z = side.z[w];
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const DocId n = docs[i];
      remove(side, w, z[i], n);
      --st_.cmk[c * K_ + z[i]];
      for (std::size_t k = 0; k < K_; ++k) {
        const double pooled = side.nmk[w * K_ + k] + target.nmk[c * K_ + k];
        weights_[k] = (pooled + alpha_) * doc_factor(kSource, k, n);
      }
      z[i] = draw();
      add(side, w, z[i], n);
      ++st_.cmk[c * K_ + z[i]];
    }
  }

  // ProbBiLDA source word: per token, the topic given the current citation,
  // then the citation given the new topic.
  void sample_probbilda_source_word(WordId w) {
    auto& side = st_.sides[kSource];
    const auto& target = st_.sides[kTarget];
    const auto& cands = st_.candidates[w];
    const std::size_t S = cands.size();
    const double alpha_psi = st_.hp.alpha_psi;
    const double k_alpha = static_cast<double>(K_) * alpha_;
    const auto& docs = side.docs[w];
    auto& z = side.z[w];
    auto& sel = st_.token_selection[w];
    auto& nms = st_.nms[w];
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const DocId n = docs[i];
      WordId c = cands[sel[i]];
      remove(side, w, z[i], n);
      --st_.cmk[c * K_ + z[i]];
      --st_.cm[c];
      --nms[sel[i]];

      for (std::size_t k = 0; k < K_; ++k) {
        const double shared = target.nmk[c * K_ + k] + st_.cmk[c * K_ + k];
        weights_[k] = (shared + alpha_) * doc_factor(kSource, k, n);
      }
      z[i] = draw();
      add(side, w, z[i], n);

      if (S > 1) {
        sel_weights_.resize(S);
        for (std::size_t s = 0; s < S; ++s) {
          const WordId cand = cands[s];
          const double num = target.nmk[cand * K_ + z[i]] + st_.cmk[cand * K_ + z[i]];
          const double den = target.nm[cand] + st_.cm[cand];
          sel_weights_[s] = (num + alpha_) / (den + k_alpha) * (nms[s] + alpha_psi);
        }
        sel[i] = static_cast<std::uint32_t>(sample_index(sel_weights_, st_.rng.uniform()));
        c = cands[sel[i]];
      }
      ++st_.cmk[c * K_ + z[i]];
      ++st_.cm[c];
      ++nms[sel[i]];
    }
  }

  void update_block_selection(WordId w) {
    const auto& cands = st_.candidates[w];
    const std::size_t S = cands.size();
    if (S < 2) return;
    const WordId current = cands[st_.word_selection[w]];
    std::size_t chosen = 0;
    if (st_.hp.block_selection == SelectionRule::kArgmax) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < S; ++s) {
        const double score = block_selection_score(st_, w, cands[s]);
        if (score > best) {  // ties keep the smaller word id
          best = score;
          chosen = s;
        }
      }
    } else {
      sel_weights_.resize(S);
      double max_log = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < S; ++s) {
        sel_weights_[s] = exact_selection_log_weight(w, cands[s], current);
        max_log = std::max(max_log, sel_weights_[s]);
      }
      for (auto& v : sel_weights_) v = std::exp(v - max_log);
      chosen = sample_index(sel_weights_, st_.rng.uniform());
    }
    st_.word_selection[w] = static_cast<std::uint32_t>(chosen);
    move_citation(st_, w, current, cands[chosen]);
  }

 private:
  double doc_factor(std::size_t lang, std::size_t k, DocId n) const {
    const auto& side = st_.sides[lang];
    return (side.nkv[k * side.num_docs + n] + beta_) / (side.nk[k] + v_beta_[lang]);
  }

  void remove(SideState& side, WordId w, Topic k, DocId n) {
    --side.nmk[w * K_ + k];
    --side.nkv[k * side.num_docs + n];
    --side.nk[k];
  }

  void add(SideState& side, WordId w, Topic k, DocId n) {
    ++side.nmk[w * K_ + k];
    ++side.nkv[k * side.num_docs + n];
    ++side.nk[k];
  }

  Topic draw() { return static_cast<Topic>(sample_index(weights_, st_.rng.uniform())); }

  // log p(tokens of w | group of c): ratio of Dirichlet-multinomial
  // normalizers with w's counts added to the group excluding w.
  double exact_selection_log_weight(WordId w, WordId c, WordId current) const {
    const auto& src = st_.sides[kSource];
    const auto& tgt = st_.sides[kTarget];
    const bool own = (c == current);
    double total_prior = 0.0;
    double result = 0.0;
    for (std::size_t k = 0; k < K_; ++k) {
      const double others = st_.cmk[c * K_ + k] - (own ? src.nmk[w * K_ + k] : 0);
      const double a = tgt.nmk[c * K_ + k] + others + alpha_;
      const double n = src.nmk[w * K_ + k];
      result += std::lgamma(a + n) - std::lgamma(a);
      total_prior += a;
    }
    const double n_total = src.nm[w];
    result -= std::lgamma(total_prior + n_total) - std::lgamma(total_prior);
    return result;
  }

  SamplerState& st_;
  std::size_t K_;
  double alpha_;
  double beta_;
  std::vector<double> weights_;
  std::vector<double> sel_weights_;
  std::array<double, 2> v_beta_;
};

void sweep_target_side(Kernel& kernel, const SamplerState& st) {
  const auto n = st.sides[kTarget].num_words();
  for (WordId w = 0; w < n; ++w) kernel.sample_target_word(w);
}

// Shared by BiLDA, BiLDA_all and BlockProbBiLDA.
void sweep_per_word_models(SamplerState& st, bool update_selection) {
  Kernel kernel(st);
  sweep_target_side(kernel, st);
  const auto n = st.sides[kSource].num_words();
  for (WordId w = 0; w < n; ++w) {
    const auto& cands = st.candidates[w];
    if (cands.empty()) {
      kernel.sample_plain_source_word(w);
      continue;
    }
    kernel.sample_paired_source_word(w, cands[st.word_selection[w]]);
    if (update_selection) kernel.update_block_selection(w);
  }
  ++st.sweeps_done;
}

}  // namespace

std::string_view model_name(ModelKind model) {
  switch (model) {
    case ModelKind::kBiLda: return "bilda";
    case ModelKind::kBiLdaAll: return "bilda-all";
    case ModelKind::kProbBiLda: return "probbilda";
    case ModelKind::kBlockProbBiLda: return "blockprobbilda";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  for (auto m : {ModelKind::kBiLda, ModelKind::kBiLdaAll, ModelKind::kProbBiLda, ModelKind::kBlockProbBiLda}) {
    if (model_name(m) == name) return m;
  }
  throw Error("unknown model '" + std::string(name) + "'");
}

std::string_view selection_rule_name(SelectionRule rule) {
  return rule == SelectionRule::kArgmax ? "argmax" : "sample";
}

SelectionRule parse_selection_rule(std::string_view name) {
  if (name == "argmax") return SelectionRule::kArgmax;
  if (name == "sample") return SelectionRule::kSample;
  throw Error("unknown selection rule '" + std::string(name) + "'");
}

void HyperParams::validate() const {
  if (topics < 2) throw Error("number of topics must be at least 2");
  if (!(alpha > 0.0) || !(beta > 0.0) || !(alpha_psi > 0.0)) {
    throw Error("alpha, beta and alpha_psi must be positive");
  }
  if (burn_in >= iterations) throw Error("burn-in must be smaller than the number of iterations");
  if (sample_lag < 1) throw Error("sample lag must be at least 1");
}

std::size_t SideState::num_tokens() const {
  std::size_t total = 0;
  for (const auto& d : docs) total += d.size();
  return total;
}

std::int64_t SamplerState::cited_target(WordId source, std::size_t pos) const {
  const auto& cands = candidates.at(source);
  if (cands.empty()) return -1;
  if (per_token_selection()) return cands[token_selection[source].at(pos)];
  return cands[word_selection[source]];
}

SamplerState init_state(const PseudoDocCollection& target, const PseudoDocCollection& source,
                        const SeedDictionary& dict, ModelKind model, const HyperParams& hp) {
  hp.validate();
  SamplerState st;
  st.model = model;
  st.hp = hp;
  st.rng = Rng(hp.rng_seed);
  st.sides[kTarget] = make_side(target, hp.topics);
  st.sides[kSource] = make_side(source, hp.topics);

  const SeedDictionary* links = &dict;
  SeedDictionary paired;
  if (model == ModelKind::kBiLda) {
    std::vector<std::size_t> freq(target.num_words());
    for (WordId w = 0; w < freq.size(); ++w) freq[w] = target.words[w].size();
    paired = most_frequent_pairing(dict, freq).as_seed();
    links = &paired;
  }

  st.candidates.assign(source.num_words(), {});
  for (const auto& [w, cands] : links->entries) {
    if (w >= source.num_words()) throw Error("dictionary references a source word outside the vocabulary");
    for (WordId c : cands) {
      if (c >= target.num_words()) throw Error("dictionary references a target word outside the vocabulary");
    }
    if (cands.empty()) continue;
    st.candidates[w] = cands;
  }

  for (auto& side : st.sides) {
    for (auto& z : side.z) {
      for (auto& k : z) k = static_cast<Topic>(st.rng.below(hp.topics));
    }
  }

  const auto n_source = source.num_words();
  if (st.per_token_selection()) {
    st.token_selection.assign(n_source, {});
    for (WordId w = 0; w < n_source; ++w) {
      const auto S = st.candidates[w].size();
      st.token_selection[w].assign(S ? source.words[w].size() : 0, 0);
      if (S < 2) continue;
      for (auto& s : st.token_selection[w]) s = static_cast<std::uint32_t>(st.rng.below(S));
    }
  } else {
    st.word_selection.assign(n_source, 0);
    for (WordId w = 0; w < n_source; ++w) {
      const auto S = st.candidates[w].size();
      if (S >= 2) st.word_selection[w] = static_cast<std::uint32_t>(st.rng.below(S));
    }
  }
  rebuild_counts(st);
  return st;
}

SamplerState init_state(const PseudoDocCollection& target, const PseudoDocCollection& source,
                        const PairedDictionary& dict, const HyperParams& hp) {
  return init_state(target, source, dict.as_seed(), ModelKind::kBiLda, hp);
}

void rebuild_counts(SamplerState& st) {
  const std::size_t K = st.topics();
  for (auto& side : st.sides) {
    std::fill(side.nmk.begin(), side.nmk.end(), 0);
    std::fill(side.nm.begin(), side.nm.end(), 0);
    std::fill(side.nkv.begin(), side.nkv.end(), 0);
    std::fill(side.nk.begin(), side.nk.end(), 0);
    side.nmk.resize(side.num_words() * K);
    side.nm.resize(side.num_words());
    side.nkv.resize(K * side.num_docs);
    side.nk.resize(K);
    for (std::size_t w = 0; w < side.num_words(); ++w) {
      if (side.z[w].size() != side.docs[w].size()) throw Error("topic assignments do not match pseudo-documents");
      for (std::size_t i = 0; i < side.docs[w].size(); ++i) {
        const Topic k = side.z[w][i];
        if (k >= K) throw Error("topic assignment out of range");
        ++side.nmk[w * K + k];
        ++side.nm[w];
        ++side.nkv[k * side.num_docs + side.docs[w][i]];
        ++side.nk[k];
      }
    }
  }

  const auto& src = st.sides[kSource];
  const auto n_target = st.sides[kTarget].num_words();
  st.cmk.assign(n_target * K, 0);
  st.cm.assign(n_target, 0);
  st.citing.assign(st.per_token_selection() ? 0 : n_target, {});
  st.nms.assign(st.per_token_selection() ? src.num_words() : 0, {});

  for (WordId w = 0; w < src.num_words(); ++w) {
    const auto& cands = st.candidates[w];
    if (cands.empty()) continue;
    if (st.per_token_selection()) {
      st.nms[w].assign(cands.size(), 0);
      const auto& sel = st.token_selection[w];
      if (sel.size() != src.docs[w].size()) throw Error("selection assignments do not match pseudo-documents");
      for (std::size_t i = 0; i < sel.size(); ++i) {
        if (sel[i] >= cands.size()) throw Error("selection out of range");
        const WordId c = cands[sel[i]];
        ++st.cmk[c * K + src.z[w][i]];
        ++st.cm[c];
        ++st.nms[w][sel[i]];
      }
    } else {
      if (st.word_selection[w] >= cands.size()) throw Error("selection out of range");
      const WordId c = cands[st.word_selection[w]];
      for (std::size_t k = 0; k < K; ++k) st.cmk[c * K + k] += src.nmk[w * K + k];
      st.cm[c] += src.nm[w];
      st.citing[c].push_back(w);  // w ascending keeps each set sorted
    }
  }
}

std::size_t count_mismatches(const SamplerState& state) {
  SamplerState fresh = state;
  rebuild_counts(fresh);
  auto diff = [](const auto& a, const auto& b) {
    std::size_t n = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) n += (a[i] != b[i]);
    return n;
  };
  std::size_t total = 0;
  for (std::size_t l = 0; l < 2; ++l) {
    total += diff(state.sides[l].nmk, fresh.sides[l].nmk);
    total += diff(state.sides[l].nm, fresh.sides[l].nm);
    total += diff(state.sides[l].nkv, fresh.sides[l].nkv);
    total += diff(state.sides[l].nk, fresh.sides[l].nk);
  }
  total += diff(state.cmk, fresh.cmk);
  total += diff(state.cm, fresh.cm);
  total += diff(state.nms, fresh.nms);
  total += diff(state.citing, fresh.citing);
  return total;
}

void sweep_bilda(SamplerState& state) {
  require_model(state, ModelKind::kBiLda);
  sweep_per_word_models(state, false);
}

void sweep_bilda_all(SamplerState& state) {
  require_model(state, ModelKind::kBiLdaAll);
  for (WordId w = 0; w < state.candidates.size(); ++w) {
    const auto& cands = state.candidates[w];
    if (cands.size() < 2) continue;
    const WordId current = cands[state.word_selection[w]];
    const auto next = static_cast<std::uint32_t>(state.rng.below(cands.size()));
    state.word_selection[w] = next;
    move_citation(state, w, current, cands[next]);
  }
  sweep_per_word_models(state, false);
}

void sweep_probbilda(SamplerState& state) {
  require_model(state, ModelKind::kProbBiLda);
  Kernel kernel(state);
  sweep_target_side(kernel, state);
  const auto n = state.sides[kSource].num_words();
  for (WordId w = 0; w < n; ++w) {
    if (state.candidates[w].empty()) {
      kernel.sample_plain_source_word(w);
    } else {
      kernel.sample_probbilda_source_word(w);
    }
  }
  ++state.sweeps_done;
}

void sweep_blockprobbilda(SamplerState& state) {
  require_model(state, ModelKind::kBlockProbBiLda);
  sweep_per_word_models(state, true);
}

void sweep(SamplerState& state) {
  switch (state.model) {
    case ModelKind::kBiLda: return sweep_bilda(state);
    case ModelKind::kBiLdaAll: return sweep_bilda_all(state);
    case ModelKind::kProbBiLda: return sweep_probbilda(state);
    case ModelKind::kBlockProbBiLda: return sweep_blockprobbilda(state);
  }
}

double block_selection_score(const SamplerState& st, WordId source, WordId candidate) {
  if (st.per_token_selection()) throw Error("block selection score needs a per-word selection model");
  const std::size_t K = st.topics();
  const auto& src = st.sides[kSource];
  const auto& tgt = st.sides[kTarget];
  const auto& cands = st.candidates.at(source);
  const bool own = !cands.empty() && cands[st.word_selection[source]] == candidate;
  const double k_alpha = static_cast<double>(K) * st.hp.alpha;
  const double others_total = st.cm[candidate] - (own ? src.nm[source] : 0);
  const double den = tgt.nm[candidate] + k_alpha + others_total;
  double score = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto n = src.nmk[source * K + k];
    if (n == 0) continue;
    const double others = st.cmk[candidate * K + k] - (own ? n : 0);
    score += n * std::log((tgt.nmk[candidate * K + k] + st.hp.alpha + others) / den);
  }
  return score;
}

std::span<const double> PosteriorEstimates::theta_row(Side side, WordId word) const {
  const auto l = index_of(side);
  if (word >= num_words[l]) throw Error("word id out of range for " + std::string(side_name(side)) + " estimates");
  return {theta[l].data() + static_cast<std::size_t>(word) * topics, topics};
}

std::span<const double> PosteriorEstimates::phi_row(Side side, Topic topic) const {
  const auto l = index_of(side);
  if (topic >= topics) throw Error("topic out of range");
  return {phi[l].data() + static_cast<std::size_t>(topic) * num_docs[l], num_docs[l]};
}

double PosteriorEstimates::phi_at(Side side, Topic topic, DocId doc) const {
  const auto l = index_of(side);
  if (topic >= topics || doc >= num_docs[l]) throw Error("topic or document out of range");
  return phi[l][static_cast<std::size_t>(topic) * num_docs[l] + doc];
}

PosteriorEstimates estimate(const SamplerState& st) {
  const std::size_t K = st.topics();
  const double alpha = st.hp.alpha;
  const double beta = st.hp.beta;
  PosteriorEstimates est;
  est.topics = K;
  est.samples = 1;
  for (std::size_t l = 0; l < 2; ++l) {
    const auto& side = st.sides[l];
    est.num_words[l] = side.num_words();
    est.num_docs[l] = side.num_docs;
    auto& theta = est.theta[l];
    theta.resize(side.num_words() * K);
    const double k_alpha = static_cast<double>(K) * alpha;
    for (std::size_t w = 0; w < side.num_words(); ++w) {
      for (std::size_t k = 0; k < K; ++k) {
        theta[w * K + k] = (side.nmk[w * K + k] + alpha) / (side.nm[w] + k_alpha);
      }
    }
    auto& phi = est.phi[l];
    const std::size_t V = side.num_docs;
    phi.resize(K * V);
    const double v_beta = static_cast<double>(V) * beta;
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t n = 0; n < V; ++n) {
        phi[k * V + n] = (side.nkv[k * V + n] + beta) / (side.nk[k] + v_beta);
      }
    }
  }
  return est;
}

PosteriorEstimates continue_training(SamplerState& state, const SweepCallback& on_sweep) {
  const auto& hp = state.hp;
  PosteriorEstimates sum;
  std::size_t samples = 0;
  while (state.sweeps_done < hp.iterations) {
    sweep(state);
    if (on_sweep) on_sweep(state);
    const std::size_t t = state.sweeps_done;
    if (t > hp.burn_in && (t - hp.burn_in) % hp.sample_lag == 0) {
      auto sample = estimate(state);
      if (samples == 0) {
        sum = std::move(sample);
      } else {
        for (std::size_t l = 0; l < 2; ++l) {
          for (std::size_t i = 0; i < sum.theta[l].size(); ++i) sum.theta[l][i] += sample.theta[l][i];
          for (std::size_t i = 0; i < sum.phi[l].size(); ++i) sum.phi[l][i] += sample.phi[l][i];
        }
      }
      ++samples;
    }
  }
  if (samples == 0) return estimate(state);
  const double inv = 1.0 / static_cast<double>(samples);
  for (std::size_t l = 0; l < 2; ++l) {
    for (auto& v : sum.theta[l]) v *= inv;
    for (auto& v : sum.phi[l]) v *= inv;
  }
  sum.samples = samples;
  return sum;
}

TrainingResult train(const PseudoDocCollection& target, const PseudoDocCollection& source,
                     const SeedDictionary& dict, ModelKind model, const HyperParams& hp,
                     const SweepCallback& on_sweep) {
  auto state = init_state(target, source, dict, model, hp);
  auto estimates = continue_training(state, on_sweep);
  return {std::move(state), std::move(estimates)};
}

PosteriorEstimates run_training(const PseudoDocCollection& target, const PseudoDocCollection& source,
                                const SeedDictionary& dict, ModelKind model, const HyperParams& hp) {
  return train(target, source, dict, model, hp).estimates;
}

}  // namespace bilex

#include "bilex/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "bilex/random.hpp"

namespace bilex {

namespace {

std::vector<double> draw_dirichlet(Rng& rng, std::size_t n, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = gamma(rng.engine());
    total += x;
  }
  if (total <= 0.0) {
    // all draws underflowed; fall back to a single random corner
    std::fill(v.begin(), v.end(), 0.0);
    v[rng.below(n)] = 1.0;
    return v;
  }
  for (auto& x : v) x /= total;
  return v;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  return cdf;
}

std::size_t draw_from_cdf(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<std::size_t>(it - cdf.begin());
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

std::string word_name(char prefix, std::size_t i, std::size_t n) {
  const int width = static_cast<int>(std::to_string(n > 0 ? n - 1 : 0).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, i);
  return buf;
}

struct SampledSide {
  std::vector<std::string> names;
  std::vector<std::vector<DocId>> pdocs;  // per word, unsorted
};

}  // namespace

void SyntheticSpec::validate() const {
  if (topics < 2) throw Error("synthetic spec: need at least 2 topics");
  if (docs_per_language == 0 || mean_doc_length == 0) throw Error("synthetic spec: empty corpus");
  if (source_vocab == 0 || target_vocab == 0) throw Error("synthetic spec: empty vocabulary");
  if (seed_pairs + gold_pairs > std::min(source_vocab, target_vocab)) {
    throw Error("synthetic spec: more translation pairs than vocabulary words");
  }
  if (seed_pairs == 0) throw Error("synthetic spec: need at least one seed pair");
  if (gold_pairs == 0) throw Error("synthetic spec: need at least one held-out pair");
  if (noise_rate < 0.0 || noise_rate > 1.0) throw Error("synthetic spec: noise rate must lie in [0, 1]");
  if (noise_rate > 0.0 && target_vocab < 2) throw Error("synthetic spec: noise needs at least two target words");
  if (!(alpha > 0.0) || !(doc_concentration > 0.0)) throw Error("synthetic spec: priors must be positive");
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.rng_seed);
  const std::size_t K = spec.topics;
  const std::size_t n_pairs = spec.seed_pairs + spec.gold_pairs;

  // True pairs: random source words matched to random target words.
  std::vector<std::size_t> src_order(spec.source_vocab), tgt_order(spec.target_vocab);
  std::iota(src_order.begin(), src_order.end(), 0);
  std::iota(tgt_order.begin(), tgt_order.end(), 0);
  shuffle(src_order, rng);
  shuffle(tgt_order, rng);
  std::vector<std::int64_t> partner(spec.source_vocab, -1);  // source index -> target index
  for (std::size_t p = 0; p < n_pairs; ++p) partner[src_order[p]] = static_cast<std::int64_t>(tgt_order[p]);

  // Topic mixtures: one per target word, shared by its source partner.
  std::vector<std::vector<double>> theta_tgt(spec.target_vocab), theta_src(spec.source_vocab);
  for (auto& t : theta_tgt) t = draw_dirichlet(rng, K, spec.alpha);
  for (std::size_t w = 0; w < spec.source_vocab; ++w) {
    theta_src[w] = partner[w] >= 0 ? theta_tgt[static_cast<std::size_t>(partner[w])] : draw_dirichlet(rng, K, spec.alpha);
  }

  auto sample_side = [&](char prefix, const std::vector<std::vector<double>>& theta) {
    SampledSide side;
    const std::size_t V = theta.size();
    // each document gets a topic profile; phi_k(d) is proportional to its weight on k
    std::vector<std::vector<double>> profile(spec.docs_per_language);
    for (auto& p : profile) p = draw_dirichlet(rng, K, spec.doc_concentration);
    std::vector<std::vector<double>> phi_cdf(K, std::vector<double>(spec.docs_per_language));
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t d = 0; d < spec.docs_per_language; ++d) phi_cdf[k][d] = profile[d][k];
      phi_cdf[k] = cumulative(phi_cdf[k]);
    }
    const double mean = static_cast<double>(spec.docs_per_language * spec.mean_doc_length) / static_cast<double>(V);
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::floor(mean * 0.5)));
    const auto hi = std::max(lo, static_cast<std::size_t>(std::ceil(mean * 1.5)));
    side.names.resize(V);
    side.pdocs.resize(V);
    for (std::size_t w = 0; w < V; ++w) {
      side.names[w] = word_name(prefix, w, V);
      const std::size_t n_tokens = lo + rng.below(hi - lo + 1);
      const auto theta_cdf = cumulative(theta[w]);
      for (std::size_t i = 0; i < n_tokens; ++i) {
        const auto z = draw_from_cdf(theta_cdf, rng);
        side.pdocs[w].push_back(static_cast<DocId>(draw_from_cdf(phi_cdf[z], rng)));
      }
    }
    return side;
  };
  SampledSide tgt = sample_side('t', theta_tgt);
  SampledSide src = sample_side('s', theta_src);

  SyntheticData data;
  // Un-invert: document d holds every token whose pseudo-document names d.
  auto materialize = [&](SampledSide& side, Corpus& corpus, std::map<std::string, std::vector<DocId>>& out_pdocs,
                         const char* tag) {
    std::vector<std::vector<std::size_t>> docs(spec.docs_per_language);
    for (std::size_t w = 0; w < side.pdocs.size(); ++w) {
      for (DocId d : side.pdocs[w]) docs[d].push_back(w);
    }
    std::vector<std::int64_t> new_id(docs.size(), -1);
    DocId next = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      if (docs[d].size() >= spec.min_doc_length && !docs[d].empty()) new_id[d] = next++;
    }
    corpus.language_tag = tag;
    corpus.documents.clear();
    for (std::size_t d = 0; d < docs.size(); ++d) {
      if (new_id[d] < 0) continue;
      shuffle(docs[d], rng);
      auto& doc = corpus.documents.emplace_back();
      for (auto w : docs[d]) doc.push_back(side.names[w]);
    }
    for (std::size_t w = 0; w < side.pdocs.size(); ++w) {
      std::vector<DocId> kept;
      for (DocId d : side.pdocs[w]) {
        if (new_id[d] >= 0) kept.push_back(static_cast<DocId>(new_id[d]));
      }
      std::sort(kept.begin(), kept.end());
      if (!kept.empty()) out_pdocs[side.names[w]] = std::move(kept);
    }
  };
  materialize(tgt, data.target, data.pseudo_docs[index_of(Side::kTarget)], "target");
  materialize(src, data.source, data.pseudo_docs[index_of(Side::kSource)], "source");
  if (data.target.documents.empty() || data.source.documents.empty()) {
    throw Error("synthetic spec: every document fell under the minimum length");
  }

  // Seed entries first, held-out pairs after; order follows src_order.
  std::vector<std::size_t> seed_words(src_order.begin(), src_order.begin() + spec.seed_pairs);
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const auto s = src_order[p];
    data.truth[src.names[s]] = tgt.names[static_cast<std::size_t>(partner[s])];
  }
  const auto n_noisy = static_cast<std::size_t>(std::llround(spec.noise_rate * static_cast<double>(spec.seed_pairs)));
  std::vector<std::size_t> noisy_order = seed_words;
  shuffle(noisy_order, rng);
  std::vector<char> noisy(spec.source_vocab, 0);
  for (std::size_t i = 0; i < n_noisy; ++i) noisy[noisy_order[i]] = 1;

  std::sort(seed_words.begin(), seed_words.end());
  for (auto s : seed_words) {
    const auto t = static_cast<std::size_t>(partner[s]);
    StringPairs entry{{src.names[s], tgt.names[t]}};
    if (noisy[s]) {
      std::size_t spurious = rng.below(spec.target_vocab - 1);
      if (spurious >= t) ++spurious;
      entry.emplace_back(src.names[s], tgt.names[spurious]);
      shuffle(entry, rng);
      data.noisy_words.push_back(src.names[s]);
    }
    data.seed_dictionary.insert(data.seed_dictionary.end(), entry.begin(), entry.end());
  }

  std::vector<std::size_t> gold_words(src_order.begin() + spec.seed_pairs, src_order.begin() + n_pairs);
  std::sort(gold_words.begin(), gold_words.end());
  for (auto s : gold_words) data.test_set.emplace_back(src.names[s], tgt.names[static_cast<std::size_t>(partner[s])]);
  return data;
}

void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_corpus(data.source, dir / "source.txt");
  write_corpus(data.target, dir / "target.txt");
  write_pair_file(data.seed_dictionary, dir / "seed_dict.tsv");
  write_pair_file(data.test_set, dir / "test_set.tsv");
}

}  // namespace bilex

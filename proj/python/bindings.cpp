#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bilex/checkpoint.hpp"
#include "bilex/eval.hpp"
#include "bilex/synthetic.hpp"
#include "bilex/tfidf.hpp"

namespace py = pybind11;
using namespace bilex;

namespace {

Side parse_side(const std::string& name) {
  if (name == "source") return Side::kSource;
  if (name == "target") return Side::kTarget;
  throw Error("side must be 'source' or 'target', got '" + name + "'");
}

Corpus as_corpus(const std::vector<std::string>& lines, const std::string& tag, std::size_t min_length) {
  return make_corpus(lines, tag, min_length);
}

// A trained model together with what ranking needs: vocabularies and the
// source pseudo-documents.
struct TrainedModel {
  std::array<Vocabulary, 2> vocab;
  SamplerState state;
  PosteriorEstimates estimates;

  const Vocabulary& v(Side s) const { return vocab[index_of(s)]; }

  PseudoDocCollection source_pdocs() const {
    const auto& s = state.side(Side::kSource);
    return {s.docs, s.num_docs};
  }

  py::array_t<double> theta(const std::string& side) const {
    const auto s = parse_side(side);
    const auto rows = estimates.num_words[index_of(s)];
    py::array_t<double> out({rows, estimates.topics});
    std::copy(estimates.theta[index_of(s)].begin(), estimates.theta[index_of(s)].end(), out.mutable_data());
    return out;
  }

  py::array_t<double> phi(const std::string& side) const {
    const auto s = parse_side(side);
    const auto cols = estimates.num_docs[index_of(s)];
    py::array_t<double> out({estimates.topics, cols});
    std::copy(estimates.phi[index_of(s)].begin(), estimates.phi[index_of(s)].end(), out.mutable_data());
    return out;
  }

  std::vector<std::pair<std::string, double>> rank(const std::string& query, const std::string& measure,
                                                   std::size_t top, bool kl_candidate_first) const {
    const auto& sv = v(Side::kSource);
    const auto& tv = v(Side::kTarget);
    RankOptions options;
    options.top = top;
    options.kl_direction = kl_candidate_first ? KlDirection::kCandidateFirst : KlDirection::kQueryFirst;
    const auto candidates = all_candidates(estimates, Side::kSource);
    const auto r = rank_candidates(sv.id(query), Side::kSource, candidates, parse_measure(measure), estimates,
                                   source_pdocs(), options);
    std::vector<std::pair<std::string, double>> out;
    for (const auto& e : r.entries) out.emplace_back(tv.word(e.word), e.score);
    return out;
  }

  // Current translation choice of each multi-candidate dictionary word.
  std::map<std::string, std::string> selections() const {
    std::map<std::string, std::string> out;
    const auto& sv = v(Side::kSource);
    const auto& tv = v(Side::kTarget);
    for (WordId w = 0; w < state.candidates.size(); ++w) {
      const auto& cands = state.candidates[w];
      if (cands.empty()) continue;
      if (state.per_token_selection()) {
        // most frequently selected candidate
        std::vector<int> n(cands.size(), 0);
        for (auto s : state.token_selection[w]) ++n[s];
        const auto best = std::max_element(n.begin(), n.end()) - n.begin();
        out[sv.word(w)] = tv.word(cands[static_cast<std::size_t>(best)]);
      } else {
        out[sv.word(w)] = tv.word(cands[state.word_selection[w]]);
      }
    }
    return out;
  }

  std::map<std::string, double> evaluate(const StringPairs& test_pairs, const std::string& measure) const {
    SeedDictionary seed;
    const auto& sv = v(Side::kSource);
    for (WordId w = 0; w < state.candidates.size(); ++w) {
      if (!state.candidates[w].empty()) seed.entries[w] = state.candidates[w];
    }
    const auto test = make_test_set(test_pairs, seed, sv, v(Side::kTarget));
    const auto rankings = rank_test_queries(test, parse_measure(measure), estimates, source_pdocs(), 10);
    std::map<std::string, double> out{{"acc1", accuracy_at_k(rankings, test, 1)},
                                      {"acc10", accuracy_at_k(rankings, test, 10)},
                                      {"n", static_cast<double>(test.size())}};
    if (test.count(Split::kNew) > 0) {
      out["acc1_new"] = accuracy_at_k(rankings, test, 1, Split::kNew);
      out["acc10_new"] = accuracy_at_k(rankings, test, 10, Split::kNew);
    }
    return out;
  }

  void save(const std::filesystem::path& path) const {
    Checkpoint cp;
    cp.model = state.model;
    cp.hp = state.hp;
    cp.vocab[0] = vocab[0].words();
    cp.vocab[1] = vocab[1].words();
    cp.state = state;
    cp.estimates = estimates;
    save_checkpoint(cp, path);
  }
};

TrainedModel train_model(const std::vector<std::string>& source_lines, const std::vector<std::string>& target_lines,
                         const StringPairs& seed_pairs, const std::string& model, const HyperParams& hp,
                         std::size_t min_doc_length) {
  const auto src = as_corpus(source_lines, "source", min_doc_length);
  const auto tgt = as_corpus(target_lines, "target", min_doc_length);
  TrainedModel m;
  m.vocab[index_of(Side::kSource)] = build_vocabulary(src);
  m.vocab[index_of(Side::kTarget)] = build_vocabulary(tgt);
  const auto dict = make_dictionary(seed_pairs, m.v(Side::kSource), m.v(Side::kTarget));
  const auto tp = invert_index(tgt, m.v(Side::kTarget));
  const auto sp = invert_index(src, m.v(Side::kSource));
  auto result = [&] {
    py::gil_scoped_release release;
    return train(tp, sp, dict, parse_model(model), hp);
  }();
  m.state = std::move(result.state);
  m.estimates = std::move(result.estimates);
  return m;
}

TrainedModel load_model(const std::filesystem::path& path) {
  auto cp = load_checkpoint(path);
  if (!cp.state || !cp.estimates) throw Error("checkpoint '" + path.string() + "' lacks state or estimates");
  TrainedModel m;
  for (auto side : {Side::kTarget, Side::kSource}) {
    for (const auto& w : cp.vocab[index_of(side)]) m.vocab[index_of(side)].add(w);
  }
  m.state = std::move(*cp.state);
  m.estimates = std::move(*cp.estimates);
  return m;
}

py::dict synthetic(const SyntheticSpec& spec) {
  const auto data = generate_synthetic(spec);
  auto lines = [](const Corpus& c) {
    std::vector<std::string> out;
    for (const auto& doc : c.documents) {
      std::string line;
      for (const auto& t : doc) line += (line.empty() ? "" : " ") + t;
      out.push_back(std::move(line));
    }
    return out;
  };
  py::dict d;
  d["source"] = lines(data.source);
  d["target"] = lines(data.target);
  d["seed_dictionary"] = data.seed_dictionary;
  d["test_set"] = data.test_set;
  d["truth"] = data.truth;
  d["noisy_words"] = data.noisy_words;
  return d;
}

std::optional<std::vector<std::pair<std::string, double>>> tfidf_rank(const std::vector<std::string>& source_lines,
                                                                       const std::vector<std::string>& target_lines,
                                                                       const StringPairs& seed_pairs,
                                                                       const std::string& query, std::size_t window,
                                                                       std::size_t top, std::size_t min_doc_length) {
  const auto src = as_corpus(source_lines, "source", min_doc_length);
  const auto tgt = as_corpus(target_lines, "target", min_doc_length);
  const auto sv = build_vocabulary(src);
  const auto tv = build_vocabulary(tgt);
  const auto pairs = most_frequent_pairing(make_dictionary(seed_pairs, sv, tv), tv);
  const auto q = build_context_vectors(src, sv, pairs, Side::kSource, window);
  const auto c = build_context_vectors(tgt, tv, pairs, Side::kTarget, window);
  const auto r = rank_tfidf(sv.id(query), Side::kSource, q, c, top);
  if (!r) return std::nullopt;
  std::vector<std::pair<std::string, double>> out;
  for (const auto& e : r->entries) out.emplace_back(tv.word(e.word), e.score);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bilingual lexicon induction with translation-selection topic models";
  py::register_exception<Error>(m, "BilexError", PyExc_ValueError);

  py::class_<HyperParams>(m, "HyperParams")
      .def(py::init([](std::size_t topics, double alpha, double beta, double alpha_psi, std::size_t iterations,
                       std::size_t burn_in, std::size_t sample_lag, std::uint64_t seed, const std::string& block_selection) {
             HyperParams hp;
             hp.topics = topics;
             hp.alpha = alpha;
             hp.beta = beta;
             hp.alpha_psi = alpha_psi;
             hp.iterations = iterations;
             hp.burn_in = burn_in;
             hp.sample_lag = sample_lag;
             hp.rng_seed = seed;
             hp.block_selection = parse_selection_rule(block_selection);
             hp.validate();
             return hp;
           }),
           py::arg("topics") = 50, py::arg("alpha") = 0.5, py::arg("beta") = 0.01, py::arg("alpha_psi") = 0.5,
           py::arg("iterations") = 1500, py::arg("burn_in") = 1000, py::arg("sample_lag") = 10, py::arg("seed") = 1,
           py::arg("block_selection") = "argmax")
      .def_readonly("topics", &HyperParams::topics)
      .def_readonly("alpha", &HyperParams::alpha)
      .def_readonly("beta", &HyperParams::beta)
      .def_readonly("alpha_psi", &HyperParams::alpha_psi)
      .def_readonly("iterations", &HyperParams::iterations)
      .def_readonly("burn_in", &HyperParams::burn_in)
      .def_readonly("sample_lag", &HyperParams::sample_lag)
      .def_readonly("seed", &HyperParams::rng_seed);

  py::class_<SyntheticSpec>(m, "SyntheticSpec")
      .def(py::init<>())
      .def_readwrite("topics", &SyntheticSpec::topics)
      .def_readwrite("docs_per_language", &SyntheticSpec::docs_per_language)
      .def_readwrite("mean_doc_length", &SyntheticSpec::mean_doc_length)
      .def_readwrite("source_vocab", &SyntheticSpec::source_vocab)
      .def_readwrite("target_vocab", &SyntheticSpec::target_vocab)
      .def_readwrite("seed_pairs", &SyntheticSpec::seed_pairs)
      .def_readwrite("gold_pairs", &SyntheticSpec::gold_pairs)
      .def_readwrite("noise_rate", &SyntheticSpec::noise_rate)
      .def_readwrite("alpha", &SyntheticSpec::alpha)
      .def_readwrite("doc_concentration", &SyntheticSpec::doc_concentration)
      .def_readwrite("min_doc_length", &SyntheticSpec::min_doc_length)
      .def_readwrite("seed", &SyntheticSpec::rng_seed);

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_property_readonly("model", [](const TrainedModel& t) { return std::string(model_name(t.state.model)); })
      .def_property_readonly("hyperparams", [](const TrainedModel& t) { return t.state.hp; })
      .def_property_readonly("samples", [](const TrainedModel& t) { return t.estimates.samples; })
      .def("vocabulary", [](const TrainedModel& t, const std::string& side) { return t.v(parse_side(side)).words(); },
           py::arg("side"))
      .def("theta", &TrainedModel::theta, py::arg("side"), "word-by-topic matrix")
      .def("phi", &TrainedModel::phi, py::arg("side"), "topic-by-document matrix")
      .def("rank", &TrainedModel::rank, py::arg("query"), py::arg("measure") = "selprob", py::arg("top") = 10,
           py::arg("kl_candidate_first") = false, "ranked (target word, score) pairs for a source word")
      .def("selections", &TrainedModel::selections)
      .def("evaluate", &TrainedModel::evaluate, py::arg("test_pairs"), py::arg("measure") = "selprob")
      .def("count_mismatches", [](const TrainedModel& t) { return count_mismatches(t.state); })
      .def("save", &TrainedModel::save, py::arg("path"));

  m.def("train", &train_model, py::arg("source"), py::arg("target"), py::arg("seed_pairs"),
        py::arg("model") = "blockprobbilda", py::arg("hyperparams") = HyperParams{},
        py::arg("min_doc_length") = kDefaultMinDocLength,
        "Train on source and target corpora given as one document per string.");
  m.def("load", &load_model, py::arg("path"));
  m.def("generate_synthetic", &synthetic, py::arg("spec") = SyntheticSpec{});
  m.def("tfidf_rank", &tfidf_rank, py::arg("source"), py::arg("target"), py::arg("seed_pairs"), py::arg("query"),
        py::arg("window") = kDefaultWindow, py::arg("top") = 10, py::arg("min_doc_length") = kDefaultMinDocLength);
  m.def("cosine", [](const std::vector<double>& a, const std::vector<double>& b) { return cosine(a, b); });
  m.def("kl_divergence", [](const std::vector<double>& p, const std::vector<double>& q) { return kl_divergence(p, q); });
  m.def("split_tokens", &split_tokens);
  m.attr("MODELS") = std::vector<std::string>{"bilda", "bilda-all", "probbilda", "blockprobbilda"};
  m.attr("MEASURES") = std::vector<std::string>{"cosine", "kl", "selprob"};
}

#include "bilex/checkpoint.hpp"

#include <json.hpp>

#include "internal.hpp"

namespace bilex {

namespace {

using nlohmann::json;

constexpr const char* kFormatTag = "bilex-checkpoint";

json hyperparams_to_json(const HyperParams& hp) {
  return {{"topics", hp.topics},         {"alpha", hp.alpha},
          {"beta", hp.beta},             {"alpha_psi", hp.alpha_psi},
          {"iterations", hp.iterations}, {"burn_in", hp.burn_in},
          {"sample_lag", hp.sample_lag}, {"rng_seed", hp.rng_seed},
          {"block_selection", std::string(selection_rule_name(hp.block_selection))}};
}

HyperParams hyperparams_from_json(const json& j) {
  HyperParams hp;
  hp.topics = j.at("topics").get<std::size_t>();
  hp.alpha = j.at("alpha").get<double>();
  hp.beta = j.at("beta").get<double>();
  hp.alpha_psi = j.at("alpha_psi").get<double>();
  hp.iterations = j.at("iterations").get<std::size_t>();
  hp.burn_in = j.at("burn_in").get<std::size_t>();
  hp.sample_lag = j.at("sample_lag").get<std::size_t>();
  hp.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  hp.block_selection = parse_selection_rule(j.at("block_selection").get<std::string>());
  hp.validate();
  return hp;
}

json state_to_json(const SamplerState& st) {
  json sides = json::object();
  for (Side s : {Side::kTarget, Side::kSource}) {
    const auto& side = st.side(s);
    sides[std::string(side_name(s))] = {{"num_docs", side.num_docs}, {"docs", side.docs}, {"z", side.z}};
  }
  json j = {{"sides", sides},
            {"candidates", st.candidates},
            {"rng", st.rng.serialize()},
            {"sweeps_done", st.sweeps_done}};
  if (st.per_token_selection()) {
    j["token_selection"] = st.token_selection;
  } else {
    j["word_selection"] = st.word_selection;
  }
  return j;
}

SamplerState state_from_json(const json& j, ModelKind model, const HyperParams& hp) {
  SamplerState st;
  st.model = model;
  st.hp = hp;
  for (Side s : {Side::kTarget, Side::kSource}) {
    const auto& js = j.at("sides").at(std::string(side_name(s)));
    auto& side = st.side(s);
    side.num_docs = js.at("num_docs").get<std::size_t>();
    side.docs = js.at("docs").get<std::vector<std::vector<DocId>>>();
    side.z = js.at("z").get<std::vector<std::vector<Topic>>>();
    if (side.z.size() != side.docs.size()) throw Error("topic assignments do not match pseudo-documents");
    for (const auto& tokens : side.docs) {
      for (DocId d : tokens) {
        if (d >= side.num_docs) throw Error("pseudo-document references a document outside the collection");
      }
    }
  }
  st.candidates = j.at("candidates").get<std::vector<std::vector<WordId>>>();
  if (st.candidates.size() != st.side(Side::kSource).num_words()) {
    throw Error("candidate table does not match the source vocabulary");
  }
  for (const auto& cands : st.candidates) {
    for (WordId c : cands) {
      if (c >= st.side(Side::kTarget).num_words()) throw Error("candidate outside the target vocabulary");
    }
  }
  if (st.per_token_selection()) {
    st.token_selection = j.at("token_selection").get<std::vector<std::vector<std::uint32_t>>>();
    if (st.token_selection.size() != st.candidates.size()) throw Error("selection table has the wrong size");
  } else {
    st.word_selection = j.at("word_selection").get<std::vector<std::uint32_t>>();
    if (st.word_selection.size() != st.candidates.size()) throw Error("selection table has the wrong size");
  }
  st.rng = Rng::deserialize(j.at("rng").get<std::string>());
  st.sweeps_done = j.at("sweeps_done").get<std::size_t>();
  const std::size_t K = hp.topics;
  for (auto& side : st.sides) {
    side.nmk.assign(side.num_words() * K, 0);
    side.nm.assign(side.num_words(), 0);
    side.nkv.assign(K * side.num_docs, 0);
    side.nk.assign(K, 0);
  }
  rebuild_counts(st);
  return st;
}

json estimates_to_json(const PosteriorEstimates& est) {
  json j = {{"topics", est.topics}, {"samples", est.samples}};
  for (Side s : {Side::kTarget, Side::kSource}) {
    const auto l = index_of(s);
    j[std::string(side_name(s))] = {{"num_words", est.num_words[l]},
                                    {"num_docs", est.num_docs[l]},
                                    {"theta", est.theta[l]},
                                    {"phi", est.phi[l]}};
  }
  return j;
}

PosteriorEstimates estimates_from_json(const json& j) {
  PosteriorEstimates est;
  est.topics = j.at("topics").get<std::size_t>();
  est.samples = j.at("samples").get<std::size_t>();
  for (Side s : {Side::kTarget, Side::kSource}) {
    const auto l = index_of(s);
    const auto& js = j.at(std::string(side_name(s)));
    est.num_words[l] = js.at("num_words").get<std::size_t>();
    est.num_docs[l] = js.at("num_docs").get<std::size_t>();
    est.theta[l] = js.at("theta").get<std::vector<double>>();
    est.phi[l] = js.at("phi").get<std::vector<double>>();
    if (est.theta[l].size() != est.num_words[l] * est.topics || est.phi[l].size() != est.topics * est.num_docs[l]) {
      throw Error("estimate tables have the wrong shape");
    }
  }
  return est;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& cp) {
  json j = {{"format", kFormatTag},
            {"version", kCheckpointVersion},
            {"model", std::string(model_name(cp.model))},
            {"hyperparams", hyperparams_to_json(cp.hp)},
            {"vocab", {{"target", cp.vocab[0]}, {"source", cp.vocab[1]}}}};
  if (cp.state) {
    if (cp.state->model != cp.model) throw Error("checkpoint state belongs to a different model");
    j["state"] = state_to_json(*cp.state);
  }
  if (cp.estimates) j["estimates"] = estimates_to_json(*cp.estimates);
  return j.dump() + "\n";
}

Checkpoint parse_checkpoint(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("corrupted checkpoint: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", std::string()) != kFormatTag) {
      throw Error("not a bilex checkpoint");
    }
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw Error("unsupported checkpoint version " + std::to_string(version) + " (expected " +
                  std::to_string(kCheckpointVersion) + ")");
    }
    Checkpoint cp;
    cp.model = parse_model(j.at("model").get<std::string>());
    cp.hp = hyperparams_from_json(j.at("hyperparams"));
    cp.vocab[0] = j.at("vocab").at("target").get<std::vector<std::string>>();
    cp.vocab[1] = j.at("vocab").at("source").get<std::vector<std::string>>();
    if (j.contains("state")) {
      cp.state = state_from_json(j.at("state"), cp.model, cp.hp);
      for (std::size_t l = 0; l < 2; ++l) {
        if (cp.state->sides[l].num_words() != cp.vocab[l].size()) throw Error("state does not match vocabulary");
      }
    }
    if (j.contains("estimates")) {
      cp.estimates = estimates_from_json(j.at("estimates"));
      for (std::size_t l = 0; l < 2; ++l) {
        if (cp.estimates->num_words[l] != cp.vocab[l].size()) throw Error("estimates do not match vocabulary");
      }
    }
    return cp;
  } catch (const json::exception& e) {
    throw Error(std::string("corrupted checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  detail::write_file(path, serialize_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  try {
    return parse_checkpoint(detail::read_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace bilex

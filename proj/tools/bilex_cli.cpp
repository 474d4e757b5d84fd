#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilex/checkpoint.hpp"
#include "bilex/eval.hpp"
#include "bilex/synthetic.hpp"
#include "bilex/tfidf.hpp"
#include "internal.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace bilex;

namespace {

constexpr const char* kIndexFile = "index.json";
constexpr const char* kTfidfModel = "tfidf";

struct Options {
  std::string source_corpus, target_corpus, seed_dict, test_set, out;
  std::string model = "blockprobbilda";
  std::vector<std::string> models{"bilda", "bilda-all", "probbilda", "blockprobbilda", "tfidf"};
  std::vector<std::string> measures{"cosine", "kl", "selprob"};
  std::string measure = "selprob";
  std::string block_selection = "argmax";
  std::string kl_direction = "query-first";
  std::vector<std::string> queries;
  std::string query_file, output;
  std::size_t top = 10;
  std::size_t window = kDefaultWindow;
  std::size_t min_doc_length = kDefaultMinDocLength;
  HyperParams hp;
  SyntheticSpec synth;
};

void write_json(const fs::path& path, const json& j) { detail::write_file(path, j.dump(2) + "\n"); }

json hp_json(const HyperParams& hp) {
  return {{"topics", hp.topics},         {"alpha", hp.alpha},
          {"beta", hp.beta},             {"alpha_psi", hp.alpha_psi},
          {"iterations", hp.iterations}, {"burn_in", hp.burn_in},
          {"sample_lag", hp.sample_lag}, {"seed", hp.rng_seed},
          {"block_selection", std::string(selection_rule_name(hp.block_selection))}};
}

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(std::string(flag) + " is required");
  if (!fs::is_regular_file(path)) throw Error(std::string(flag) + ": no such file '" + path + "'");
}

fs::path out_dir(const Options& o) {
  if (o.out.empty()) throw Error("--out is required");
  return o.out;
}

// Index artifacts: both vocabularies and the encoded documents.
struct Index {
  std::array<Corpus, 2> corpora;
  std::array<Vocabulary, 2> vocab;
};

json side_json(const Corpus& corpus, const Vocabulary& vocab) {
  json docs = json::array();
  for (const auto& d : encode_documents(corpus, vocab)) docs.push_back(d);
  return {{"language", corpus.language_tag}, {"vocabulary", vocab.words()}, {"documents", docs}};
}

Index load_index(const fs::path& dir) {
  const auto path = dir / kIndexFile;
  if (!fs::is_regular_file(path)) throw Error("no index at '" + path.string() + "'; run build-index first");
  json j;
  try {
    j = json::parse(detail::read_file(path));
  } catch (const json::exception& e) {
    throw Error("corrupted index '" + path.string() + "': " + e.what());
  }
  Index idx;
  for (auto side : {Side::kTarget, Side::kSource}) {
    const auto& s = j.at(std::string(side_name(side)));
    const auto words = s.at("vocabulary").get<std::vector<std::string>>();
    auto& corpus = idx.corpora[index_of(side)];
    corpus.language_tag = s.at("language").get<std::string>();
    for (const auto& d : s.at("documents")) {
      auto& doc = corpus.documents.emplace_back();
      for (WordId w : d.get<std::vector<WordId>>()) doc.push_back(words.at(w));
    }
    idx.vocab[index_of(side)] = build_vocabulary(corpus);
    if (idx.vocab[index_of(side)].words() != words) throw Error("corrupted index: vocabulary order mismatch");
  }
  return idx;
}

fs::path checkpoint_path(const fs::path& dir, const std::string& model) {
  return dir / ("checkpoint." + model + ".json");
}

int cmd_build_index(const Options& o) {
  require_file(o.source_corpus, "--source-corpus");
  require_file(o.target_corpus, "--target-corpus");
  const auto dir = out_dir(o);
  const auto src = load_corpus(o.source_corpus, "source", o.min_doc_length);
  const auto tgt = load_corpus(o.target_corpus, "target", o.min_doc_length);
  const auto sv = build_vocabulary(src);
  const auto tv = build_vocabulary(tgt);
  fs::create_directories(dir);
  write_json(dir / kIndexFile, {{"target", side_json(tgt, tv)}, {"source", side_json(src, sv)}});
  json stats;
  for (auto [name, c, v] : {std::tuple{"source", &src, &sv}, std::tuple{"target", &tgt, &tv}}) {
    stats[name] = {{"documents", c->num_docs()}, {"tokens", c->num_tokens()}, {"vocabulary", v->size()}};
  }
  write_json(dir / "stats.json", stats);
  write_json(dir / "config.build-index.json", {{"command", "build-index"},
                                               {"source_corpus", o.source_corpus},
                                               {"target_corpus", o.target_corpus},
                                               {"min_doc_length", o.min_doc_length},
                                               {"out", o.out}});
  std::cout << "source: " << src.num_docs() << " documents, " << src.num_tokens() << " tokens, " << sv.size()
            << " words\n"
            << "target: " << tgt.num_docs() << " documents, " << tgt.num_tokens() << " tokens, " << tv.size()
            << " words\n";
  return 0;
}

int cmd_train(const Options& o) {
  require_file(o.seed_dict, "--seed-dict");
  const auto dir = out_dir(o);
  const auto model = parse_model(o.model);
  auto hp = o.hp;
  hp.block_selection = parse_selection_rule(o.block_selection);
  hp.validate();
  const auto idx = load_index(dir);
  const auto& tv = idx.vocab[index_of(Side::kTarget)];
  const auto& sv = idx.vocab[index_of(Side::kSource)];
  const auto dict = load_dictionary(o.seed_dict, sv, tv);
  const auto tp = invert_index(idx.corpora[index_of(Side::kTarget)], tv);
  const auto sp = invert_index(idx.corpora[index_of(Side::kSource)], sv);

  std::ostringstream log;
  log << "sweep\ttokens\tseconds\n";
  const std::size_t tokens = tp.num_tokens() + sp.num_tokens();
  auto start = std::chrono::steady_clock::now();
  auto result = train(tp, sp, dict, model, hp, [&](const SamplerState& st) {
    const auto now = std::chrono::steady_clock::now();
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.4f", std::chrono::duration<double>(now - start).count());
    start = now;
    log << st.sweeps_done << '\t' << tokens << '\t' << secs << '\n';
  });

  Checkpoint cp;
  cp.model = model;
  cp.hp = hp;
  cp.vocab[index_of(Side::kTarget)] = tv.words();
  cp.vocab[index_of(Side::kSource)] = sv.words();
  cp.state = std::move(result.state);
  cp.estimates = std::move(result.estimates);
  save_checkpoint(cp, checkpoint_path(dir, o.model));
  detail::write_file(dir / ("train." + o.model + ".log"), log.str());
  write_json(dir / ("config.train." + o.model + ".json"), {{"command", "train"},
                                                           {"model", o.model},
                                                           {"seed_dict", o.seed_dict},
                                                           {"out", o.out},
                                                           {"hyperparameters", hp_json(hp)}});
  std::cout << "trained " << o.model << ": " << hp.iterations << " sweeps, " << cp.estimates->samples
            << " samples averaged\n";
  return 0;
}

struct RankInputs {
  Checkpoint cp;
  std::array<Vocabulary, 2> vocab;
  PseudoDocCollection source_pdocs;
};

RankInputs load_rank_inputs(const fs::path& dir, const std::string& model) {
  RankInputs in;
  in.cp = load_checkpoint(checkpoint_path(dir, model));
  for (auto side : {Side::kTarget, Side::kSource}) {
    for (const auto& w : in.cp.vocab[index_of(side)]) in.vocab[index_of(side)].add(w);
  }
  if (!in.cp.estimates) throw Error("checkpoint for " + model + " holds no estimates");
  if (in.cp.state) {
    in.source_pdocs = {in.cp.state->side(Side::kSource).docs, in.cp.state->side(Side::kSource).num_docs};
  }
  return in;
}

struct TfidfInputs {
  ContextVectors query, candidate;
  std::array<Vocabulary, 2> vocab;
};

TfidfInputs load_tfidf_inputs(const Options& o, const fs::path& dir) {
  require_file(o.seed_dict, "--seed-dict");
  const auto idx = load_index(dir);
  const auto& tv = idx.vocab[index_of(Side::kTarget)];
  const auto& sv = idx.vocab[index_of(Side::kSource)];
  const auto pairs = most_frequent_pairing(load_dictionary(o.seed_dict, sv, tv), tv);
  return {build_context_vectors(idx.corpora[index_of(Side::kSource)], sv, pairs, Side::kSource, o.window),
          build_context_vectors(idx.corpora[index_of(Side::kTarget)], tv, pairs, Side::kTarget, o.window), idx.vocab};
}

int cmd_rank(const Options& o) {
  const auto dir = out_dir(o);
  std::vector<std::string> queries = o.queries;
  if (!o.query_file.empty()) {
    require_file(o.query_file, "--query-file");
    for (const auto& line : detail::read_lines(o.query_file)) {
      for (auto& t : split_tokens(line)) queries.push_back(t);
    }
  }
  if (queries.empty()) throw Error("give at least one --query or a --query-file");

  std::ostringstream out;
  auto oov_row = [&](const std::string& q) {
    out << "# " << q << "\tnot in vocabulary\n";
    std::cerr << "warning: query '" << q << "' is not in the source vocabulary\n";
  };
  if (o.model == kTfidfModel) {
    const auto in = load_tfidf_inputs(o, dir);
    const auto& sv = in.vocab[index_of(Side::kSource)];
    for (const auto& q : queries) {
      if (!sv.contains(q)) {
        oov_row(q);
        continue;
      }
      auto r = rank_tfidf(sv.id(q), Side::kSource, in.query, in.candidate, o.top);
      if (!r) {
        out << "# " << q << "\tno context\n";
        continue;
      }
      write_ranking_rows(out, *r, sv, in.vocab[index_of(Side::kTarget)]);
    }
  } else {
    parse_model(o.model);
    const auto measure = parse_measure(o.measure);
    const auto in = load_rank_inputs(dir, o.model);
    const auto& sv = in.vocab[index_of(Side::kSource)];
    const auto candidates = all_candidates(*in.cp.estimates, Side::kSource);
    RankOptions options;
    options.top = o.top;
    options.kl_direction = o.kl_direction == "candidate-first" ? KlDirection::kCandidateFirst : KlDirection::kQueryFirst;
    if (measure == Measure::kSelProb && !in.cp.state) throw Error("selprob needs a checkpoint with sampler state");
    for (const auto& q : queries) {
      if (!sv.contains(q)) {
        oov_row(q);
        continue;
      }
      auto r = rank_candidates(sv.id(q), Side::kSource, candidates, measure, *in.cp.estimates, in.source_pdocs, options);
      write_ranking_rows(out, r, sv, in.vocab[index_of(Side::kTarget)]);
    }
  }
  if (o.output.empty()) {
    std::cout << out.str();
  } else {
    detail::write_file(o.output, out.str());
  }
  return 0;
}

int cmd_eval(const Options& o) {
  require_file(o.test_set, "--test-set");
  require_file(o.seed_dict, "--seed-dict");
  const auto dir = out_dir(o);
  const auto idx = load_index(dir);
  const auto& tv = idx.vocab[index_of(Side::kTarget)];
  const auto& sv = idx.vocab[index_of(Side::kSource)];
  const auto seed = load_dictionary(o.seed_dict, sv, tv);
  std::vector<std::string> warnings;
  const auto test = load_test_set(o.test_set, seed, sv, tv, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  std::map<std::string, std::string> fingerprint{
      {"index_sha256", file_sha256(dir / kIndexFile)},
      {"seed_dict_sha256", file_sha256(o.seed_dict)},
      {"test_set_sha256", file_sha256(o.test_set)},
      {"window", std::to_string(o.window)},
  };
  std::vector<RankingRun> runs;
  for (const auto& model : o.models) {
    if (model == kTfidfModel) {
      const auto in = load_tfidf_inputs(o, dir);
      RankingRun run{model, "cosine", {}};
      for (const auto& [q, _] : test.gold) {
        auto r = rank_tfidf(q, Side::kSource, in.query, in.candidate, 10);
        if (!r) {
          r = RankedCandidates{};
          r->query = q;
        }
        run.rankings.emplace(q, std::move(*r));
      }
      runs.push_back(std::move(run));
      continue;
    }
    parse_model(model);
    const auto cp_path = checkpoint_path(dir, model);
    if (!fs::is_regular_file(cp_path)) throw Error("no checkpoint for " + model + " at '" + cp_path.string() + "'");
    const auto in = load_rank_inputs(dir, model);
    if (in.vocab[0].words() != tv.words() || in.vocab[1].words() != sv.words()) {
      throw Error("checkpoint '" + cp_path.string() + "' was trained on a different index");
    }
    fingerprint["checkpoint." + model + ".sha256"] = file_sha256(cp_path);
    fingerprint["seed." + model] = std::to_string(in.cp.hp.rng_seed);
    for (const auto& m : o.measures) {
      const auto measure = parse_measure(m);
      runs.push_back({model, m, rank_test_queries(test, measure, *in.cp.estimates, in.source_pdocs, 10)});
    }
  }
  const auto report = evaluate(runs, test, fingerprint);
  detail::write_file(dir / "report.tsv", report_to_tsv(report));
  detail::write_file(dir / "report.meta.json", report_metadata_json(report));
  fs::create_directories(dir / "rankings");
  for (const auto& run : runs) {
    std::ostringstream rows;
    for (const auto& [q, r] : run.rankings) {
      if (r.entries.empty()) {
        rows << "# " << sv.word(q) << "\tno context\n";
        continue;
      }
      write_ranking_rows(rows, r, sv, tv);
    }
    detail::write_file(dir / "rankings" / (run.model + "." + run.measure + ".tsv"), rows.str());
  }
  write_json(dir / "config.eval.json", {{"command", "eval"},
                                        {"models", o.models},
                                        {"measures", o.measures},
                                        {"seed_dict", o.seed_dict},
                                        {"test_set", o.test_set},
                                        {"window", o.window},
                                        {"out", o.out}});
  std::cout << report_to_tsv(report);
  return 0;
}

int cmd_synth(const Options& o) {
  const auto dir = out_dir(o);
  const auto& spec = o.synth;
  const auto data = generate_synthetic(spec);
  write_synthetic(data, dir);
  write_json(dir / "config.synth.json", {{"command", "synth"},
                                         {"topics", spec.topics},
                                         {"docs_per_language", spec.docs_per_language},
                                         {"mean_doc_length", spec.mean_doc_length},
                                         {"source_vocab", spec.source_vocab},
                                         {"target_vocab", spec.target_vocab},
                                         {"seed_pairs", spec.seed_pairs},
                                         {"gold_pairs", spec.gold_pairs},
                                         {"noise_rate", spec.noise_rate},
                                         {"alpha", spec.alpha},
                                         {"doc_concentration", spec.doc_concentration},
                                         {"min_doc_length", spec.min_doc_length},
                                         {"seed", spec.rng_seed},
                                         {"out", o.out}});
  std::cout << "wrote " << data.source.num_docs() << " source and " << data.target.num_docs()
            << " target documents to " << dir.string() << '\n';
  return 0;
}

void add_hyperparams(CLI::App* app, Options& o) {
  app->add_option("--topics", o.hp.topics, "number of topics K")->capture_default_str();
  app->add_option("--alpha", o.hp.alpha, "topic mixture prior")->capture_default_str();
  app->add_option("--beta", o.hp.beta, "topic-document prior")->capture_default_str();
  app->add_option("--alpha-psi", o.hp.alpha_psi, "translation selection prior")->capture_default_str();
  app->add_option("--iterations", o.hp.iterations, "Gibbs sweeps")->capture_default_str();
  app->add_option("--burn-in", o.hp.burn_in, "sweeps discarded before averaging")->capture_default_str();
  app->add_option("--sample-lag", o.hp.sample_lag, "sweeps between averaged samples")->capture_default_str();
  app->add_option("--block-selection", o.block_selection, "BlockProbBiLDA selection rule")
      ->check(CLI::IsMember({"argmax", "sample"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Bilingual lexicon induction with translation-selection topic models"};
  app.require_subcommand(1);
  const std::vector<std::string> model_names{"bilda", "bilda-all", "probbilda", "blockprobbilda"};
  auto with_tfidf = model_names;
  with_tfidf.push_back(kTfidfModel);

  auto* build = app.add_subcommand("build-index", "load corpora and write vocabulary and pseudo-document artifacts");
  build->add_option("--source-corpus", o.source_corpus, "source language corpus, one document per line")->required();
  build->add_option("--target-corpus", o.target_corpus, "target language corpus, one document per line")->required();
  build->add_option("--min-doc-length", o.min_doc_length, "drop shorter documents")->capture_default_str();
  build->add_option("--out", o.out, "output directory")->required();

  auto* tr = app.add_subcommand("train", "train one model on a built index");
  tr->add_option("--seed-dict", o.seed_dict, "seed dictionary, source<TAB>target per line")->required();
  tr->add_option("--model", o.model)->check(CLI::IsMember(model_names))->capture_default_str();
  add_hyperparams(tr, o);
  tr->add_option("--seed", o.hp.rng_seed, "random seed")->capture_default_str();
  tr->add_option("--out", o.out, "index directory; the checkpoint is written here")->required();

  auto* rk = app.add_subcommand("rank", "rank target words for source queries");
  rk->add_option("--model", o.model)->check(CLI::IsMember(with_tfidf))->capture_default_str();
  rk->add_option("--measure", o.measure)->check(CLI::IsMember({"cosine", "kl", "selprob"}))->capture_default_str();
  rk->add_option("--query", o.queries, "query word; repeatable");
  rk->add_option("--query-file", o.query_file, "whitespace-separated query words");
  rk->add_option("--top", o.top, "rows per query; 0 for all")->capture_default_str();
  rk->add_option("--kl-direction", o.kl_direction)
      ->check(CLI::IsMember({"query-first", "candidate-first"}))
      ->capture_default_str();
  rk->add_option("--seed-dict", o.seed_dict, "seed dictionary (tfidf only)");
  rk->add_option("--window", o.window, "context window (tfidf only)")->capture_default_str();
  rk->add_option("--output", o.output, "write rows here instead of stdout");
  rk->add_option("--out", o.out, "index directory")->required();

  auto* ev = app.add_subcommand("eval", "score models and measures against a test set");
  ev->add_option("--test-set", o.test_set, "gold pairs, source<TAB>target per line")->required();
  ev->add_option("--seed-dict", o.seed_dict, "seed dictionary used for training")->required();
  ev->add_option("--model", o.models, "models to evaluate")
      ->delimiter(',')
      ->check(CLI::IsMember(with_tfidf))
      ->capture_default_str();
  ev->add_option("--measure", o.measures, "measures for the topic models")
      ->delimiter(',')
      ->check(CLI::IsMember({"cosine", "kl", "selprob"}))
      ->capture_default_str();
  ev->add_option("--window", o.window, "tfidf context window")->capture_default_str();
  ev->add_option("--out", o.out, "index directory with checkpoints")->required();

  auto* sy = app.add_subcommand("synth", "write a synthetic bilingual corpus with known translations");
  sy->add_option("--topics", o.synth.topics)->capture_default_str();
  sy->add_option("--docs", o.synth.docs_per_language, "documents per language")->capture_default_str();
  sy->add_option("--doc-length", o.synth.mean_doc_length, "mean document length")->capture_default_str();
  sy->add_option("--source-vocab", o.synth.source_vocab)->capture_default_str();
  sy->add_option("--target-vocab", o.synth.target_vocab)->capture_default_str();
  sy->add_option("--seed-pairs", o.synth.seed_pairs)->capture_default_str();
  sy->add_option("--gold-pairs", o.synth.gold_pairs)->capture_default_str();
  sy->add_option("--noise-rate", o.synth.noise_rate)->capture_default_str();
  sy->add_option("--alpha", o.synth.alpha)->capture_default_str();
  sy->add_option("--doc-concentration", o.synth.doc_concentration)->capture_default_str();
  sy->add_option("--seed", o.synth.rng_seed, "random seed")->capture_default_str();
  sy->add_option("--out", o.out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) return cmd_build_index(o);
    if (*tr) return cmd_train(o);
    if (*rk) return cmd_rank(o);
    if (*ev) return cmd_eval(o);
    if (*sy) return cmd_synth(o);
  } catch (const std::exception& e) {
    std::cerr << "bilex: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

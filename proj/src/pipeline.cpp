#include "semrec/pipeline.hpp"

#include <filesystem>

#include "json.hpp"
#include "semrec/common.hpp"

namespace semrec {

using nlohmann::json;

namespace {

template <typename T>
void read_into(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("malformed config: ") + e.what());
  }

  PipelineConfig config;
  if (doc.contains("paths")) {
    const json& p = doc["paths"];
    read_into(p, "corpus", config.paths.corpus);
    read_into(p, "lexicon", config.paths.lexicon);
    read_into(p, "lexicon_format", config.paths.lexicon_format);
    read_into(p, "stopwords", config.paths.stopwords);
    read_into(p, "boilerplate", config.paths.boilerplate);
    read_into(p, "output_dir", config.paths.output_dir);
  }
  if (doc.contains("preprocess"))
    read_into(doc["preprocess"], "max_df_ratio", config.preprocess.max_df_ratio);
  if (doc.contains("ontology")) {
    const json& o = doc["ontology"];
    read_into(o, "method", config.ontology.method);
    read_into(o, "rank", config.ontology.rank);
    read_into(o, "k_top", config.ontology.k_top);
    read_into(o, "k_sub", config.ontology.k_sub);
    read_into(o, "min_freq", config.ontology.min_freq);
    read_into(o, "seed", config.ontology.seed);
    read_into(o, "include_oov", config.ontology.include_oov);
  }
  if (doc.contains("recommend")) {
    const json& r = doc["recommend"];
    read_into(r, "method", config.recommend.method);
    read_into(r, "alpha", config.recommend.coeffs.alpha);
    read_into(r, "beta", config.recommend.coeffs.beta);
    read_into(r, "gamma", config.recommend.coeffs.gamma);
    if (r.contains("shoval")) {
      const json& s = r["shoval"];
      read_into(s, "a", config.recommend.shoval.a);
      read_into(s, "b", config.recommend.shoval.b);
      read_into(s, "c", config.recommend.shoval.c);
      read_into(s, "d", config.recommend.shoval.d);
      read_into(s, "e", config.recommend.shoval.e);
    }
  }
  if (doc.contains("eval")) {
    const json& e = doc["eval"];
    read_into(e, "min_user_posts", config.eval.min_user_posts);
    read_into(e, "n_samples", config.eval.n_samples);
    read_into(e, "seed", config.eval.seed);
    read_into(e, "exclude_seen", config.eval.exclude_seen);
    read_into(e, "per_user_mean", config.eval.per_user_mean);
    read_into(e, "threads", config.eval.threads);
  }
  return config;
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
  return from_json(read_file(path));
}

void PipelineConfig::validate_paths(bool lexicon_required) const {
  namespace fs = std::filesystem;
  auto require = [](const std::string& path, const char* what) {
    if (path.empty())
      throw config_error(std::string("missing required path: ") + what);
    if (!fs::exists(path))
      throw config_error(std::string(what) + " not found: " + path);
  };
  require(paths.corpus, "corpus");
  if (lexicon_required) require(paths.lexicon, "lexicon");
  if (!paths.stopwords.empty() && !fs::exists(paths.stopwords))
    throw config_error("stopwords not found: " + paths.stopwords);
  if (!paths.boilerplate.empty() && !fs::exists(paths.boilerplate))
    throw config_error("boilerplate not found: " + paths.boilerplate);
  if (preprocess.max_df_ratio <= 0.0 || preprocess.max_df_ratio > 1.0)
    throw config_error("max_df_ratio must be in (0, 1]");
  if (ontology.method < 1 || ontology.method > 3)
    throw config_error("ontology method must be 1, 2 or 3");
  if (recommend.method != "simple" && recommend.method != "proposed" &&
      recommend.method != "shoval")
    throw config_error("recommender method must be simple, proposed or shoval");
  if (eval.n_samples < 1) throw config_error("n_samples must be >= 1");
}

Workspace Workspace::build(const PipelineConfig& config, bool load_lexicon) {
  Workspace ws;
  ws.corpus = load_corpus(config.paths.corpus);
  if (!config.paths.stopwords.empty())
    ws.filters.stopwords = load_wordlist(config.paths.stopwords);
  if (!config.paths.boilerplate.empty())
    ws.filters.boilerplate = load_wordlist(config.paths.boilerplate);
  ws.vocabulary =
      build_vocabulary(ws.corpus, ws.filters, config.preprocess.max_df_ratio);

  for (const auto& [id, discussion] : ws.corpus.discussions) {
    try {
      ws.item_profiles.push_back(
          build_item_profile(discussion, ws.vocabulary, ws.filters));
    } catch (const data_error&) {
      ws.warnings.push_back("discussion excluded from item set (no usable terms): " + id);
    }
  }
  if (ws.item_profiles.empty()) throw data_error("no usable item profiles");

  ws.idf = IdfTable::build(ws.item_profiles);
  for (const Profile& item : ws.item_profiles)
    ws.item_vectors.push_back(
        {item.owner, tfidf_vector(item, ws.idf, VectorTag::Item)});

  if (load_lexicon)
    ws.lexicon = Lexicon::load(config.paths.lexicon, config.paths.lexicon_format);
  return ws;
}

Profile Workspace::user_profile(const std::string& user_id) const {
  return build_user_profile(user_id, corpus, vocabulary, filters);
}

WeightedVector Workspace::user_vector(const std::string& user_id) const {
  return tfidf_vector(user_profile(user_id), idf, VectorTag::BaseUser);
}

Ontology Workspace::build_ontology(const PipelineConfig& config,
                                   int method) const {
  if (!lexicon)
    throw config_error("ontology construction requires a lexicon");
  switch (method) {
    case 1:
    case 2: {
      ClusterOntologyParams params{config.ontology.rank, config.ontology.k_top,
                                   config.ontology.k_sub, config.ontology.seed};
      return build_cluster_ontology(item_profiles, idf, *lexicon, params,
                                    method == 1 ? Enrichment::Hypernym
                                                : Enrichment::GlossNoun,
                                    filters.stopwords);
    }
    case 3:
      return build_direct_ontology(vocabulary, *lexicon,
                                   config.ontology.min_freq,
                                   config.ontology.include_oov);
    default:
      throw config_error("ontology method must be 1, 2 or 3");
  }
}

const std::vector<ExperimentSpec>& all_experiments() {
  static const std::vector<ExperimentSpec> experiments = {
      {"shoval-ont1", "shoval", 1},   {"shoval-ont2", "shoval", 2},
      {"shoval-ont3", "shoval", 3},   {"proposed-ont1", "proposed", 1},
      {"proposed-ont2", "proposed", 2}, {"proposed-ont3", "proposed", 3},
      {"simple-vsm", "simple", 0},
  };
  return experiments;
}

Recommender make_recommender(const Workspace& workspace,
                             const PipelineConfig& config,
                             const std::string& method,
                             const Ontology* ontology) {
  if (method == "simple") {
    return [&workspace](const std::string& user_id) {
      return recommend_simple(user_id, workspace.user_vector(user_id),
                              workspace.item_vectors);
    };
  }
  if (method == "proposed") {
    if (!ontology) throw config_error("proposed method requires an ontology");
    const EnrichCoefficients coeffs = config.recommend.coeffs;
    return [&workspace, ontology, coeffs](const std::string& user_id) {
      return recommend_proposed(user_id, workspace.user_vector(user_id),
                                workspace.item_vectors, *ontology,
                                workspace.idf, coeffs);
    };
  }
  if (method == "shoval") {
    if (!ontology) throw config_error("shoval method requires an ontology");
    const ShovalScores scores = config.recommend.shoval;
    return [&workspace, ontology, scores](const std::string& user_id) {
      return recommend_shoval(user_id, workspace.user_profile(user_id),
                              workspace.item_profiles, *ontology, scores);
    };
  }
  throw config_error("unknown recommender method: " + method);
}

std::vector<ExperimentResult> run_all_experiments(const PipelineConfig& config,
                                                  const Workspace& workspace) {
  std::map<int, Ontology> ontologies;
  for (int method = 1; method <= 3; ++method)
    ontologies[method] = workspace.build_ontology(config, method);

  ExperimentConfig base;
  base.min_user_posts = config.eval.min_user_posts;
  base.n_samples = config.eval.n_samples;
  base.rng_seed = config.eval.seed;
  base.exclude_seen = config.eval.exclude_seen;
  base.per_user_mean = config.eval.per_user_mean;
  base.threads = config.eval.threads;

  std::vector<ExperimentResult> results;
  for (const ExperimentSpec& spec : all_experiments()) {
    ExperimentConfig experiment = base;
    experiment.experiment_id = spec.id;
    const Ontology* ontology =
        spec.ontology_method ? &ontologies.at(spec.ontology_method) : nullptr;
    Recommender recommender =
        make_recommender(workspace, config, spec.method, ontology);
    results.push_back(run_experiment(experiment, workspace.corpus,
                                     workspace.item_profiles.size(),
                                     recommender));
  }
  return results;
}

void write_artifact(const std::string& path, const std::string& content,
                    const std::map<std::string, std::string>& input_files,
                    const std::string& params_json) {
  write_file_atomic(path, content);

  json manifest;
  json inputs = json::object();
  for (const auto& [name, file_path] : input_files)
    inputs[name] = {{"path", file_path}, {"digest", fnv1a_hex(read_file(file_path))}};
  manifest["inputs"] = inputs;
  manifest["params"] = json::parse(params_json);
  manifest["output"] = {{"path", path}, {"digest", fnv1a_hex(content)}};
  write_file_atomic(path + ".manifest.json", manifest.dump(2) + "\n");
}

}  // namespace semrec

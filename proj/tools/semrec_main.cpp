#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "semrec/common.hpp"
#include "semrec/pipeline.hpp"

namespace fs = std::filesystem;
using namespace semrec;
using nlohmann::json;

namespace {

void warn_zero_vectors() {
  if (const std::uint64_t n = zero_vector_comparisons(); n > 0)
    std::cerr << "warning: " << n
              << " similarity computations involved an all-zero vector\n";
}

std::string params_json(std::initializer_list<std::pair<std::string, json>> kv) {
  json doc = json::object();
  for (const auto& [key, value] : kv) doc[key] = value;
  return doc.dump();
}

struct CommonOpts {
  std::string config_path;
  PipelineConfig config;

  void load() {
    if (!config_path.empty()) config = PipelineConfig::from_json_file(config_path);
  }
};

int run_ingest(const std::string& input, const std::string& out) {
  Corpus corpus = load_corpus(input);
  write_artifact(out, corpus_to_jsonl(corpus), {{"input", input}},
                 params_json({{"command", "ingest"}}));
  CorpusStats stats = corpus_stats(corpus);
  std::cout << "ingested " << stats.n_posts << " posts, " << stats.n_discussions
            << " discussions, " << stats.n_users << " users\n";
  return 0;
}

int run_preprocess(const PipelineConfig& config, const std::string& out) {
  config.validate_paths(false);
  TextFilters filters;
  if (!config.paths.stopwords.empty())
    filters.stopwords = load_wordlist(config.paths.stopwords);
  if (!config.paths.boilerplate.empty())
    filters.boilerplate = load_wordlist(config.paths.boilerplate);
  Corpus corpus = load_corpus(config.paths.corpus);
  Vocabulary vocab =
      build_vocabulary(corpus, filters, config.preprocess.max_df_ratio);

  std::map<std::string, std::string> inputs{{"corpus", config.paths.corpus}};
  if (!config.paths.stopwords.empty()) inputs["stopwords"] = config.paths.stopwords;
  if (!config.paths.boilerplate.empty())
    inputs["boilerplate"] = config.paths.boilerplate;
  write_artifact(out, vocab.to_json(), inputs,
                 params_json({{"command", "preprocess"},
                              {"max_df_ratio", config.preprocess.max_df_ratio}}));
  std::cout << "vocabulary: " << vocab.terms.size() << " stems over "
            << vocab.n_discussions << " discussions\n";
  return 0;
}

int run_lexicon_check(const std::string& path, const std::string& format) {
  Lexicon lexicon = Lexicon::load(path, format);
  std::cout << "lexicon ok: " << lexicon.synset_count() << " synsets, "
            << lexicon.lemma_count() << " lemmas\n";
  return 0;
}

int run_ontology_build(const PipelineConfig& config, const std::string& out) {
  config.validate_paths(true);
  Workspace workspace = Workspace::build(config, true);
  for (const std::string& warning : workspace.warnings)
    std::cerr << "warning: " << warning << "\n";
  Ontology ontology = workspace.build_ontology(config, config.ontology.method);
  if (ontology.tree.empty() && ontology.kind != OntologyKind::DirectRelations)
    std::cerr << "warning: ontology tree is empty\n";

  write_artifact(out, ontology.to_json(),
                 {{"corpus", config.paths.corpus},
                  {"lexicon", config.paths.lexicon}},
                 params_json({{"command", "ontology build"},
                              {"method", config.ontology.method},
                              {"rank", config.ontology.rank},
                              {"k_top", config.ontology.k_top},
                              {"k_sub", config.ontology.k_sub},
                              {"min_freq", config.ontology.min_freq},
                              {"seed", config.ontology.seed}}));
  std::cout << "ontology: " << ontology.tree.nodes.size() << " tree nodes, "
            << ontology.relations.size() << " relation entries\n";
  return 0;
}

int run_recommend(const PipelineConfig& config, const std::string& ontology_path,
                  const std::string& out) {
  const bool needs_ontology = config.recommend.method != "simple";
  config.validate_paths(false);
  if (needs_ontology && ontology_path.empty())
    throw config_error(config.recommend.method + " method requires --ontology");

  Workspace workspace = Workspace::build(config, false);
  Ontology ontology;
  if (needs_ontology) ontology = Ontology::from_json(read_file(ontology_path));

  Recommender recommender =
      make_recommender(workspace, config, config.recommend.method,
                       needs_ontology ? &ontology : nullptr);
  std::vector<RecommendationList> lists;
  for (const std::string& user : workspace.corpus.users)
    lists.push_back(recommender(user));

  std::map<std::string, std::string> inputs{{"corpus", config.paths.corpus}};
  if (needs_ontology) inputs["ontology"] = ontology_path;
  write_artifact(out, recommendations_to_tsv(lists), inputs,
                 params_json({{"command", "recommend"},
                              {"method", config.recommend.method},
                              {"alpha", config.recommend.coeffs.alpha},
                              {"beta", config.recommend.coeffs.beta},
                              {"gamma", config.recommend.coeffs.gamma}}));
  warn_zero_vectors();
  std::cout << "recommendations for " << lists.size() << " users\n";
  return 0;
}

int run_evaluate(const PipelineConfig& config, const std::string& out_dir) {
  const bool needs_ontology = config.recommend.method != "simple";
  config.validate_paths(needs_ontology);

  Workspace workspace = Workspace::build(config, needs_ontology);
  Ontology ontology;
  if (needs_ontology)
    ontology = workspace.build_ontology(config, config.ontology.method);

  ExperimentConfig experiment;
  experiment.experiment_id =
      needs_ontology
          ? config.recommend.method + "-ont" + std::to_string(config.ontology.method)
          : "simple-vsm";
  experiment.min_user_posts = config.eval.min_user_posts;
  experiment.n_samples = config.eval.n_samples;
  experiment.rng_seed = config.eval.seed;
  experiment.exclude_seen = config.eval.exclude_seen;
  experiment.per_user_mean = config.eval.per_user_mean;
  experiment.threads = config.eval.threads;

  Recommender recommender =
      make_recommender(workspace, config, config.recommend.method,
                       needs_ontology ? &ontology : nullptr);
  ExperimentResult result =
      run_experiment(experiment, workspace.corpus,
                     workspace.item_profiles.size(), recommender);

  const std::string metrics_path =
      (fs::path(out_dir) / (result.experiment + ".metrics.tsv")).string();
  write_artifact(metrics_path, metrics_to_tsv(result.rows),
                 {{"corpus", config.paths.corpus}},
                 params_json({{"command", "evaluate"},
                              {"experiment", result.experiment},
                              {"n_samples", config.eval.n_samples},
                              {"seed", config.eval.seed}}));
  warn_zero_vectors();
  std::cout << result.experiment << "\tavg_f1\t" << result.avg_f1 << "\n";
  return 0;
}

int run_compare(const PipelineConfig& config, const std::string& out_dir) {
  config.validate_paths(true);
  Workspace workspace = Workspace::build(config, true);
  for (const std::string& warning : workspace.warnings)
    std::cerr << "warning: " << warning << "\n";

  std::vector<ExperimentResult> results = run_all_experiments(config, workspace);

  std::vector<MetricRow> all_rows;
  for (const ExperimentResult& result : results)
    all_rows.insert(all_rows.end(), result.rows.begin(), result.rows.end());

  const std::map<std::string, std::string> inputs{
      {"corpus", config.paths.corpus}, {"lexicon", config.paths.lexicon}};
  const std::string params = params_json(
      {{"command", "compare"},
       {"n_samples", config.eval.n_samples},
       {"eval_seed", config.eval.seed},
       {"ontology_seed", config.ontology.seed}});

  write_artifact((fs::path(out_dir) / "metrics.tsv").string(),
                 metrics_to_tsv(all_rows), inputs, params);
  write_artifact((fs::path(out_dir) / "summary.tsv").string(),
                 summary_to_tsv(results), inputs, params);

  warn_zero_vectors();
  std::cout << summary_to_tsv(results);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic VSM forum recommender pipeline"};
  app.require_subcommand(1);

  CommonOpts opts;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate and cache a corpus file");
  std::string ingest_input, ingest_out;
  ingest->add_option("--input", ingest_input, "raw posts JSONL")->required();
  ingest->add_option("--out", ingest_out, "corpus cache path")->required();

  // preprocess
  auto* preprocess =
      app.add_subcommand("preprocess", "build the stemmed vocabulary");
  std::string preprocess_out;
  preprocess->add_option("--config", opts.config_path, "pipeline config JSON");
  preprocess->add_option("--corpus", opts.config.paths.corpus, "corpus path");
  preprocess->add_option("--stopwords", opts.config.paths.stopwords, "stopword list");
  preprocess->add_option("--boilerplate", opts.config.paths.boilerplate,
                         "forum boilerplate list");
  preprocess->add_option("--max-df", opts.config.preprocess.max_df_ratio,
                         "document-frequency cutoff ratio");
  preprocess->add_option("--out", preprocess_out, "vocabulary artifact")->required();

  // lexicon check
  auto* lexicon = app.add_subcommand("lexicon", "lexical database utilities");
  auto* lexicon_check = lexicon->add_subcommand("check", "parse and validate");
  std::string lexicon_path, lexicon_format = "wordnet-db";
  lexicon_check->add_option("--path", lexicon_path, "database path")->required();
  lexicon_check->add_option("--format", lexicon_format, "wordnet-db | mini-tsv");

  // ontology build
  auto* ontology = app.add_subcommand("ontology", "ontology construction");
  auto* ontology_build = ontology->add_subcommand("build", "build one ontology");
  std::string ontology_out;
  ontology_build->add_option("--config", opts.config_path, "pipeline config JSON");
  ontology_build->add_option("--method", opts.config.ontology.method,
                             "1 cluster-hypernym, 2 cluster-gloss, 3 direct");
  ontology_build->add_option("--corpus", opts.config.paths.corpus, "corpus path");
  ontology_build->add_option("--lexicon", opts.config.paths.lexicon, "lexicon path");
  ontology_build->add_option("--lexicon-format", opts.config.paths.lexicon_format,
                             "wordnet-db | mini-tsv");
  ontology_build->add_option("--stopwords", opts.config.paths.stopwords, "stopword list");
  ontology_build->add_option("--boilerplate", opts.config.paths.boilerplate,
                             "boilerplate list");
  ontology_build->add_option("--rank", opts.config.ontology.rank, "LSI rank");
  ontology_build->add_option("--k-top", opts.config.ontology.k_top, "top-level clusters");
  ontology_build->add_option("--k-sub", opts.config.ontology.k_sub, "sub-clusters");
  ontology_build->add_option("--seed", opts.config.ontology.seed, "clustering seed");
  ontology_build->add_option("--min-freq", opts.config.ontology.min_freq,
                             "relation frequency floor");
  ontology_build->add_option("--max-df", opts.config.preprocess.max_df_ratio,
                             "document-frequency cutoff ratio");
  ontology_build->add_option("--out", ontology_out, "ontology artifact")->required();

  // recommend
  auto* recommend = app.add_subcommand("recommend", "write ranked recommendations");
  std::string recommend_ontology, recommend_out, recommend_scores;
  recommend->add_option("--config", opts.config_path, "pipeline config JSON");
  recommend->add_option("--method", opts.config.recommend.method,
                        "simple | proposed | shoval");
  recommend->add_option("--corpus", opts.config.paths.corpus, "corpus path");
  recommend->add_option("--stopwords", opts.config.paths.stopwords, "stopword list");
  recommend->add_option("--boilerplate", opts.config.paths.boilerplate,
                        "boilerplate list");
  recommend->add_option("--ontology", recommend_ontology, "ontology artifact");
  recommend->add_option("--alpha", opts.config.recommend.coeffs.alpha,
                        "brother coefficient");
  recommend->add_option("--beta", opts.config.recommend.coeffs.beta,
                        "father coefficient");
  recommend->add_option("--gamma", opts.config.recommend.coeffs.gamma,
                        "grandfather coefficient");
  recommend->add_option("--scores", recommend_scores,
                        "shoval scores a,b,c,d,e");
  recommend->add_option("--out", recommend_out, "recommendation file")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "run one configured experiment");
  std::string eval_out_dir = ".";
  evaluate->add_option("--config", opts.config_path, "pipeline config JSON")
      ->required();
  evaluate->add_option("--out-dir", eval_out_dir, "metrics output directory");

  // compare
  auto* compare = app.add_subcommand("compare", "run the experiment matrix");
  bool compare_all = false;
  std::string compare_out_dir = ".";
  std::size_t compare_threads = 0;
  compare->add_flag("--all", compare_all, "run all seven experiments");
  compare->add_option("--config", opts.config_path, "pipeline config JSON")
      ->required();
  compare->add_option("--out-dir", compare_out_dir, "output directory");
  compare->add_option("--threads", compare_threads, "evaluation threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return run_ingest(ingest_input, ingest_out);

    // flag values already written into opts.config fields win over the file
    PipelineConfig flag_values = opts.config;
    opts.load();
    auto merge = [](std::string& target, const std::string& flag_value) {
      if (!flag_value.empty()) target = flag_value;
    };

    if (*preprocess) {
      merge(opts.config.paths.corpus, flag_values.paths.corpus);
      merge(opts.config.paths.stopwords, flag_values.paths.stopwords);
      merge(opts.config.paths.boilerplate, flag_values.paths.boilerplate);
      if (preprocess->count("--max-df"))
        opts.config.preprocess.max_df_ratio = flag_values.preprocess.max_df_ratio;
      return run_preprocess(opts.config, preprocess_out);
    }
    if (*lexicon_check) return run_lexicon_check(lexicon_path, lexicon_format);
    if (*ontology_build) {
      merge(opts.config.paths.corpus, flag_values.paths.corpus);
      merge(opts.config.paths.lexicon, flag_values.paths.lexicon);
      merge(opts.config.paths.stopwords, flag_values.paths.stopwords);
      merge(opts.config.paths.boilerplate, flag_values.paths.boilerplate);
      if (ontology_build->count("--lexicon-format"))
        opts.config.paths.lexicon_format = flag_values.paths.lexicon_format;
      if (ontology_build->count("--method"))
        opts.config.ontology.method = flag_values.ontology.method;
      if (ontology_build->count("--rank"))
        opts.config.ontology.rank = flag_values.ontology.rank;
      if (ontology_build->count("--k-top"))
        opts.config.ontology.k_top = flag_values.ontology.k_top;
      if (ontology_build->count("--k-sub"))
        opts.config.ontology.k_sub = flag_values.ontology.k_sub;
      if (ontology_build->count("--seed"))
        opts.config.ontology.seed = flag_values.ontology.seed;
      if (ontology_build->count("--min-freq"))
        opts.config.ontology.min_freq = flag_values.ontology.min_freq;
      if (ontology_build->count("--max-df"))
        opts.config.preprocess.max_df_ratio = flag_values.preprocess.max_df_ratio;
      return run_ontology_build(opts.config, ontology_out);
    }
    if (*recommend) {
      merge(opts.config.paths.corpus, flag_values.paths.corpus);
      merge(opts.config.paths.stopwords, flag_values.paths.stopwords);
      merge(opts.config.paths.boilerplate, flag_values.paths.boilerplate);
      if (recommend->count("--method"))
        opts.config.recommend.method = flag_values.recommend.method;
      if (recommend->count("--alpha"))
        opts.config.recommend.coeffs.alpha = flag_values.recommend.coeffs.alpha;
      if (recommend->count("--beta"))
        opts.config.recommend.coeffs.beta = flag_values.recommend.coeffs.beta;
      if (recommend->count("--gamma"))
        opts.config.recommend.coeffs.gamma = flag_values.recommend.coeffs.gamma;
      if (!recommend_scores.empty()) {
        std::vector<std::string> parts = split(recommend_scores, ',');
        if (parts.size() != 5)
          throw config_error("--scores expects five comma-separated values");
        opts.config.recommend.shoval = {std::stod(parts[0]), std::stod(parts[1]),
                                        std::stod(parts[2]), std::stod(parts[3]),
                                        std::stod(parts[4])};
      }
      return run_recommend(opts.config, recommend_ontology, recommend_out);
    }
    if (*evaluate) return run_evaluate(opts.config, eval_out_dir);
    if (*compare) {
      if (!compare_all)
        throw config_error("compare currently requires --all");
      if (compare_threads > 0) opts.config.eval.threads = compare_threads;
      return run_compare(opts.config, compare_out_dir);
    }
  } catch (const config_error& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const data_error& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "error: numeric: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

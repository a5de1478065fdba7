#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semrec/corpus.hpp"
#include "semrec/eval.hpp"
#include "semrec/ontology.hpp"
#include "semrec/recommend.hpp"
#include "semrec/textproc.hpp"
#include "semrec/vectorspace.hpp"
#include "semrec/wordnet.hpp"

namespace semrec {

// Declarative run configuration; a JSON document mirrors these fields and
// individual CLI flags override them.
struct PipelineConfig {
  struct Paths {
    std::string corpus;
    std::string lexicon;
    std::string lexicon_format = "mini-tsv";
    std::string stopwords;
    std::string boilerplate;
    std::string output_dir = ".";
  } paths;

  struct Preprocess {
    double max_df_ratio = 0.5;
  } preprocess;

  struct OntologyParams {
    int method = 1;  // 1 cluster-hypernym, 2 cluster-gloss, 3 direct
    std::size_t rank = 2;
    std::size_t k_top = 2;
    std::size_t k_sub = 2;
    std::uint64_t min_freq = 10;
    std::uint64_t seed = 0;
    bool include_oov = true;
  } ontology;

  struct RecommendParams {
    std::string method = "simple";  // simple | proposed | shoval
    EnrichCoefficients coeffs;
    ShovalScores shoval;
  } recommend;

  struct EvalParams {
    std::size_t min_user_posts = 10;
    std::size_t n_samples = 35;
    std::uint64_t seed = 0;
    bool exclude_seen = false;
    bool per_user_mean = false;
    std::size_t threads = 1;
  } eval;

  static PipelineConfig from_json_file(const std::string& path);
  static PipelineConfig from_json(const std::string& text);
  void validate_paths(bool lexicon_required) const;
};

// Artifacts derived from one corpus + lexicon, built once and shared by the
// experiments. Discussions whose every token is filtered out are excluded
// from the item set and reported in `warnings`.
struct Workspace {
  Corpus corpus;
  TextFilters filters;
  Vocabulary vocabulary;
  std::vector<Profile> item_profiles;
  IdfTable idf;
  ItemVectors item_vectors;
  std::optional<Lexicon> lexicon;
  std::vector<std::string> warnings;

  static Workspace build(const PipelineConfig& config, bool load_lexicon);

  Profile user_profile(const std::string& user_id) const;
  WeightedVector user_vector(const std::string& user_id) const;
  Ontology build_ontology(const PipelineConfig& config, int method) const;
};

// One of the seven method/ontology pairings.
struct ExperimentSpec {
  std::string id;
  std::string method;  // simple | proposed | shoval
  int ontology_method = 0;  // 0 = none
};

const std::vector<ExperimentSpec>& all_experiments();

Recommender make_recommender(const Workspace& workspace,
                             const PipelineConfig& config,
                             const std::string& method,
                             const Ontology* ontology);

// Runs every experiment of the comparison matrix and returns results in
// matrix order (summary sorting happens at serialization time).
std::vector<ExperimentResult> run_all_experiments(const PipelineConfig& config,
                                                  const Workspace& workspace);

// Writes `content` atomically and drops a sibling manifest recording input
// digests, parameters and the output digest, so artifacts can be reproduced
// and verified byte for byte.
void write_artifact(const std::string& path, const std::string& content,
                    const std::map<std::string, std::string>& input_files,
                    const std::string& params_json);

}  // namespace semrec

#pragma once

#include <map>
#include <string>
#include <vector>

#include "semrec/ontology.hpp"
#include "semrec/vectorspace.hpp"

namespace semrec {

// Concept weights for one user or item; keys are concept labels, which are
// unique across a deduplicated tree. N values come from profile weights.
struct ConceptProfile {
  std::map<std::string, double> concepts;
};

struct ScoredItem {
  std::string item_id;
  double score = 0.0;
};

// Ranked per-user recommendations: scores non-increasing, ties broken by
// ascending item id, item ids unique.
struct RecommendationList {
  std::string user_id;
  std::vector<ScoredItem> ranked;
};

// Relation weights of the hierarchical similarity measure: same concept,
// item-parent-of-user, item-child-of-user, grandparent, grandchild.
struct ShovalScores {
  double a = 1.0;
  double b = 0.8;
  double c = 0.4;
  double d = 0.0;
  double e = 0.2;
};

// All labels a profile term can map onto: node labels for tree-backed
// ontologies, keys plus relation targets for relation-map-only ones.
std::set<std::string> concept_universe(const Ontology& ontology);

// Profile terms that name a concept keep their weight; the rest are dropped.
// Tree-backed ontologies match node labels; relation-map ontologies match any
// term known to the relation map (as a key or as a relation target).
ConceptProfile map_profile_to_concepts(const Profile& profile,
                                       const Ontology& ontology);
ConceptProfile map_profile_to_concepts(const Profile& profile,
                                       const std::set<std::string>& universe);

// IS = sum_i N_i * S_i / sum_j N_j over item concepts i and user concepts j,
// with S_i the best relation score between i and any user concept. An empty
// user concept profile scores 0.
double shoval_similarity(const ConceptProfile& user_concepts,
                         const ConceptProfile& item_concepts,
                         const Ontology& ontology, const ShovalScores& scores);

using ItemVectors = std::vector<std::pair<std::string, WeightedVector>>;
using ItemProfiles = std::vector<Profile>;

RecommendationList recommend_simple(const std::string& user_id,
                                    const WeightedVector& user_vector,
                                    const ItemVectors& items);

RecommendationList recommend_proposed(const std::string& user_id,
                                      const WeightedVector& user_vector,
                                      const ItemVectors& items,
                                      const Ontology& ontology,
                                      const IdfTable& idf,
                                      const EnrichCoefficients& coeffs);

RecommendationList recommend_shoval(const std::string& user_id,
                                    const Profile& user_profile,
                                    const ItemProfiles& items,
                                    const Ontology& ontology,
                                    const ShovalScores& scores);

// Lines `user<TAB>rank<TAB>item<TAB>score` with scores at 9 decimal places.
std::string recommendations_to_tsv(const std::vector<RecommendationList>& lists);

}  // namespace semrec

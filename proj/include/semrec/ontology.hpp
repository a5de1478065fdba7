#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semrec/lsi.hpp"
#include "semrec/relations.hpp"
#include "semrec/textproc.hpp"
#include "semrec/vectorspace.hpp"
#include "semrec/wordnet.hpp"

namespace semrec {

// Three-level concept tree. Level 1 is the top; every deeper node points at a
// parent one level up. After dedupe_levels labels are unique per level.
struct ConceptTree {
  struct Node {
    std::string label;
    int level = 1;    // 1..3
    int parent = -1;  // index into nodes, -1 for level-1 nodes
  };
  std::vector<Node> nodes;

  bool empty() const { return nodes.empty(); }
  // index of the node carrying this label, or -1 (unique post-dedup)
  int find(const std::string& label) const;
  std::vector<int> children_of(int index) const;
};

enum class OntologyKind { ClusterHypernym, ClusterGloss, DirectRelations };

std::string to_string(OntologyKind kind);
OntologyKind ontology_kind_from_string(const std::string& s);

struct Ontology {
  OntologyKind kind = OntologyKind::DirectRelations;
  ConceptTree tree;       // empty for relation-map-only ontologies
  RelationMap relations;

  std::string to_json() const;
  static Ontology from_json(const std::string& text);
};

// Brothers, fathers and grandfathers read off the tree: co-children of the
// parent, the parent label, the grandparent label. Entries whose three sets
// are all empty are omitted.
RelationMap relations_from_tree(const ConceptTree& tree);

// Removes duplicate labels: copies within one level merge; a label present at
// several levels keeps the deepest copy unless removing the shallower one
// would orphan children, in which case the deeper copy goes instead.
ConceptTree dedupe_levels(ConceptTree tree);

// Highest-weighted stems of the cluster centroid (mean of the given sparse
// TF-IDF rows), ties broken lexicographically. Fewer than m available terms
// returns them all.
std::vector<std::string> top_keywords(
    const std::vector<const std::map<std::string, double>*>& member_rows,
    std::size_t m = 3);

struct ClusterOntologyParams {
  std::size_t rank = 2;
  std::size_t k_top = 2;
  std::size_t k_sub = 2;
  std::uint64_t seed = 0;
};

enum class Enrichment { Hypernym, GlossNoun };

// Two-stage clustering pipeline: TF-IDF -> LSI -> k-means over items for the
// top level, k-means within each top cluster for the second level, lexicon
// enrichment (hypernyms or gloss nouns) for the third, then level dedup.
Ontology build_cluster_ontology(const std::vector<Profile>& item_profiles,
                                const IdfTable& idf,
                                const Lexicon& lexicon,
                                const ClusterOntologyParams& params,
                                Enrichment enrichment,
                                const std::set<std::string>& stopwords);

// Relation-map ontology taken straight from the lexicon: in-vocabulary
// synonyms as brothers, one- and two-step hypernyms as fathers and
// grandfathers. In-vocabulary relation terms must reach min_freq corpus
// occurrences; out-of-vocabulary hypernyms are kept when include_oov is set.
Ontology build_direct_ontology(const Vocabulary& vocab, const Lexicon& lexicon,
                               std::uint64_t min_freq = 10,
                               bool include_oov = true);

// Items-by-terms TF-IDF matrix feeding LSI; columns are vocabulary term ids.
SparseMatrix tfidf_matrix(const std::vector<Profile>& item_profiles,
                          const IdfTable& idf, const Vocabulary& vocab);

struct ClusterSeparation {
  std::size_t k = 0;
  double mean_intercentroid_distance = 0.0;  // mean pairwise cosine distance
};

// Reports cluster separation for each k in [k_min, k_max] so a caller can
// choose the cluster count; nothing is committed automatically. k values
// beyond the number of distinct rows are skipped.
std::vector<ClusterSeparation> scan_cluster_counts(
    const std::vector<std::vector<double>>& coords, std::size_t k_min,
    std::size_t k_max, std::uint64_t seed);

}  // namespace semrec

#include "semrec/ontology.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "semrec/common.hpp"
#include "semrec/kmeans.hpp"

namespace semrec {

using nlohmann::json;

int ConceptTree::find(const std::string& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].label == label) return static_cast<int>(i);
  return -1;
}

std::vector<int> ConceptTree::children_of(int index) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent == index) out.push_back(static_cast<int>(i));
  return out;
}

std::string to_string(OntologyKind kind) {
  switch (kind) {
    case OntologyKind::ClusterHypernym: return "cluster-hypernym";
    case OntologyKind::ClusterGloss: return "cluster-gloss";
    case OntologyKind::DirectRelations: return "direct-relations";
  }
  return "direct-relations";
}

OntologyKind ontology_kind_from_string(const std::string& s) {
  if (s == "cluster-hypernym") return OntologyKind::ClusterHypernym;
  if (s == "cluster-gloss") return OntologyKind::ClusterGloss;
  if (s == "direct-relations") return OntologyKind::DirectRelations;
  throw data_error("unknown ontology kind: " + s);
}

RelationMap relations_from_tree(const ConceptTree& tree) {
  RelationMap map;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    TermRelations rel;
    if (node.parent >= 0) {
      const auto& parent = tree.nodes[node.parent];
      if (parent.label != node.label) rel.fathers.insert(parent.label);
      for (int sibling : tree.children_of(node.parent)) {
        if (sibling == static_cast<int>(i)) continue;
        if (tree.nodes[sibling].label != node.label)
          rel.brothers.insert(tree.nodes[sibling].label);
      }
      if (parent.parent >= 0) {
        const auto& grand = tree.nodes[parent.parent];
        if (grand.label != node.label) rel.grandfathers.insert(grand.label);
      }
    }
    if (!rel.empty()) map[node.label] = std::move(rel);
  }
  return map;
}

namespace {

// Removes the nodes at `roots` together with their whole subtrees.
void remove_subtrees(ConceptTree& tree, const std::vector<int>& roots) {
  std::vector<bool> doomed(tree.nodes.size(), false);
  for (int index : roots) doomed[index] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      int p = tree.nodes[i].parent;
      if (!doomed[i] && p >= 0 && doomed[p]) {
        doomed[i] = true;
        grew = true;
      }
    }
  }
  // compact while remapping parent indices
  std::vector<int> remap(tree.nodes.size(), -1);
  std::vector<ConceptTree::Node> kept;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (doomed[i]) continue;
    remap[i] = static_cast<int>(kept.size());
    kept.push_back(tree.nodes[i]);
  }
  for (auto& node : kept)
    if (node.parent >= 0) node.parent = remap[node.parent];
  tree.nodes = std::move(kept);
}

void merge_within_levels(ConceptTree& tree) {
  for (int level = 1; level <= 3; ++level) {
    // label -> surviving node index; survivor has the smallest parent label
    std::map<std::string, int> survivor;
    auto parent_label = [&](int idx) {
      int p = tree.nodes[idx].parent;
      return p < 0 ? std::string() : tree.nodes[p].label;
    };
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (tree.nodes[i].level != level) continue;
      auto [it, inserted] = survivor.try_emplace(tree.nodes[i].label,
                                                 static_cast<int>(i));
      if (!inserted && parent_label(static_cast<int>(i)) < parent_label(it->second))
        it->second = static_cast<int>(i);
    }
    std::vector<bool> doomed(tree.nodes.size(), false);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (tree.nodes[i].level != level) continue;
      int keep = survivor.at(tree.nodes[i].label);
      if (keep != static_cast<int>(i)) doomed[i] = true;
    }
    // re-parent children of merged duplicates onto the survivor
    for (auto& node : tree.nodes) {
      if (node.parent >= 0 && doomed[node.parent])
        node.parent = survivor.at(tree.nodes[node.parent].label);
    }
    std::vector<int> remap(tree.nodes.size(), -1);
    std::vector<ConceptTree::Node> kept;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (doomed[i]) continue;
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(tree.nodes[i]);
    }
    for (auto& node : kept)
      if (node.parent >= 0) node.parent = remap[node.parent];
    tree.nodes = std::move(kept);
  }
}

}  // namespace

ConceptTree dedupe_levels(ConceptTree tree) {
  // Cross-level duplicates first: the deeper copy wins unless removing the
  // shallower one would orphan children, in which case the deeper copies go.
  while (true) {
    std::map<std::string, std::map<int, std::vector<int>>> occurrences;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
      occurrences[tree.nodes[i].label][tree.nodes[i].level].push_back(
          static_cast<int>(i));

    bool removed = false;
    for (const auto& [label, by_level] : occurrences) {
      if (by_level.size() < 2) continue;
      const auto& shallow_group = by_level.begin()->second;
      const int shallow_level = by_level.begin()->first;
      bool shallow_has_children = false;
      for (int idx : shallow_group)
        if (!tree.children_of(idx).empty()) shallow_has_children = true;

      std::vector<int> targets;
      if (shallow_has_children) {
        for (const auto& [level, group] : by_level)
          if (level != shallow_level)
            targets.insert(targets.end(), group.begin(), group.end());
      } else {
        targets = shallow_group;
      }
      remove_subtrees(tree, targets);
      removed = true;
      break;  // rescan with fresh indices
    }
    if (!removed) break;
  }

  merge_within_levels(tree);
  return tree;
}

std::vector<std::string> top_keywords(
    const std::vector<const std::map<std::string, double>*>& member_rows,
    std::size_t m) {
  if (member_rows.empty()) throw data_error("top_keywords: empty cluster");
  std::map<std::string, double> centroid;
  for (const auto* row : member_rows)
    for (const auto& [term, w] : *row) centroid[term] += w;

  std::vector<std::pair<std::string, double>> ranked(centroid.begin(),
                                                     centroid.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < m; ++i)
    out.push_back(ranked[i].first);
  return out;
}

SparseMatrix tfidf_matrix(const std::vector<Profile>& item_profiles,
                          const IdfTable& idf, const Vocabulary& vocab) {
  SparseMatrix matrix;
  matrix.n_rows = item_profiles.size();
  matrix.n_cols = vocab.terms.size();
  matrix.rows.resize(matrix.n_rows);
  for (std::size_t i = 0; i < item_profiles.size(); ++i) {
    for (const auto& [term, weight] : item_profiles[i].weights) {
      const TermInfo* info = vocab.find(term);
      if (!info) continue;
      const double w = weight * idf.value(term);
      if (w != 0.0) matrix.rows[i].push_back({info->term_id, w});
    }
    std::sort(matrix.rows[i].begin(), matrix.rows[i].end());
  }
  return matrix;
}

Ontology build_cluster_ontology(const std::vector<Profile>& item_profiles,
                                const IdfTable& idf,
                                const Lexicon& lexicon,
                                const ClusterOntologyParams& params,
                                Enrichment enrichment,
                                const std::set<std::string>& stopwords) {
  if (item_profiles.empty())
    throw data_error("build_cluster_ontology: no item profiles");

  // TF-IDF rows keyed by stem, for keyword extraction
  std::vector<std::map<std::string, double>> tfidf_rows(item_profiles.size());
  for (std::size_t i = 0; i < item_profiles.size(); ++i)
    for (const auto& [term, weight] : item_profiles[i].weights) {
      const double w = weight * idf.value(term);
      if (w != 0.0) tfidf_rows[i][term] = w;
    }

  // vocabulary view for the matrix columns: stems present in the idf table
  Vocabulary matrix_vocab;
  std::uint32_t next_id = 0;
  for (const auto& [term, value] : idf.entries())
    matrix_vocab.terms[term] = TermInfo{next_id++, 0, 0};

  SparseMatrix matrix = tfidf_matrix(item_profiles, idf, matrix_vocab);
  LsiProjection projection = lsi_project(matrix, params.rank);

  KmeansResult top = kmeans(projection.coords, params.k_top, params.seed);

  ConceptTree tree;
  for (std::size_t c = 0; c < params.k_top; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < item_profiles.size(); ++i)
      if (top.assignment[i] == c) members.push_back(i);
    if (members.empty()) continue;

    std::vector<const std::map<std::string, double>*> member_rows;
    for (std::size_t i : members) member_rows.push_back(&tfidf_rows[i]);
    const std::vector<std::string> level1 = top_keywords(member_rows, 3);
    if (level1.empty()) continue;

    std::map<std::string, int> level1_index;
    for (const std::string& label : level1) {
      if (level1_index.count(label)) continue;
      level1_index[label] = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({label, 1, -1});
    }

    // sub-cluster the members; k is clamped to the number of distinct rows
    std::vector<std::vector<double>> member_coords;
    for (std::size_t i : members) member_coords.push_back(projection.coords[i]);
    std::set<std::vector<double>> distinct(member_coords.begin(),
                                           member_coords.end());
    const std::size_t k_sub =
        std::max<std::size_t>(1, std::min(params.k_sub, distinct.size()));
    KmeansResult sub = kmeans(member_coords, k_sub, params.seed + c + 1);

    for (std::size_t s = 0; s < k_sub; ++s) {
      std::vector<const std::map<std::string, double>*> sub_rows;
      std::map<std::string, double> sub_centroid;
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (sub.assignment[j] != s) continue;
        sub_rows.push_back(&tfidf_rows[members[j]]);
        for (const auto& [term, w] : tfidf_rows[members[j]])
          sub_centroid[term] += w;
      }
      if (sub_rows.empty()) continue;

      // parent: the enclosing cluster's level-1 keyword weighing most in this
      // sub-cluster's centroid, ties to the lexicographically smallest
      std::string parent_label = level1.front();
      double best = -1.0;
      for (const auto& [label, index] : level1_index) {
        auto it = sub_centroid.find(label);
        const double w = it == sub_centroid.end() ? 0.0 : it->second;
        if (w > best) {
          best = w;
          parent_label = label;
        }
      }
      const int parent_index = level1_index.at(parent_label);

      for (const std::string& keyword : top_keywords(sub_rows, 3)) {
        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({keyword, 2, parent_index});

        std::set<std::string> enrich_terms =
            enrichment == Enrichment::Hypernym
                ? lexicon.hypernyms(keyword, 1)
                : lexicon.gloss_nouns(keyword, stopwords);
        for (const std::string& term : enrich_terms)
          tree.nodes.push_back({term, 3, node_index});
      }
    }
  }

  Ontology ontology;
  ontology.kind = enrichment == Enrichment::Hypernym
                      ? OntologyKind::ClusterHypernym
                      : OntologyKind::ClusterGloss;
  ontology.tree = dedupe_levels(std::move(tree));
  ontology.relations = relations_from_tree(ontology.tree);
  return ontology;
}

std::vector<ClusterSeparation> scan_cluster_counts(
    const std::vector<std::vector<double>>& coords, std::size_t k_min,
    std::size_t k_max, std::uint64_t seed) {
  if (k_min < 1 || k_min > k_max)
    throw config_error("scan_cluster_counts: need 1 <= k_min <= k_max");
  std::set<std::vector<double>> distinct(coords.begin(), coords.end());

  std::vector<ClusterSeparation> out;
  for (std::size_t k = k_min; k <= std::min(k_max, distinct.size()); ++k) {
    KmeansResult result = kmeans(coords, k, seed);
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        double dot = 0.0;
        for (std::size_t d = 0; d < result.centroids[a].size(); ++d)
          dot += result.centroids[a][d] * result.centroids[b][d];
        total += 1.0 - dot;
        ++pairs;
      }
    out.push_back({k, pairs ? total / static_cast<double>(pairs) : 0.0});
  }
  return out;
}

Ontology build_direct_ontology(const Vocabulary& vocab, const Lexicon& lexicon,
                               std::uint64_t min_freq, bool include_oov) {
  if (vocab.terms.empty())
    throw data_error("build_direct_ontology: empty vocabulary");

  Ontology ontology;
  ontology.kind = OntologyKind::DirectRelations;

  auto admissible_sibling = [&](const std::string& related) {
    const TermInfo* info = vocab.find(related);
    return info && info->corpus_frequency >= min_freq;
  };
  auto admit_vertical = [&](const std::string& related,
                            std::set<std::string>& target) {
    const TermInfo* info = vocab.find(related);
    if (info) {
      if (info->corpus_frequency >= min_freq) target.insert(related);
    } else if (include_oov) {
      target.insert(related);
    }
  };

  for (const auto& [term, info] : vocab.terms) {
    TermRelations rel;
    for (const std::string& s : lexicon.synonyms(term))
      if (s != term && admissible_sibling(s)) rel.brothers.insert(s);
    for (const std::string& h : lexicon.hypernyms(term, 1))
      if (h != term) admit_vertical(h, rel.fathers);
    for (const std::string& g : lexicon.hypernyms(term, 2))
      if (g != term) admit_vertical(g, rel.grandfathers);
    if (!rel.empty()) ontology.relations[term] = std::move(rel);
  }
  return ontology;
}

std::string Ontology::to_json() const {
  json doc;
  doc["kind"] = to_string(kind);

  std::array<std::set<std::string>, 3> levels;
  for (const auto& node : tree.nodes)
    levels[static_cast<std::size_t>(node.level - 1)].insert(node.label);
  json levels_json = json::array();
  for (const auto& level : levels)
    levels_json.push_back(std::vector<std::string>(level.begin(), level.end()));
  doc["levels"] = levels_json;

  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& node : tree.nodes)
    if (node.parent >= 0)
      edges.insert({node.label, tree.nodes[node.parent].label});
  json edges_json = json::array();
  for (const auto& [child, parent] : edges)
    edges_json.push_back(std::vector<std::string>{child, parent});
  doc["edges"] = edges_json;

  json rel_json = json::object();
  for (const auto& [term, rel] : relations) {
    rel_json[term] = {
        {"brothers", std::vector<std::string>(rel.brothers.begin(), rel.brothers.end())},
        {"fathers", std::vector<std::string>(rel.fathers.begin(), rel.fathers.end())},
        {"grandfathers",
         std::vector<std::string>(rel.grandfathers.begin(), rel.grandfathers.end())}};
  }
  doc["relations"] = rel_json;
  return doc.dump(2) + "\n";
}

Ontology Ontology::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw data_error(std::string("malformed ontology file: ") + e.what());
  }

  Ontology ontology;
  ontology.kind = ontology_kind_from_string(doc.at("kind").get<std::string>());

  const auto levels = doc.at("levels");
  if (!levels.is_array() || levels.size() != 3)
    throw data_error("ontology file: levels must hold three arrays");

  std::map<std::pair<int, std::string>, int> index;
  for (int level = 1; level <= 3; ++level) {
    for (const auto& label : levels[static_cast<std::size_t>(level - 1)]) {
      const std::string l = label.get<std::string>();
      if (index.count({level, l}))
        throw data_error("ontology file: duplicate label in level " +
                         std::to_string(level) + ": " + l);
      index[{level, l}] = static_cast<int>(ontology.tree.nodes.size());
      ontology.tree.nodes.push_back({l, level, -1});
    }
  }

  for (const auto& edge : doc.at("edges")) {
    const std::string child = edge.at(0).get<std::string>();
    const std::string parent = edge.at(1).get<std::string>();
    int child_index = -1, parent_index = -1;
    for (int level = 2; level <= 3 && child_index < 0; ++level) {
      auto it = index.find({level, child});
      if (it != index.end()) {
        child_index = it->second;
        auto pit = index.find({level - 1, parent});
        if (pit != index.end()) parent_index = pit->second;
      }
    }
    if (child_index < 0 || parent_index < 0)
      throw data_error("ontology file: edge (" + child + ", " + parent +
                       ") does not connect adjacent levels");
    ontology.tree.nodes[static_cast<std::size_t>(child_index)].parent =
        parent_index;
  }
  for (const auto& node : ontology.tree.nodes)
    if (node.level > 1 && node.parent < 0)
      throw data_error("ontology file: node without parent: " + node.label);

  for (const auto& [term, rel] : doc.at("relations").items()) {
    TermRelations r;
    for (const auto& b : rel.at("brothers")) r.brothers.insert(b.get<std::string>());
    for (const auto& f : rel.at("fathers")) r.fathers.insert(f.get<std::string>());
    for (const auto& g : rel.at("grandfathers"))
      r.grandfathers.insert(g.get<std::string>());
    ontology.relations[term] = std::move(r);
  }

  if (!ontology.tree.empty() &&
      relations_from_tree(ontology.tree) != ontology.relations)
    throw data_error("ontology file: relations do not match the tree");
  return ontology;
}

}  // namespace semrec

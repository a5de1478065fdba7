#include "semrec/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "semrec/common.hpp"

namespace semrec {

namespace {

void rank(RecommendationList& list) {
  std::sort(list.ranked.begin(), list.ranked.end(),
            [](const ScoredItem& x, const ScoredItem& y) {
              if (x.score != y.score) return x.score > y.score;
              return x.item_id < y.item_id;
            });
}

void validate(const ShovalScores& s) {
  for (double v : {s.a, s.b, s.c, s.d, s.e})
    if (v < 0.0 || v > 1.0)
      throw config_error("shoval scores must lie in [0, 1]");
  if (!(s.a >= s.b && s.b >= s.c && s.a >= s.e))
    throw config_error("shoval scores must satisfy a >= b >= c and a >= e");
}

}  // namespace

std::set<std::string> concept_universe(const Ontology& ontology) {
  std::set<std::string> universe;
  if (!ontology.tree.empty()) {
    for (const auto& node : ontology.tree.nodes) universe.insert(node.label);
    return universe;
  }
  for (const auto& [term, rel] : ontology.relations) {
    universe.insert(term);
    universe.insert(rel.brothers.begin(), rel.brothers.end());
    universe.insert(rel.fathers.begin(), rel.fathers.end());
    universe.insert(rel.grandfathers.begin(), rel.grandfathers.end());
  }
  return universe;
}

ConceptProfile map_profile_to_concepts(const Profile& profile,
                                       const std::set<std::string>& universe) {
  ConceptProfile out;
  for (const auto& [term, weight] : profile.weights)
    if (universe.count(term)) out.concepts[term] = weight;
  return out;
}

ConceptProfile map_profile_to_concepts(const Profile& profile,
                                       const Ontology& ontology) {
  return map_profile_to_concepts(profile, concept_universe(ontology));
}

double shoval_similarity(const ConceptProfile& user_concepts,
                         const ConceptProfile& item_concepts,
                         const Ontology& ontology, const ShovalScores& scores) {
  validate(scores);

  double user_mass = 0.0;
  for (const auto& [label, weight] : user_concepts.concepts) user_mass += weight;
  if (user_mass <= 0.0) return 0.0;

  auto fathers_of = [&](const std::string& label) -> const std::set<std::string>* {
    auto it = ontology.relations.find(label);
    return it == ontology.relations.end() ? nullptr : &it->second.fathers;
  };
  auto grandfathers_of =
      [&](const std::string& label) -> const std::set<std::string>* {
    auto it = ontology.relations.find(label);
    return it == ontology.relations.end() ? nullptr : &it->second.grandfathers;
  };

  auto relation_score = [&](const std::string& item_c,
                            const std::string& user_c) {
    if (item_c == user_c) return scores.a;
    if (const auto* f = fathers_of(user_c); f && f->count(item_c))
      return scores.b;  // item concept one level above the user concept
    if (const auto* f = fathers_of(item_c); f && f->count(user_c))
      return scores.c;  // item concept one level below
    if (const auto* g = grandfathers_of(user_c); g && g->count(item_c))
      return scores.d;
    if (const auto* g = grandfathers_of(item_c); g && g->count(user_c))
      return scores.e;
    return 0.0;
  };

  double total = 0.0;
  for (const auto& [item_c, item_n] : item_concepts.concepts) {
    double best = 0.0;
    for (const auto& [user_c, user_n] : user_concepts.concepts)
      best = std::max(best, relation_score(item_c, user_c));
    total += item_n * best;
  }
  return total / user_mass;
}

RecommendationList recommend_simple(const std::string& user_id,
                                    const WeightedVector& user_vector,
                                    const ItemVectors& items) {
  if (items.empty()) throw data_error("recommend: no items");
  RecommendationList list;
  list.user_id = user_id;
  for (const auto& [item_id, vec] : items)
    list.ranked.push_back({item_id, cosine(user_vector, vec)});
  rank(list);
  return list;
}

RecommendationList recommend_proposed(const std::string& user_id,
                                      const WeightedVector& user_vector,
                                      const ItemVectors& items,
                                      const Ontology& ontology,
                                      const IdfTable& idf,
                                      const EnrichCoefficients& coeffs) {
  if (items.empty()) throw data_error("recommend: no items");
  const WeightedVector enriched =
      enrich(user_vector, ontology.relations, idf, coeffs);
  RecommendationList list;
  list.user_id = user_id;
  for (const auto& [item_id, vec] : items)
    list.ranked.push_back({item_id, sco(enriched, vec)});
  rank(list);
  return list;
}

RecommendationList recommend_shoval(const std::string& user_id,
                                    const Profile& user_profile,
                                    const ItemProfiles& items,
                                    const Ontology& ontology,
                                    const ShovalScores& scores) {
  if (items.empty()) throw data_error("recommend: no items");
  if (ontology.tree.empty() && ontology.relations.empty())
    throw config_error("recommend_shoval: ontology has no tree and no relations");

  const std::set<std::string> universe = concept_universe(ontology);
  const ConceptProfile user_concepts =
      map_profile_to_concepts(user_profile, universe);
  RecommendationList list;
  list.user_id = user_id;
  for (const Profile& item : items) {
    const ConceptProfile item_concepts = map_profile_to_concepts(item, universe);
    const double score =
        user_concepts.concepts.empty()
            ? 0.0
            : shoval_similarity(user_concepts, item_concepts, ontology, scores);
    list.ranked.push_back({item.owner, score});
  }
  rank(list);
  return list;
}

std::string recommendations_to_tsv(const std::vector<RecommendationList>& lists) {
  std::string out;
  char buf[64];
  for (const auto& list : lists) {
    std::size_t position = 1;
    for (const auto& item : list.ranked) {
      std::snprintf(buf, sizeof(buf), "%.9f", item.score);
      out += list.user_id;
      out += '\t';
      out += std::to_string(position++);
      out += '\t';
      out += item.item_id;
      out += '\t';
      out += buf;
      out += '\n';
    }
  }
  return out;
}

}  // namespace semrec

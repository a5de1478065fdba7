#pragma once

#include <map>
#include <string>
#include <vector>

#include "semrec/corpus.hpp"
#include "semrec/relations.hpp"
#include "semrec/textproc.hpp"

namespace semrec {

// Sparse term->weight map for one user or one discussion. All stored weights
// are positive; zero entries are absent.
struct Profile {
  std::string owner;
  std::map<std::string, double> weights;
};

// Eq.-style inverse document frequency table over the item set.
class IdfTable {
 public:
  IdfTable() = default;

  // idf(t) = log(n_items / df(t)) where df counts the item profiles
  // containing t. log_base defaults to e; rankings are base-invariant.
  static IdfTable build(const std::vector<Profile>& item_profiles,
                        double log_base = 0.0 /* 0 = natural log */);

  double value(const std::string& term) const {
    auto it = idf_.find(term);
    return it == idf_.end() ? 0.0 : it->second;
  }
  bool contains(const std::string& term) const { return idf_.count(term) > 0; }

  // Known terms give their table value; unknown terms get the idf of a term
  // occurring in a single item, which is what ontology enrichment assigns to
  // out-of-vocabulary relation targets.
  double value_or_synthetic(const std::string& term) const;

  std::size_t n_items() const { return n_items_; }
  const std::map<std::string, double>& entries() const { return idf_; }

 private:
  std::map<std::string, double> idf_;
  std::size_t n_items_ = 0;
  double log_scale_ = 1.0;  // 1/ln(base)
};

enum class VectorTag { BaseUser, Item, EnrichedUser, Brother, Father, Grandfather };

struct WeightedVector {
  std::map<std::string, double> entries;
  VectorTag tag = VectorTag::BaseUser;
};

struct EnrichCoefficients {
  double alpha = 0.8;  // brothers
  double beta = 0.4;   // fathers
  double gamma = 0.2;  // grandfathers
};

// Raw term frequencies of one discussion over the vocabulary. Throws
// data_error when every token of the discussion is filtered out.
Profile build_item_profile(const Discussion& discussion, const Vocabulary& vocab,
                           const TextFilters& filters);

// weight(t) = sum over discussions d the user posted in of
// posts(u, d) * tf(t, u's posts in d).
Profile build_user_profile(const std::string& user_id, const Corpus& corpus,
                           const Vocabulary& vocab, const TextFilters& filters);

WeightedVector tfidf_vector(const Profile& profile, const IdfTable& idf,
                            VectorTag tag);

// Cosine of two sparse non-negative vectors; zero vectors compare as 0 and
// bump the process-wide counter below instead of erroring.
double cosine(const WeightedVector& u, const WeightedVector& v);

// Number of similarity computations so far that involved an all-zero vector
// (heavily filtered users or items). Callers surface this as a warning.
std::uint64_t zero_vector_comparisons();

// Enriched user vector: base plus alpha/beta/gamma-scaled brother, father and
// grandfather vectors. A related term r of base term k contributes
// tf_user(k) * idf(r) at coordinate r, and only when r is outside the base
// support; existing coordinates are never modified.
WeightedVector enrich(const WeightedVector& base, const RelationMap& relations,
                      const IdfTable& idf, const EnrichCoefficients& coeffs);

// Similarity of an enriched user vector and an item vector; same contract as
// cosine.
double sco(const WeightedVector& enriched_user, const WeightedVector& item);

}  // namespace semrec

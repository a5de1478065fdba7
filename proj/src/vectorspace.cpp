#include "semrec/vectorspace.hpp"

#include <atomic>
#include <cmath>

#include "semrec/common.hpp"

namespace semrec {

namespace {
std::atomic<std::uint64_t> zero_vector_count{0};
}

std::uint64_t zero_vector_comparisons() { return zero_vector_count.load(); }

Profile build_item_profile(const Discussion& discussion, const Vocabulary& vocab,
                           const TextFilters& filters) {
  Profile profile;
  profile.owner = discussion.id;
  for (const std::string& stem : discussion_stems(discussion, filters))
    if (vocab.contains(stem)) profile.weights[stem] += 1.0;
  if (profile.weights.empty())
    throw data_error("empty item profile: " + discussion.id);
  return profile;
}

Profile build_user_profile(const std::string& user_id, const Corpus& corpus,
                           const Vocabulary& vocab, const TextFilters& filters) {
  if (!corpus.users.count(user_id))
    throw data_error("unknown user: " + user_id);

  Profile profile;
  profile.owner = user_id;
  for (const auto& [id, discussion] : corpus.discussions) {
    const std::uint32_t n_posts = corpus.posts_of(user_id, id);
    if (n_posts == 0) continue;
    std::map<std::string, double> tf;
    for (const Post& post : discussion.posts) {
      if (post.user_id != user_id) continue;
      for (const std::string& stem : post_stems(post, filters))
        if (vocab.contains(stem)) tf[stem] += 1.0;
    }
    for (const auto& [stem, count] : tf)
      profile.weights[stem] += static_cast<double>(n_posts) * count;
  }
  return profile;
}

IdfTable IdfTable::build(const std::vector<Profile>& item_profiles,
                         double log_base) {
  if (item_profiles.empty()) throw data_error("build_idf: no item profiles");
  IdfTable table;
  table.n_items_ = item_profiles.size();
  table.log_scale_ = log_base > 0.0 ? 1.0 / std::log(log_base) : 1.0;

  std::map<std::string, std::size_t> df;
  for (const Profile& item : item_profiles)
    for (const auto& [term, w] : item.weights) df[term] += 1;

  const double n = static_cast<double>(table.n_items_);
  for (const auto& [term, count] : df)
    table.idf_[term] =
        std::log(n / static_cast<double>(count)) * table.log_scale_;
  return table;
}

double IdfTable::value_or_synthetic(const std::string& term) const {
  auto it = idf_.find(term);
  if (it != idf_.end()) return it->second;
  return std::log(static_cast<double>(n_items_)) * log_scale_;
}

WeightedVector tfidf_vector(const Profile& profile, const IdfTable& idf,
                            VectorTag tag) {
  WeightedVector v;
  v.tag = tag;
  for (const auto& [term, weight] : profile.weights) {
    const double w = weight * idf.value(term);
    if (w != 0.0) v.entries[term] = w;
  }
  return v;
}

namespace {

double norm(const WeightedVector& v) {
  double s = 0.0;
  for (const auto& [term, w] : v.entries) s += w * w;
  return std::sqrt(s);
}

double dot(const WeightedVector& u, const WeightedVector& v) {
  const WeightedVector& small = u.entries.size() <= v.entries.size() ? u : v;
  const WeightedVector& large = u.entries.size() <= v.entries.size() ? v : u;
  double s = 0.0;
  for (const auto& [term, w] : small.entries) {
    auto it = large.entries.find(term);
    if (it != large.entries.end()) s += w * it->second;
  }
  return s;
}

}  // namespace

double cosine(const WeightedVector& u, const WeightedVector& v) {
  const double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) {
    zero_vector_count.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return dot(u, v) / (nu * nv);
}

WeightedVector enrich(const WeightedVector& base, const RelationMap& relations,
                      const IdfTable& idf, const EnrichCoefficients& coeffs) {
  if (coeffs.alpha < 0.0 || coeffs.beta < 0.0 || coeffs.gamma < 0.0)
    throw config_error("enrichment coefficients must be non-negative");

  WeightedVector brothers{{}, VectorTag::Brother};
  WeightedVector fathers{{}, VectorTag::Father};
  WeightedVector grandfathers{{}, VectorTag::Grandfather};

  for (const auto& [term, weight] : base.entries) {
    auto rel = relations.find(term);
    if (rel == relations.end()) continue;
    // recover the raw user frequency; base terms always carry non-zero idf
    const double tf = weight / idf.value_or_synthetic(term);
    auto accumulate = [&](const std::set<std::string>& related,
                          WeightedVector& target) {
      for (const std::string& r : related) {
        if (base.entries.count(r)) continue;  // b, f, gf stay outside K
        target.entries[r] += tf * idf.value_or_synthetic(r);
      }
    };
    accumulate(rel->second.brothers, brothers);
    accumulate(rel->second.fathers, fathers);
    accumulate(rel->second.grandfathers, grandfathers);
  }

  WeightedVector enriched;
  enriched.tag = VectorTag::EnrichedUser;
  enriched.entries = base.entries;
  auto add_scaled = [&](const WeightedVector& v, double coeff) {
    if (coeff == 0.0) return;
    for (const auto& [term, w] : v.entries) {
      const double scaled = coeff * w;
      if (scaled != 0.0) enriched.entries[term] += scaled;
    }
  };
  add_scaled(brothers, coeffs.alpha);
  add_scaled(fathers, coeffs.beta);
  add_scaled(grandfathers, coeffs.gamma);
  return enriched;
}

double sco(const WeightedVector& enriched_user, const WeightedVector& item) {
  return cosine(enriched_user, item);
}

}  // namespace semrec

#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "semrec/corpus.hpp"
#include "semrec/recommend.hpp"

namespace semrec {

struct MetricRow {
  std::string experiment;
  std::size_t top_n = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ExperimentConfig {
  std::string experiment_id;
  std::size_t min_user_posts = 10;
  std::size_t n_samples = 35;
  std::uint64_t rng_seed = 0;
  bool exclude_seen = false;    // drop the user's own discussions before ranking
  bool per_user_mean = false;   // average per user first, then across users
  std::size_t threads = 1;
};

struct ExperimentResult {
  std::string experiment;
  double avg_f1 = 0.0;
  std::vector<MetricRow> rows;  // one row per sampled N, averaged over users
  std::vector<std::string> users;
  std::vector<std::size_t> sampled_n;
};

// Discussions the user posted in; participation is the implicit relevance
// signal.
std::set<std::string> relevant_items(const std::string& user_id,
                                     const Corpus& corpus);

// Top-N precision/recall/F1 against the relevant set. N must lie in
// [1, list length]. Recall is 0 for an empty relevant set.
MetricRow precision_recall_f1(const RecommendationList& recs,
                              const std::set<std::string>& relevant,
                              std::size_t top_n);

// n_samples distinct N values drawn uniformly from [1, n_items], sorted.
// Requests larger than n_items degenerate to the full sweep.
std::vector<std::size_t> sample_topn_values(std::size_t n_samples,
                                            std::size_t n_items,
                                            std::uint64_t seed);

using Recommender = std::function<RecommendationList(const std::string& user_id)>;

// Runs one experiment: users with at least min_user_posts posts are scored at
// every sampled N; avg_f1 averages F1 over all (user, N) pairs. Per-user
// computations may run on several threads; aggregation order is fixed, so the
// result does not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const Corpus& corpus, std::size_t n_items,
                                const Recommender& recommender);

std::string metrics_to_tsv(const std::vector<MetricRow>& rows);
std::string summary_to_tsv(const std::vector<ExperimentResult>& results);

}  // namespace semrec

#include "semrec/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include "semrec/common.hpp"

namespace semrec {

std::set<std::string> relevant_items(const std::string& user_id,
                                     const Corpus& corpus) {
  std::set<std::string> out;
  for (const auto& [key, count] : corpus.participation)
    if (key.first == user_id && count >= 1) out.insert(key.second);
  return out;
}

MetricRow precision_recall_f1(const RecommendationList& recs,
                              const std::set<std::string>& relevant,
                              std::size_t top_n) {
  if (top_n < 1 || top_n > recs.ranked.size())
    throw config_error("precision_recall_f1: N " + std::to_string(top_n) +
                       " out of range [1, " +
                       std::to_string(recs.ranked.size()) + "]");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < top_n; ++i)
    if (relevant.count(recs.ranked[i].item_id)) ++hits;

  MetricRow row;
  row.top_n = top_n;
  row.precision = static_cast<double>(hits) / static_cast<double>(top_n);
  row.recall = relevant.empty()
                   ? 0.0
                   : static_cast<double>(hits) / static_cast<double>(relevant.size());
  // algebraically 2PR/(P+R); the integer form keeps values like 0.4 exact
  row.f1 = hits == 0 ? 0.0
                     : 2.0 * static_cast<double>(hits) /
                           static_cast<double>(top_n + relevant.size());
  return row;
}

std::vector<std::size_t> sample_topn_values(std::size_t n_samples,
                                            std::size_t n_items,
                                            std::uint64_t seed) {
  if (n_items == 0) throw data_error("sample_topn_values: no items");
  if (n_samples < 1) throw config_error("sample_topn_values: n_samples must be >= 1");
  if (n_samples >= n_items) {
    std::vector<std::size_t> all(n_items);
    for (std::size_t i = 0; i < n_items; ++i) all[i] = i + 1;
    return all;
  }
  // partial Fisher-Yates over [1, n_items]
  std::vector<std::size_t> pool(n_items);
  for (std::size_t i = 0; i < n_items; ++i) pool[i] = i + 1;
  Rng rng(seed);
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::size_t j = i + rng.next_index(n_items - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> out(pool.begin(), pool.begin() + n_samples);
  std::sort(out.begin(), out.end());
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const Corpus& corpus, std::size_t n_items,
                                const Recommender& recommender) {
  ExperimentResult result;
  result.experiment = config.experiment_id;

  for (const std::string& user : corpus.users)
    if (corpus.total_posts_of(user) >= config.min_user_posts)
      result.users.push_back(user);
  if (result.users.empty()) throw data_error("no qualifying users");

  result.sampled_n = sample_topn_values(config.n_samples, n_items, config.rng_seed);

  // per user: F1 (and P/R) at every sampled N
  struct UserMetrics {
    std::vector<double> precision, recall, f1;
  };
  std::vector<UserMetrics> per_user(result.users.size());

  auto evaluate_user = [&](std::size_t u) {
    const std::string& user = result.users[u];
    const std::set<std::string> relevant = relevant_items(user, corpus);
    RecommendationList recs = recommender(user);
    if (config.exclude_seen) {
      std::erase_if(recs.ranked, [&](const ScoredItem& item) {
        return relevant.count(item.item_id) > 0;
      });
    }
    UserMetrics metrics;
    for (std::size_t n : result.sampled_n) {
      if (recs.ranked.empty()) {
        metrics.precision.push_back(0.0);
        metrics.recall.push_back(0.0);
        metrics.f1.push_back(0.0);
        continue;
      }
      const std::size_t effective = std::min(n, recs.ranked.size());
      MetricRow row = precision_recall_f1(recs, relevant, effective);
      metrics.precision.push_back(row.precision);
      metrics.recall.push_back(row.recall);
      metrics.f1.push_back(row.f1);
    }
    per_user[u] = std::move(metrics);
  };

  const std::size_t threads = std::max<std::size_t>(1, config.threads);
  if (threads == 1) {
    for (std::size_t u = 0; u < result.users.size(); ++u) evaluate_user(u);
  } else {
    std::vector<std::future<void>> futures;
    for (std::size_t t = 0; t < threads; ++t) {
      futures.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t u = t; u < result.users.size(); u += threads)
          evaluate_user(u);
      }));
    }
    for (auto& f : futures) f.get();
  }

  // per-N rows averaged over users, in fixed user order
  const double n_users = static_cast<double>(result.users.size());
  for (std::size_t i = 0; i < result.sampled_n.size(); ++i) {
    MetricRow row;
    row.experiment = config.experiment_id;
    row.top_n = result.sampled_n[i];
    for (std::size_t u = 0; u < per_user.size(); ++u) {
      row.precision += per_user[u].precision[i];
      row.recall += per_user[u].recall[i];
      row.f1 += per_user[u].f1[i];
    }
    row.precision /= n_users;
    row.recall /= n_users;
    row.f1 /= n_users;
    result.rows.push_back(row);
  }

  if (config.per_user_mean) {
    double total = 0.0;
    for (const UserMetrics& m : per_user) {
      double user_mean = 0.0;
      for (double f : m.f1) user_mean += f;
      total += user_mean / static_cast<double>(m.f1.size());
    }
    result.avg_f1 = total / n_users;
  } else {
    double total = 0.0;
    std::size_t count = 0;
    for (const UserMetrics& m : per_user)
      for (double f : m.f1) {
        total += f;
        ++count;
      }
    result.avg_f1 = total / static_cast<double>(count);
  }
  return result;
}

std::string metrics_to_tsv(const std::vector<MetricRow>& rows) {
  std::string out = "experiment\tN\tprecision\trecall\tf1\n";
  char buf[128];
  for (const MetricRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s\t%zu\t%.9f\t%.9f\t%.9f\n",
                  row.experiment.c_str(), row.top_n, row.precision, row.recall,
                  row.f1);
    out += buf;
  }
  return out;
}

std::string summary_to_tsv(const std::vector<ExperimentResult>& results) {
  std::vector<const ExperimentResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ExperimentResult* x, const ExperimentResult* y) {
                     if (x->avg_f1 != y->avg_f1) return x->avg_f1 > y->avg_f1;
                     return x->experiment < y->experiment;
                   });
  std::string out = "experiment\tavg_f1\n";
  char buf[128];
  for (const ExperimentResult* r : sorted) {
    std::snprintf(buf, sizeof(buf), "%s\t%.9f\n", r->experiment.c_str(), r->avg_f1);
    out += buf;
  }
  return out;
}

}  // namespace semrec

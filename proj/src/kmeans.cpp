#include "semrec/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "semrec/common.hpp"

namespace semrec {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
  return d;
}

std::vector<double> normalized(const std::vector<double>& v) {
  double norm = std::sqrt(dot(v, v));
  if (norm == 0.0) return v;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
  return out;
}

}  // namespace

KmeansResult kmeans(const std::vector<std::vector<double>>& vectors,
                    std::size_t k, std::uint64_t seed) {
  const std::size_t n = vectors.size();
  if (n == 0) throw data_error("kmeans: no input rows");
  const std::size_t dim = vectors[0].size();
  for (const auto& v : vectors)
    if (v.size() != dim) throw data_error("kmeans: ragged input rows");

  std::set<std::vector<double>> distinct(vectors.begin(), vectors.end());
  if (k < 1 || k > distinct.size())
    throw config_error("kmeans: k " + std::to_string(k) +
                       " out of range [1, " + std::to_string(distinct.size()) + "]");

  std::vector<std::vector<double>> unit(n);
  for (std::size_t i = 0; i < n; ++i) unit[i] = normalized(vectors[i]);

  Rng rng(seed);

  // k-means++ seeding: next centroid drawn with probability proportional to
  // the squared cosine distance to the nearest chosen centroid.
  std::vector<std::size_t> centers;
  std::vector<double> min_dist(n, 1.0);  // cosine distance to nearest center
  centers.push_back(rng.next_index(n));
  auto cos_dist = [&](std::size_t i, std::size_t c) {
    return 1.0 - dot(unit[i], unit[centers[c]]);
  };
  for (std::size_t i = 0; i < n; ++i)
    min_dist[i] = std::max(0.0, cos_dist(i, 0));
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += min_dist[i] * min_dist[i];
    std::size_t chosen = n;
    if (total > 0.0) {
      const double r = rng.next_double() * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += min_dist[i] * min_dist[i];
        if (cum > r) {
          chosen = i;
          break;
        }
      }
      if (chosen == n) chosen = n - 1;  // guard against rounding at the tail
    } else {
      // all points coincide with some centroid direction; take any unused row
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(centers.begin(), centers.end(), i) == centers.end()) {
          chosen = i;
          break;
        }
      }
    }
    centers.push_back(chosen);
    const std::size_t c = centers.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
      min_dist[i] = std::min(min_dist[i], std::max(0.0, cos_dist(i, c)));
  }

  KmeansResult result;
  result.centroids.assign(k, std::vector<double>(dim, 0.0));
  for (std::size_t c = 0; c < k; ++c) result.centroids[c] = unit[centers[c]];
  result.assignment.assign(n, 0);

  auto assign_all = [&] {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_sim = dot(unit[i], result.centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        double sim = dot(unit[i], result.centroids[c]);
        if (sim > best_sim) {
          best_sim = sim;
          best = c;
        }
      }
      if (result.assignment[i] != best) changed = true;
      result.assignment[i] = best;
    }
    return changed;
  };

  auto repair_empty = [&] {
    for (std::size_t c = 0; c < k; ++c) {
      bool empty = true;
      for (std::size_t i = 0; i < n; ++i)
        if (result.assignment[i] == c) {
          empty = false;
          break;
        }
      if (!empty) continue;
      // steal the point farthest from its centroid, from a cluster of size > 1
      std::vector<std::size_t> sizes(k, 0);
      for (std::size_t lbl : result.assignment) ++sizes[lbl];
      std::size_t worst = n;
      double worst_sim = 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[result.assignment[i]] <= 1) continue;
        double sim = dot(unit[i], result.centroids[result.assignment[i]]);
        if (sim < worst_sim) {
          worst_sim = sim;
          worst = i;
        }
      }
      if (worst == n) throw numeric_error("kmeans: cannot repair empty cluster");
      result.assignment[worst] = c;
      result.centroids[c] = unit[worst];
    }
  };

  auto objective = [&] {
    double j = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      j += 1.0 - dot(unit[i], result.centroids[result.assignment[i]]);
    return j;
  };

  auto update_centroids = [&] {
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < dim; ++d)
        sums[result.assignment[i]][d] += unit[i][d];
    for (std::size_t c = 0; c < k; ++c) result.centroids[c] = normalized(sums[c]);
  };

  const std::size_t max_iters = 10000;
  double prev = -1.0;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool changed = assign_all();
    repair_empty();
    double j = objective();
    result.objective_trace.push_back(j);
    if (!changed && iter > 0) break;
    if (prev >= 0.0 && j > prev - 1e-15 && iter > 0) break;
    prev = j;
    update_centroids();
  }
  return result;
}

}  // namespace semrec

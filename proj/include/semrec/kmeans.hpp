#pragma once

#include <cstdint>
#include <vector>

namespace semrec {

struct KmeansResult {
  std::vector<std::size_t> assignment;          // one label per input row
  std::vector<std::vector<double>> centroids;   // k unit-length (or zero) rows
  std::vector<double> objective_trace;          // per-iteration cosine-distance sum
};

// Spherical k-means over cosine distance with k-means++ style seeding.
// Deterministic for a fixed seed; every returned cluster is non-empty.
// k must lie in [1, number of distinct rows].
KmeansResult kmeans(const std::vector<std::vector<double>>& vectors,
                    std::size_t k, std::uint64_t seed);

}  // namespace semrec

#include "semrec/lsi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semrec/common.hpp"

namespace semrec {

namespace {

using Dense = std::vector<std::vector<double>>;

// Cyclic Jacobi eigensolver for a symmetric matrix. Returns eigenvalues and
// the eigenvector matrix (columns are eigenvectors), sorted descending.
void jacobi_eigen(Dense a, std::vector<double>& values, Dense& vectors) {
  const std::size_t n = a.size();
  vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;

  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
  frob = std::sqrt(frob);
  const double tol = std::max(frob * 1e-15, 1e-300);

  const int max_sweeps = 80;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (std::sqrt(2.0 * off) <= tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= tol / (2.0 * n)) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = vectors[i][p], viq = vectors[i][q];
          vectors[i][p] = c * vip - s * viq;
          vectors[i][q] = s * vip + c * viq;
        }
      }
    }
  }
  if (sweep == max_sweeps)
    throw numeric_error("Jacobi eigensolver failed to converge after " +
                        std::to_string(max_sweeps) + " sweeps");

  values.resize(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return values[x] > values[y];
  });
  std::vector<double> sorted_values(n);
  Dense sorted_vectors(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    sorted_values[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i)
      sorted_vectors[i][k] = vectors[i][order[k]];
  }
  values = std::move(sorted_values);
  vectors = std::move(sorted_vectors);
}

}  // namespace

LsiProjection lsi_project(const SparseMatrix& matrix, std::size_t rank) {
  const std::size_t m = matrix.n_rows, n = matrix.n_cols;
  if (m == 0 || n == 0) throw data_error("lsi_project: empty matrix");
  if (rank < 1 || rank > std::min(m, n))
    throw config_error("lsi_project: rank " + std::to_string(rank) +
                       " out of range [1, " + std::to_string(std::min(m, n)) + "]");
  bool any = false;
  for (const auto& row : matrix.rows)
    for (const auto& [c, v] : row)
      if (v != 0.0) any = true;
  if (!any) throw data_error("lsi_project: matrix has no non-zero entries");

  std::vector<double> eigenvalues;
  Dense eigenvectors;
  LsiProjection out;
  out.coords.assign(m, std::vector<double>(rank, 0.0));

  if (m <= n) {
    // G = A A^T, eigenvectors are the left singular vectors U
    Dense gram(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        // sparse dot of rows i and j (both sorted by column)
        double dot = 0.0;
        const auto& a = matrix.rows[i];
        const auto& b = matrix.rows[j];
        std::size_t x = 0, y = 0;
        while (x < a.size() && y < b.size()) {
          if (a[x].first < b[y].first) {
            ++x;
          } else if (a[x].first > b[y].first) {
            ++y;
          } else {
            dot += a[x].second * b[y].second;
            ++x;
            ++y;
          }
        }
        gram[i][j] = gram[j][i] = dot;
      }
    }
    jacobi_eigen(std::move(gram), eigenvalues, eigenvectors);
    for (std::size_t k = 0; k < rank; ++k) {
      const double sigma = std::sqrt(std::max(eigenvalues[k], 0.0));
      out.singular_values.push_back(sigma);
      for (std::size_t i = 0; i < m; ++i)
        out.coords[i][k] = eigenvectors[i][k] * sigma;
    }
  } else {
    // G = A^T A, eigenvectors are the right singular vectors V; coords = A V_r
    Dense gram(n, std::vector<double>(n, 0.0));
    for (const auto& row : matrix.rows)
      for (std::size_t x = 0; x < row.size(); ++x)
        for (std::size_t y = x; y < row.size(); ++y) {
          gram[row[x].first][row[y].first] += row[x].second * row[y].second;
          if (x != y)
            gram[row[y].first][row[x].first] += row[x].second * row[y].second;
        }
    jacobi_eigen(std::move(gram), eigenvalues, eigenvectors);
    for (std::size_t k = 0; k < rank; ++k)
      out.singular_values.push_back(std::sqrt(std::max(eigenvalues[k], 0.0)));
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& [col, val] : matrix.rows[i])
        for (std::size_t k = 0; k < rank; ++k)
          out.coords[i][k] += val * eigenvectors[col][k];
  }
  return out;
}

}  // namespace semrec

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace semrec {

// Row-major sparse matrix; column indices within a row are unique.
struct SparseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
};

struct LsiProjection {
  // n_rows x rank: row coordinates in the dominant left singular subspace,
  // scaled by the singular values.
  std::vector<std::vector<double>> coords;
  std::vector<double> singular_values;  // non-negative, non-increasing
};

// Rank-reduced projection of the rows via the matrix's singular value
// decomposition. The decomposition runs on the smaller Gram matrix with a
// cyclic Jacobi eigensolver; failure to converge raises numeric_error.
LsiProjection lsi_project(const SparseMatrix& matrix, std::size_t rank);

}  // namespace semrec

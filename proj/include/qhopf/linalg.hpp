#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qhopf/scalar.hpp"

namespace qhopf::linalg {

/// Row of a sparse matrix: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Scalar>>;
using DenseMatrix = std::vector<std::vector<Scalar>>;

/// Reduced row echelon form: rows[i] has a leading 1 in column pivots[i] and
/// every pivot column is zero in all other rows.
struct Echelon {
  std::vector<SparseRow> rows;
  std::vector<int> pivots;
};

Echelon reduce(std::vector<SparseRow> rows, int ncols);

/// Unique solution of A x = b, or nullopt when A is singular or the system
/// is inconsistent. A has `ncols` columns.
std::optional<std::vector<Scalar>> solve_unique(std::vector<SparseRow> a, int ncols,
                                                const std::vector<Scalar>& b, Field field);

/// Basis of {x : A x = 0}, one vector per free column.
std::vector<std::vector<Scalar>> null_space(std::vector<SparseRow> a, int ncols, Field field);

std::optional<DenseMatrix> inverse(const DenseMatrix& m, Field field);

SparseRow sparse_row(const std::vector<Scalar>& dense);

}  // namespace qhopf::linalg

#include "qhopf/linalg.hpp"

#include <algorithm>

namespace qhopf::linalg {

namespace {

const Scalar* find_entry(const SparseRow& row, int column) {
  auto it = std::lower_bound(row.begin(), row.end(), column,
                             [](const auto& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == column) ? &it->second : nullptr;
}

// row -= factor * pivot
void axpy(SparseRow& row, const Scalar& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  auto a = row.begin();
  auto b = pivot.begin();
  while (a != row.end() || b != pivot.end()) {
    if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == row.end() || b->first < a->first) {
      out.emplace_back(b->first, -(factor * b->second));
      ++b;
    } else {
      Scalar v = a->second - factor * b->second;
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  row = std::move(out);
}

}  // namespace

SparseRow sparse_row(const std::vector<Scalar>& dense) {
  SparseRow row;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!dense[i].is_zero()) row.emplace_back(static_cast<int>(i), dense[i]);
  }
  return row;
}

Echelon reduce(std::vector<SparseRow> rows, int ncols) {
  std::vector<char> used(rows.size(), 0);
  Echelon out;
  std::vector<std::size_t> pivot_rows;
  for (int col = 0; col < ncols; ++col) {
    // Unused rows have been cleared in all earlier columns, so a candidate
    // is a row whose leading entry sits in this column. Prefer the sparsest.
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].front().first != col) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) continue;
    used[best] = 1;
    const Scalar scale = rows[best].front().second.inverse();
    for (auto& [c, v] : rows[best]) v *= scale;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best) continue;
      if (const Scalar* v = find_entry(rows[r], col)) {
        const Scalar factor = *v;
        axpy(rows[r], factor, rows[best]);
      }
    }
    pivot_rows.push_back(best);
    out.pivots.push_back(col);
  }
  for (std::size_t r : pivot_rows) out.rows.push_back(std::move(rows[r]));
  return out;
}

std::optional<std::vector<Scalar>> solve_unique(std::vector<SparseRow> a, int ncols,
                                                const std::vector<Scalar>& b, Field field) {
  if (b.size() != a.size()) throw ShapeError("solve_unique: right-hand side length mismatch");
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (!b[r].is_zero()) a[r].emplace_back(ncols, b[r]);
  }
  Echelon e = reduce(std::move(a), ncols + 1);
  if (!e.pivots.empty() && e.pivots.back() == ncols) return std::nullopt;  // inconsistent
  if (static_cast<int>(e.pivots.size()) != ncols) return std::nullopt;     // singular
  std::vector<Scalar> x(static_cast<std::size_t>(ncols), Scalar::zero(field));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const auto& row = e.rows[i];
    if (!row.empty() && row.back().first == ncols) x[e.pivots[i]] = row.back().second;
  }
  return x;
}

std::vector<std::vector<Scalar>> null_space(std::vector<SparseRow> a, int ncols, Field field) {
  Echelon e = reduce(std::move(a), ncols);
  std::vector<char> is_pivot(static_cast<std::size_t>(ncols), 0);
  for (int p : e.pivots) is_pivot[p] = 1;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(static_cast<std::size_t>(ncols), Scalar::zero(field));
    v[free] = Scalar::one(field);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if (const Scalar* c = find_entry(e.rows[i], free)) v[e.pivots[i]] = -*c;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<DenseMatrix> inverse(const DenseMatrix& m, Field field) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return DenseMatrix{};
  std::vector<SparseRow> rows;
  rows.reserve(m.size());
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(m[r].size()) != n) throw ShapeError("inverse: matrix is not square");
    SparseRow row = sparse_row(m[r]);
    row.emplace_back(n + r, Scalar::one(field));
    rows.push_back(std::move(row));
  }
  Echelon e = reduce(std::move(rows), 2 * n);
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  DenseMatrix inv(static_cast<std::size_t>(n),
                  std::vector<Scalar>(static_cast<std::size_t>(n), Scalar::zero(field)));
  for (int i = 0; i < n; ++i) {
    for (const auto& [c, v] : e.rows[i]) {
      if (c >= n) inv[i][c - n] = v;
    }
  }
  return inv;
}

}  // namespace qhopf::linalg

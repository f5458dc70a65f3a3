#pragma once

#include <cstddef>
#include <vector>

#include "crtrans/division.hpp"
#include "crtrans/gauss_rat.hpp"
#include "crtrans/mpoly.hpp"

namespace crtrans {

using Matrix = std::vector<std::vector<GaussRat>>;
using Vector = std::vector<GaussRat>;
using PolyMatrix = std::vector<std::vector<MPoly>>;

/// Exact rank by Gaussian elimination over Q(i).
inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    const GaussRat inv = GaussRat(1) / m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const GaussRat f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Basis of {c : sum_j g_j c_j = 0} for a nonzero covector g. The pivot is the
/// last nonzero entry; basis vector k is e_k - (g_k / g_pivot) e_pivot.
inline std::vector<Vector> kernel_of_covector(const Vector& g) {
  std::size_t pivot = g.size();
  for (std::size_t j = g.size(); j-- > 0;)
    if (!g[j].is_zero()) {
      pivot = j;
      break;
    }
  if (pivot == g.size()) throw InvalidArgument("kernel_of_covector: zero covector");
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k == pivot) continue;
    Vector v(g.size(), GaussRat(0));
    v[k] = GaussRat(1);
    v[pivot] = -(g[k] / g[pivot]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in the polynomial ring.
inline MPoly determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidArgument("determinant of an empty matrix");
  const Universe u = m[0][0].universe();
  MPoly prev(u, GaussRat(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MPoly(u);
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divide_exactly(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline PolyMatrix submatrix(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) {
  PolyMatrix s;
  s.reserve(rows.size());
  for (auto r : rows) {
    std::vector<MPoly> row;
    row.reserve(cols.size());
    for (auto c : cols) row.push_back(m[r][c]);
    s.push_back(std::move(row));
  }
  return s;
}

inline Matrix evaluate(const PolyMatrix& m, std::span<const GaussRat> point) {
  Matrix out;
  for (const auto& row : m) {
    Vector r;
    for (const auto& e : row) r.push_back(evaluate(e, point));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace crtrans

#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "ks/errors.hpp"
#include "ks/rational.hpp"

// Small dense/sparse exact linear algebra over Q. Everything here is plain
// Gaussian elimination; matrices are desk-scale.
namespace ks::linalg {

using QVector = std::vector<Rat>;
using QMatrix = std::vector<QVector>;  // row-major, rectangular

inline Rat det(QMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("det: matrix is not square");
  Rat result = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      result = -result;
    }
    result *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return result;
}

// Solves a*x = b for square nonsingular a.
inline QVector solve(QMatrix a, QVector b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError("solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DomainError("solve: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// A sparse linear form in `ncols` unknowns: column -> nonzero coefficient.
using SparseRow = std::map<std::size_t, Rat>;

// Basis of {x : row*x = 0 for every row}, one dense vector per free column,
// in increasing free-column order. Plain RREF kept sparse; correct for any
// input, efficient when rows are short.
inline std::vector<QVector> nullspace(const std::vector<SparseRow>& rows,
                                      std::size_t ncols) {
  std::map<std::size_t, SparseRow> pivots;  // pivot column -> reduced row
  for (const SparseRow& input : rows) {
    SparseRow row = input;
    // Eliminate all pivoted columns from the incoming row.
    for (auto it = row.begin(); it != row.end();) {
      auto piv = pivots.find(it->first);
      if (piv == pivots.end()) {
        ++it;
        continue;
      }
      Rat f = it->second;
      for (const auto& [c, v] : piv->second) {
        auto pos = row.find(c);
        if (pos == row.end()) pos = row.emplace(c, 0).first;
        pos->second -= f * v;
        if (pos->second == 0) row.erase(pos);
      }
      it = row.upper_bound(piv->first);
    }
    if (row.empty()) continue;
    const std::size_t lead = row.begin()->first;
    Rat inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    // Keep earlier pivot rows reduced against the new one.
    for (auto& [c, prow] : pivots) {
      auto pos = prow.find(lead);
      if (pos == prow.end()) continue;
      Rat f = pos->second;
      for (const auto& [rc, rv] : row) {
        auto q = prow.find(rc);
        if (q == prow.end()) q = prow.emplace(rc, 0).first;
        q->second -= f * rv;
        if (q->second == 0) prow.erase(q);
      }
    }
    pivots.emplace(lead, std::move(row));
  }
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (pivots.count(free)) continue;
    QVector x(ncols, Rat(0));
    x[free] = 1;
    for (const auto& [c, prow] : pivots) {
      auto pos = prow.find(free);
      if (pos != prow.end()) x[c] = -pos->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace ks::linalg

#pragma once

#include <cstdlib>
#include <utility>
#include <vector>

#include "ks/errors.hpp"
#include "ks/linalg.hpp"
#include "ks/rational.hpp"

namespace ks {

using IMatrix = std::vector<std::vector<Int>>;

// An isogeny of r-dimensional tori, given by the induced map on cocharacter
// lattices: an integer matrix of nonzero determinant.
class ToralIsogeny {
 public:
  explicit ToralIsogeny(IMatrix m) : m_(std::move(m)) {
    const std::size_t r = m_.size();
    if (r == 0) throw DomainError("isogeny matrix must be nonempty");
    for (const auto& row : m_)
      if (row.size() != r) throw DomainError("isogeny matrix must be square");
    linalg::QMatrix q(r, linalg::QVector(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q[i][j] = Rat(m_[i][j]);
    det_ = linalg::det(q).get_num();
    if (det_ == 0)
      throw DomainError("isogeny matrix is singular (kernel is not finite)");
  }

  int rank() const { return static_cast<int>(m_.size()); }
  const IMatrix& matrix() const { return m_; }
  const Int& det() const { return det_; }

 private:
  IMatrix m_;
  Int det_;
};

// A fractional cocharacter x with minimal level: level*x is integral and no
// smaller positive integer does the job.
struct FractionalCocharacter {
  std::vector<Rat> x;
  Int level;
};

// Unique rational solution of M*x = target.
inline std::vector<Rat> solve_rational(const ToralIsogeny& iso,
                                       const std::vector<Rat>& target) {
  const std::size_t r = iso.matrix().size();
  if (target.size() != r) throw DomainError("target length mismatch");
  linalg::QMatrix a(r, linalg::QVector(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = Rat(iso.matrix()[i][j]);
  std::vector<Rat> b;
  b.reserve(r);
  for (const Rat& v : target) b.push_back(canonical(v));
  return linalg::solve(std::move(a), std::move(b));
}

// The unique fractional lift of an integral cocharacter through the isogeny:
// the solution of M*x = h, with its least common denominator as level.
inline FractionalCocharacter fractional_lift(const ToralIsogeny& iso,
                                             const std::vector<Int>& h) {
  std::vector<Rat> target;
  target.reserve(h.size());
  for (const Int& v : h) target.emplace_back(v);
  std::vector<Rat> x = solve_rational(iso, target);
  Int level = common_denominator(x);
  return FractionalCocharacter{std::move(x), std::move(level)};
}

// Diagonal of the Smith normal form: d_1 | d_2 | ... | d_r, all positive for
// a nonsingular matrix.
inline std::vector<Int> elementary_divisors(IMatrix m) {
  const std::size_t r = m.size();
  std::vector<Int> divisors;
  for (std::size_t t = 0; t < r; ++t) {
    // Locate a nonzero entry of minimal absolute value in the trailing block.
    auto find_pivot = [&]() -> std::pair<std::size_t, std::size_t> {
      std::size_t bi = r, bj = r;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < r; ++j)
          if (m[i][j] != 0 &&
              (bi == r || abs(m[i][j]) < abs(m[bi][bj]))) {
            bi = i;
            bj = j;
          }
      return {bi, bj};
    };
    while (true) {
      auto [pi, pj] = find_pivot();
      if (pi == r)
        throw DomainError("Smith reduction: matrix is singular");
      std::swap(m[t], m[pi]);
      for (std::size_t i = 0; i < r; ++i) std::swap(m[i][t], m[i][pj]);
      const Int pivot = m[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / pivot;  // truncated division keeps remainders small
        if (q != 0)
          for (std::size_t j = t; j < r; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < r; ++j) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / pivot;
        if (q != 0)
          for (std::size_t i = t; i < r; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide every remaining entry; if not,
      // fold the offending row in and reduce again.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < r && divides_all; ++i)
        for (std::size_t j = t + 1; j < r && divides_all; ++j)
          if (!mpz_divisible_p(m[i][j].get_mpz_t(), pivot.get_mpz_t())) {
            for (std::size_t c = t; c < r; ++c) m[t][c] += m[i][c];
            divides_all = false;
          }
      if (divides_all) break;
    }
    divisors.push_back(abs(m[t][t]));
  }
  return divisors;
}

// Exponent of coker(M), i.e. the largest elementary divisor. Every lift's
// level divides it.
inline Int lift_level_bound(const ToralIsogeny& iso) {
  return elementary_divisors(iso.matrix()).back();
}

}  // namespace ks

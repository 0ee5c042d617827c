#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ks/errors.hpp"
#include "ks/linalg.hpp"
#include "ks/rational.hpp"

namespace ks {

// Default bound for trial division in square-free factorization. Inputs are
// desk-scale; anything whose square-free part needs primes beyond this is
// rejected rather than silently misclassified.
inline constexpr unsigned long kTrialDivisionBound = 1'000'000;

// An element of Q* / (Q*)^2, canonically a nonzero square-free integer.
struct SquareClass {
  Int rep;

  bool is_square() const { return rep == 1; }
  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

// Square-free part of a nonzero integer by trial division up to `bound`.
// A leftover cofactor with only prime factors beyond the bound is accepted
// only if it is a perfect square (then it contributes nothing); otherwise
// the factorization is incomplete and we fail loudly.
inline Int squarefree_part(Int z, unsigned long bound = kTrialDivisionBound) {
  if (z == 0) throw DomainError("square class of zero is undefined");
  Int rep = sgn(z) < 0 ? -1 : 1;
  z = abs(z);
  auto strip = [&](unsigned long p) {
    unsigned long e = 0;
    while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
      mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), p);
      ++e;
    }
    if (e % 2 == 1) rep *= static_cast<long>(p);
  };
  strip(2);
  for (unsigned long p = 3; p <= bound && z > 1; p += 2) {
    Int p2 = Int(static_cast<long>(p)) * static_cast<long>(p);
    if (p2 > z) {
      // z has no factor <= p, so it is prime.
      rep *= z;
      z = 1;
      break;
    }
    strip(p);
  }
  if (z != 1 && !mpz_perfect_square_p(z.get_mpz_t()))
    throw DomainError("square-free factorization exceeds trial-division bound " +
                      std::to_string(bound) + " (cofactor " + z.get_str() + ")");
  return rep;
}

// Square class of a nonzero rational: class(p/q) = class(p*q).
inline SquareClass square_class(const Rat& a,
                                unsigned long bound = kTrialDivisionBound) {
  if (a == 0) throw DomainError("square class of zero is undefined");
  return SquareClass{squarefree_part(a.get_num() * a.get_den(), bound)};
}

inline SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  // Both representatives are square-free, so the square part of the product
  // is exactly gcd(a,b)^2; no factorization needed.
  Int g = gcd(a.rep, b.rep);
  return SquareClass{(a.rep / g) * (b.rep / g)};
}

// A nondegenerate symmetric bilinear form over Q, given by its Gram matrix.
class QuadraticSpace {
 public:
  QuadraticSpace(int n, linalg::QMatrix gram)
      : n_(n), gram_(std::move(gram)) {
    if (n_ < 1) throw DomainError("quadratic space dimension must be positive");
    if (gram_.size() != static_cast<std::size_t>(n_))
      throw DomainError("Gram matrix size does not match dimension");
    for (auto& row : gram_) {
      if (row.size() != static_cast<std::size_t>(n_))
        throw DomainError("Gram matrix is not square");
      for (Rat& v : row) v = canonical(std::move(v));
    }
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (gram_[i][j] != gram_[j][i])
          throw DomainError("Gram matrix is not symmetric");
    det_ = linalg::det(gram_);
    if (det_ == 0) throw DomainError("degenerate form: Gram determinant is zero");
  }

  static QuadraticSpace diagonal(const std::vector<Rat>& entries) {
    if (entries.empty()) throw DomainError("diagonal form needs at least one entry");
    const std::size_t n = entries.size();
    linalg::QMatrix g(n, linalg::QVector(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
      if (entries[i] == 0) throw DomainError("diagonal form has a zero entry");
      g[i][i] = entries[i];
    }
    return QuadraticSpace(static_cast<int>(n), std::move(g));
  }

  static QuadraticSpace hyperbolic_plane() {
    return QuadraticSpace(2, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  }

  // U^k, the orthogonal sum of k hyperbolic planes.
  static QuadraticSpace hyperbolic_planes(int k);

  int dim() const { return n_; }
  const linalg::QMatrix& gram() const { return gram_; }
  const Rat& det() const { return det_; }

 private:
  int n_;
  linalg::QMatrix gram_;
  Rat det_;
};

inline QuadraticSpace direct_sum(const QuadraticSpace& a, const QuadraticSpace& b) {
  const int n = a.dim() + b.dim();
  linalg::QMatrix g(n, linalg::QVector(n, Rat(0)));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) g[i][j] = a.gram()[i][j];
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) g[a.dim() + i][a.dim() + j] = b.gram()[i][j];
  return QuadraticSpace(n, std::move(g));
}

inline QuadraticSpace QuadraticSpace::hyperbolic_planes(int k) {
  if (k < 1) throw DomainError("U^k needs k >= 1");
  QuadraticSpace s = hyperbolic_plane();
  for (int i = 1; i < k; ++i) s = direct_sum(s, hyperbolic_plane());
  return s;
}

// Coefficients of a diagonal form Q-congruent to the source space.
struct DiagonalForm {
  std::vector<Rat> coeffs;

  int dim() const { return static_cast<int>(coeffs.size()); }
};

// Symmetric Gaussian congruence reduction. When every remaining diagonal
// entry vanishes, an off-diagonal partner y of x exists by nondegeneracy and
// the substitution x -> x+y produces the nonzero pivot 2*q(x,y).
inline DiagonalForm diagonalize(const QuadraticSpace& space) {
  const int n = space.dim();
  linalg::QMatrix g = space.gram();
  // x_i <- x_i + f*x_k, applied to rows and columns of the Gram matrix.
  auto add_basis = [&](int i, int k, const Rat& f) {
    for (int c = 0; c < n; ++c) g[i][c] += f * g[k][c];
    for (int r = 0; r < n; ++r) g[r][i] += f * g[r][k];
  };
  std::vector<Rat> coeffs;
  coeffs.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (g[k][k] == 0) {
      int diag = -1, partner = -1;
      for (int j = k + 1; j < n; ++j) {
        if (diag < 0 && g[j][j] != 0) diag = j;
        if (partner < 0 && g[k][j] != 0) partner = j;
      }
      if (diag >= 0) {
        std::swap(g[diag], g[k]);
        for (int r = 0; r < n; ++r) std::swap(g[r][diag], g[r][k]);
      } else if (partner >= 0) {
        add_basis(k, partner, Rat(1));
      } else {
        throw DomainError("degenerate form encountered during diagonalization");
      }
    }
    const Rat pivot = g[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (g[i][k] == 0) continue;
      add_basis(i, k, Rat(-g[i][k] / pivot));
    }
    coeffs.push_back(pivot);
  }
  return DiagonalForm{std::move(coeffs)};
}

// (positive, negative) inertia counts of any rational diagonalization;
// well-defined by Sylvester's law.
inline std::pair<int, int> signature(const QuadraticSpace& space) {
  int pos = 0, neg = 0;
  for (const Rat& d : diagonalize(space).coeffs) (sgn(d) > 0 ? pos : neg)++;
  return {pos, neg};
}

// delta: the square class of det(gram).
inline SquareClass discriminant(const QuadraticSpace& space,
                                unsigned long bound = kTrialDivisionBound) {
  return square_class(space.det(), bound);
}

}  // namespace ks

#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ks/errors.hpp"
#include "ks/linalg.hpp"
#include "ks/quadspace.hpp"
#include "ks/rational.hpp"

namespace ks {

// Basis index of C(V): bit i-1 set means generator e_i is a factor, factors
// taken in increasing index order.
using BasisMask = std::uint32_t;

// Sign of reordering e_S * e_T into increasing order:
// (-1)^#{(i,j) in S x T : i > j}.
inline int basis_sign(BasisMask s, BasisMask t) {
  int inversions = 0;
  for (BasisMask rest = t; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(s >> (j + 1));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// An element of the Clifford algebra of a diagonalized n-dimensional form,
// as a sparse rational combination of basis monomials e_S.
class CliffordElement {
 public:
  explicit CliffordElement(int n) : n_(n) {
    if (n < 1 || n > 31) throw DomainError("Clifford dimension out of range");
  }

  static CliffordElement basis(int n, BasisMask mask) {
    CliffordElement e(n);
    e.check_mask(mask);
    e.coords_.emplace(mask, Rat(1));
    return e;
  }

  static CliffordElement scalar(int n, const Rat& value) {
    CliffordElement e(n);
    const Rat v = canonical(value);
    if (v != 0) e.coords_.emplace(0, v);
    return e;
  }

  // The generator e_i (1-based), the image of the i-th basis vector of V.
  static CliffordElement generator(int n, int i) {
    if (i < 1 || i > n) throw DomainError("generator index out of range");
    return basis(n, BasisMask{1} << (i - 1));
  }

  int dim() const { return n_; }
  const std::map<BasisMask, Rat>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  Rat coefficient(BasisMask mask) const {
    auto it = coords_.find(mask);
    return it == coords_.end() ? Rat(0) : it->second;
  }

  void add_term(BasisMask mask, const Rat& value) {
    check_mask(mask);
    auto it = coords_.emplace(mask, Rat(0)).first;
    it->second += canonical(value);
    if (it->second == 0) coords_.erase(it);
  }

  CliffordElement& operator+=(const CliffordElement& other) {
    check_same(other);
    for (const auto& [mask, v] : other.coords_) add_term(mask, v);
    return *this;
  }

  CliffordElement& operator-=(const CliffordElement& other) {
    check_same(other);
    for (const auto& [mask, v] : other.coords_) add_term(mask, Rat(-v));
    return *this;
  }

  CliffordElement& operator*=(const Rat& raw) {
    const Rat c = canonical(raw);
    if (c == 0) {
      coords_.clear();
      return *this;
    }
    for (auto& [mask, v] : coords_) v *= c;
    return *this;
  }

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) {
    return a += b;
  }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) {
    return a -= b;
  }
  friend CliffordElement operator*(CliffordElement a, const Rat& c) { return a *= c; }
  friend CliffordElement operator*(const Rat& c, CliffordElement a) { return a *= c; }

  friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
    return a.n_ == b.n_ && a.coords_ == b.coords_;
  }

 private:
  void check_mask(BasisMask mask) const {
    if (mask >> n_) throw DomainError("basis mask exceeds dimension");
  }
  void check_same(const CliffordElement& other) const {
    if (n_ != other.n_) throw DomainError("Clifford dimension mismatch");
  }

  int n_;
  std::map<BasisMask, Rat> coords_;
};

// e_S * e_T = sign(S,T) * (prod of d_i over i in S&T) * e_{S xor T},
// extended bilinearly. Defining relations e_i^2 = d_i, e_i e_j = -e_j e_i.
inline CliffordElement clifford_product(const CliffordElement& a,
                                        const CliffordElement& b,
                                        const DiagonalForm& d) {
  if (a.dim() != b.dim() || a.dim() != d.dim())
    throw DomainError("Clifford dimension mismatch");
  CliffordElement out(a.dim());
  for (const auto& [s, av] : a.coords()) {
    for (const auto& [t, bv] : b.coords()) {
      Rat c = av * bv;
      if (basis_sign(s, t) < 0) c = -c;
      for (BasisMask common = s & t; common != 0; common &= common - 1)
        c *= d.coeffs[std::countr_zero(common)];
      out.add_term(s ^ t, c);
    }
  }
  return out;
}

// Masks of even popcount in increasing order; the basis of C+(V).
inline std::vector<BasisMask> even_basis(int n) {
  if (n < 1 || n > 31) throw DomainError("Clifford dimension out of range");
  std::vector<BasisMask> basis;
  basis.reserve(std::size_t{1} << (n - 1));
  for (BasisMask m = 0; m < (BasisMask{1} << n); ++m)
    if (std::popcount(m) % 2 == 0) basis.push_back(m);
  return basis;
}

// (dim C(V), dim C+(V)) = (2^n, 2^(n-1)).
inline std::pair<Int, Int> dimension_check(int n) {
  if (n < 1) throw DomainError("Clifford dimension must be positive");
  return {pow2(static_cast<unsigned long>(n)),
          pow2(static_cast<unsigned long>(n - 1))};
}

// Text form: terms "c*e{i,j,...}" joined by " + " / " - ", masks ascending,
// the unit written e{}. Zero renders as "0".
inline std::string to_string(const CliffordElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, coef] : a.coords()) {
    const bool negative = sgn(coef) < 0;
    Rat mag = negative ? Rat(-coef) : coef;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string basis = "e{";
    bool first = true;
    for (BasisMask rest = mask; rest != 0; rest &= rest - 1) {
      if (!first) basis += ",";
      first = false;
      basis += std::to_string(std::countr_zero(rest) + 1);
    }
    basis += "}";
    if (mag == 1)
      out += basis;
    else
      out += to_string(mag) + "*" + basis;
  }
  return out;
}

// Parses the same grammar: [-]term (("+"|"-") term)*, where a term is a
// rational coefficient, a basis monomial e{i,...} with strictly increasing
// 1-based indices, or coefficient*monomial.
inline CliffordElement parse_clifford_element(const std::string& text, int n) {
  CliffordElement out(n);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw ParseError("empty Clifford element");
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  while (true) {
    skip_ws();
    Rat coef = 1;
    bool saw_coef = false;
    if (pos < text.size() && text[pos] != 'e') {
      std::size_t end = pos;
      while (end < text.size() && (std::isdigit(text[end]) || text[end] == '/'))
        ++end;
      if (end == pos) throw ParseError("expected coefficient or e{...} in term");
      coef = parse_rational(std::string(text, pos, end - pos));
      saw_coef = true;
      pos = end;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }
    BasisMask mask = 0;
    if (pos < text.size() && text[pos] == 'e') {
      ++pos;
      if (pos >= text.size() || text[pos] != '{')
        throw ParseError("expected '{' after 'e'");
      ++pos;
      int last = 0;
      while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          break;
        }
        std::size_t end = pos;
        while (end < text.size() && std::isdigit(text[end])) ++end;
        if (end == pos) throw ParseError("expected generator index in e{...}");
        const int idx = std::stoi(std::string(text, pos, end - pos));
        if (idx < 1 || idx > n)
          throw ParseError("generator index out of range: " + std::to_string(idx));
        if (idx <= last)
          throw ParseError("generator indices must be strictly increasing "
                           "(basis monomials are ordered products)");
        last = idx;
        mask |= BasisMask{1} << (idx - 1);
        pos = end;
        skip_ws();
        if (pos < text.size() && text[pos] == ',') ++pos;
      }
    } else if (!saw_coef) {
      throw ParseError("expected term in Clifford element");
    }
    out.add_term(mask, negative ? Rat(-coef) : coef);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] == '+' || text[pos] == '-')
      negative = text[pos++] == '-';
    else
      throw ParseError("expected '+' or '-' between terms");
  }
  return out;
}

struct CenterReport {
  int dim = 0;
  std::vector<CliffordElement> basis;
  // Engaged for even n: whether the center splits as Q x Q, decided by the
  // square class of z^2 for a central z outside the scalars. Odd n: not
  // applicable (the center of C+ is the scalars).
  std::optional<bool> split;
};

// Brute-force center of C+(V): the commutant of the bivector generators
// e_{i,j}, computed as the nullspace of an exact linear system, then
// post-checked against every even basis monomial. Deliberately assumes no
// structure theory; this is the oracle the classifier is checked against.
inline CenterReport even_center(const DiagonalForm& d, int max_n = 8) {
  const int n = d.dim();
  if (n < 1) throw DomainError("Clifford dimension must be positive");
  if (n > max_n)
    throw DomainError("even_center: dimension " + std::to_string(n) +
                      " exceeds oracle bound " + std::to_string(max_n));
  for (const Rat& c : d.coeffs)
    if (c == 0) throw DomainError("degenerate diagonal form");

  const std::vector<BasisMask> basis = even_basis(n);
  std::vector<BasisMask> generators;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      generators.push_back((BasisMask{1} << i) | (BasisMask{1} << j));

  // Row key: (generator, output mask). Column: even-basis coordinate of z.
  std::map<std::pair<std::size_t, BasisMask>, linalg::SparseRow> rows;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const CliffordElement z = CliffordElement::basis(n, basis[col]);
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      const CliffordElement g = CliffordElement::basis(n, generators[gi]);
      const CliffordElement comm =
          clifford_product(z, g, d) - clifford_product(g, z, d);
      for (const auto& [mask, coef] : comm.coords())
        rows[{gi, mask}][col] += coef;
    }
  }
  std::vector<linalg::SparseRow> system;
  system.reserve(rows.size());
  for (auto& [key, row] : rows) system.push_back(std::move(row));

  CenterReport report;
  for (const linalg::QVector& v : linalg::nullspace(system, basis.size())) {
    CliffordElement z(n);
    for (std::size_t col = 0; col < basis.size(); ++col)
      if (v[col] != 0) z.add_term(basis[col], v[col]);
    report.basis.push_back(std::move(z));
  }
  report.dim = static_cast<int>(report.basis.size());

  // The bivectors generate C+, so commuting with them must imply commuting
  // with the whole even part; verify rather than trust.
  for (const CliffordElement& z : report.basis)
    for (BasisMask m : basis) {
      const CliffordElement g = CliffordElement::basis(n, m);
      if (!(clifford_product(z, g, d) == clifford_product(g, z, d)))
        throw InternalError("even_center: commutant fails full-basis post-check");
    }

  if (n % 2 == 0) {
    // Pick a central element outside span(1) by stripping scalar parts.
    CliffordElement candidate(n);
    for (const CliffordElement& z : report.basis) {
      CliffordElement stripped = z;
      stripped.add_term(0, Rat(-z.coefficient(0)));
      if (!stripped.is_zero()) {
        candidate = stripped;
        break;
      }
    }
    if (candidate.is_zero())
      throw InternalError("even_center: no central element outside the scalars");
    const CliffordElement square = clifford_product(candidate, candidate, d);
    if (square.coords().size() != 1 || square.coords().begin()->first != 0)
      throw InternalError("even_center: central element has non-scalar square");
    report.split = square_class(square.coefficient(0)).is_square();
  }
  return report;
}

}  // namespace ks

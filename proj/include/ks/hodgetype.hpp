#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ks/errors.hpp"
#include "ks/rational.hpp"

namespace ks {

// (p,q) with rational entries; fractional types are first-class.
using TypePair = std::pair<Rat, Rat>;

// The type of a (fractional) Hodge structure: a finite multiset of (p,q)
// pairs with positive multiplicities. Reality forces mult(p,q) = mult(q,p).
class HodgeType {
 public:
  explicit HodgeType(std::map<TypePair, Int> raw) {
    for (auto& [pq, mult] : raw)
      entries_[{canonical(pq.first), canonical(pq.second)}] += mult;
    if (entries_.empty()) throw DomainError("Hodge type must be nonempty");
    for (const auto& [pq, mult] : entries_) {
      if (mult <= 0) throw DomainError("Hodge type multiplicities must be positive");
      auto mirror = entries_.find({pq.second, pq.first});
      if (mirror == entries_.end() || mirror->second != mult)
        throw DomainError("Hodge type violates reality: mult(" +
                          to_string(pq.first) + "," + to_string(pq.second) +
                          ") has no matching conjugate");
    }
  }

  // Convenience for literal types: {(p,q,mult), ...}.
  static HodgeType of(const std::vector<std::tuple<Rat, Rat, Int>>& items) {
    std::map<TypePair, Int> entries;
    for (const auto& [p, q, m] : items) entries[{p, q}] += m;
    return HodgeType(std::move(entries));
  }

  const std::map<TypePair, Int>& entries() const { return entries_; }

  Int dimension() const {
    Int d = 0;
    for (const auto& [pq, mult] : entries_) d += mult;
    return d;
  }

  Int multiplicity(const Rat& p, const Rat& q) const {
    auto it = entries_.find({p, q});
    return it == entries_.end() ? Int(0) : it->second;
  }

  friend bool operator==(const HodgeType&, const HodgeType&) = default;

 private:
  std::map<TypePair, Int> entries_;
};

// Minkowski sum of types with multiplicity convolution.
inline HodgeType tensor(const HodgeType& a, const HodgeType& b) {
  std::map<TypePair, Int> out;
  for (const auto& [s, sm] : a.entries())
    for (const auto& [t, tm] : b.entries())
      out[{s.first + t.first, s.second + t.second}] += sm * tm;
  return HodgeType(std::move(out));
}

inline HodgeType dual(const HodgeType& a) {
  std::map<TypePair, Int> out;
  for (const auto& [pq, m] : a.entries()) out[{-pq.first, -pq.second}] = m;
  return HodgeType(std::move(out));
}

// Tensoring with Q(c), the one-dimensional structure of type (-c,-c).
inline HodgeType tate_twist(const HodgeType& a, const Rat& raw) {
  const Rat c = canonical(raw);
  std::map<TypePair, Int> out;
  for (const auto& [pq, m] : a.entries()) out[{pq.first - c, pq.second - c}] = m;
  return HodgeType(std::move(out));
}

inline HodgeType direct_sum(const HodgeType& a, const HodgeType& b) {
  std::map<TypePair, Int> out = a.entries();
  for (const auto& [pq, m] : b.entries()) out[pq] += m;
  return HodgeType(std::move(out));
}

// The common weight p+q if the type is pure, otherwise nothing.
inline std::optional<Rat> purity(const HodgeType& a) {
  std::optional<Rat> weight;
  for (const auto& [pq, m] : a.entries()) {
    Rat w = pq.first + pq.second;
    if (!weight)
      weight = w;
    else if (*weight != w)
      return std::nullopt;
  }
  return weight;
}

// Weight-0 type inside {(1,-1),(0,0),(-1,1)} with one-dimensional (1,-1) part.
inline bool is_k3_type(const HodgeType& a) {
  for (const auto& [pq, m] : a.entries()) {
    const Rat &p = pq.first, &q = pq.second;
    if (p + q != 0) return false;
    if (!((p == 1 && q == -1) || (p == 0 && q == 0) || (p == -1 && q == 1)))
      return false;
  }
  return a.multiplicity(1, -1) == 1;
}

// Type contained in {(0,1),(1,0)}: H^1 of a complex torus.
inline bool is_abelian_type(const HodgeType& a) {
  for (const auto& [pq, m] : a.entries()) {
    const Rat &p = pq.first, &q = pq.second;
    if (!((p == 0 && q == 1) || (p == 1 && q == 0))) return false;
  }
  return true;
}

struct TensorFactorization {
  std::size_t index = 0;        // the unique abelian-like factor
  std::vector<Rat> constants;   // c_j for each other factor, of type {(c_j,c_j)}
};

// Given factors whose tensor product has abelian type {(0,1),(1,0)}, every
// factor but one is concentrated on a single diagonal point (c_j,c_j), and
// the remaining one has type {(c+1,c),(c,c+1)}. Returns that index together
// with the diagonal constants.
inline TensorFactorization weight1_tensor_factor(
    const std::vector<HodgeType>& factors) {
  if (factors.empty()) throw DomainError("tensor factorization of empty list");
  HodgeType product = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j)
    product = tensor(product, factors[j]);
  if (!is_abelian_type(product))
    throw DomainError("tensor of factors is not of abelian type {(0,1),(1,0)}");

  auto diagonal_constant = [](const HodgeType& t) -> std::optional<Rat> {
    if (t.entries().size() != 1) return std::nullopt;
    const TypePair& pq = t.entries().begin()->first;
    if (pq.first != pq.second) return std::nullopt;
    return pq.first;
  };

  TensorFactorization result;
  std::optional<std::size_t> special;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (diagonal_constant(factors[j])) continue;
    if (special)
      throw InternalError("tensor factorization: multiple non-diagonal factors "
                          "despite abelian product");
    special = j;
  }
  if (!special)
    throw InternalError("tensor factorization: all factors diagonal "
                        "despite abelian product");

  // The special factor must look like {(c+1,c),(c,c+1)}.
  const HodgeType& w = factors[*special];
  if (w.entries().size() != 2)
    throw InternalError("tensor factorization: special factor is not two-point");
  const TypePair& first = w.entries().begin()->first;
  const Rat c = first.first < first.second ? first.first : first.second;
  if (w.multiplicity(c + 1, c) == 0 || w.multiplicity(c, c + 1) == 0)
    throw InternalError("tensor factorization: special factor lacks the "
                        "{(c+1,c),(c,c+1)} shape");

  result.index = *special;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (j == *special) continue;
    result.constants.push_back(*diagonal_constant(factors[j]));
  }
  return result;
}

// Textual form "(p,q):m, (p,q):m, ...". Multiplicity defaults to 1.
inline HodgeType parse_hodge_type(const std::string& text) {
  std::map<TypePair, Int> entries;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '(' in Hodge type");
    const std::size_t comma = text.find(',', pos);
    const std::size_t close = text.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw ParseError("malformed (p,q) pair in Hodge type");
    const Rat p = parse_rational(std::string(text, pos + 1, comma - pos - 1));
    const Rat q = parse_rational(std::string(text, comma + 1, close - comma - 1));
    pos = close + 1;
    skip_ws();
    Int mult = 1;
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      skip_ws();
      std::size_t end = pos;
      while (end < text.size() && text[end] != ',') ++end;
      std::string m(text, pos, end - pos);
      while (!m.empty() && (m.back() == ' ' || m.back() == '\t')) m.pop_back();
      if (m.empty()) throw ParseError("missing multiplicity after ':'");
      const Rat mr = parse_rational(m);
      if (!is_integral(mr) || mr <= 0)
        throw ParseError("multiplicity must be a positive integer: '" + m + "'");
      mult = mr.get_num();
      pos = end;
    }
    entries[{p, q}] += mult;
    skip_ws();
    if (pos < text.size()) {
      if (text[pos] != ',') throw ParseError("expected ',' between Hodge type entries");
      ++pos;
      skip_ws();
    }
  }
  if (entries.empty()) throw ParseError("empty Hodge type");
  return HodgeType(std::move(entries));
}

inline std::string to_string(const HodgeType& t) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [pq, m] : t.entries()) {
    if (!first) out << ", ";
    first = false;
    out << "(" << to_string(pq.first) << "," << to_string(pq.second) << "):"
        << m.get_str();
  }
  return out.str();
}

}  // namespace ks

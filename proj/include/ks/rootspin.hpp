#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ks/errors.hpp"
#include "ks/rational.hpp"

namespace ks {

// Root data are written in the standard t-coordinates of the diagonal torus;
// series B is SO(2m+1), series D is SO(2m).
enum class Series { B, D };

inline std::string to_string(Series s) { return s == Series::B ? "B" : "D"; }

// A cocharacter of the diagonal torus; rational entries cover fractional
// lifts as well as genuine cocharacters.
using Cocharacter = std::vector<Rat>;

class RootDatum {
 public:
  RootDatum(Series series, int rank) : series_(series), rank_(rank) {
    if (series == Series::B && rank < 2)
      throw DomainError("series B needs rank >= 2");
    if (series == Series::D && rank < 3)
      throw DomainError("series D needs rank >= 3");
    // alpha_i = t_i - t_{i+1}; the last root is t_m (B) or t_{m-1}+t_m (D).
    for (int i = 0; i + 1 < rank; ++i) {
      std::vector<int> alpha(rank, 0);
      alpha[i] = 1;
      alpha[i + 1] = -1;
      simple_roots_.push_back(std::move(alpha));
    }
    std::vector<int> last(rank, 0);
    last[rank - 1] = 1;
    if (series == Series::D) last[rank - 2] = 1;
    simple_roots_.push_back(std::move(last));
  }

  Series series() const { return series_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& simple_roots() const { return simple_roots_; }

 private:
  Series series_;
  int rank_;
  std::vector<std::vector<int>> simple_roots_;
};

inline Rat dot(const std::vector<int>& a, const Cocharacter& b) {
  if (a.size() != b.size()) throw DomainError("rank mismatch in pairing");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

// <alpha_i, nu> in simple-root order.
inline Cocharacter canonical(Cocharacter nu) {
  for (Rat& v : nu) v = canonical(std::move(v));
  return nu;
}

inline std::vector<Rat> pairings(const RootDatum& datum, const Cocharacter& raw) {
  if (raw.size() != static_cast<std::size_t>(datum.rank()))
    throw DomainError("cocharacter rank mismatch");
  const Cocharacter nu = canonical(raw);
  std::vector<Rat> out;
  out.reserve(datum.simple_roots().size());
  for (const auto& alpha : datum.simple_roots()) out.push_back(dot(alpha, nu));
  return out;
}

// Positive roots: t_i - t_j and t_i + t_j for i < j, plus the short roots
// t_i in series B.
inline std::vector<std::vector<int>> positive_roots(const RootDatum& datum) {
  const int m = datum.rank();
  std::vector<std::vector<int>> roots;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::vector<int> r(m, 0);
      r[i] = 1;
      r[j] = -1;
      roots.push_back(r);
      r[j] = 1;
      roots.push_back(std::move(r));
    }
  if (datum.series() == Series::B)
    for (int i = 0; i < m; ++i) {
      std::vector<int> r(m, 0);
      r[i] = 1;
      roots.push_back(std::move(r));
    }
  return roots;
}

inline std::string root_to_string(const std::vector<int>& root) {
  std::string s;
  for (std::size_t i = 0; i < root.size(); ++i) {
    if (root[i] == 0) continue;
    if (!s.empty() || root[i] < 0) s += root[i] > 0 ? "+" : "-";
    s += "t" + std::to_string(i + 1);
  }
  return s;
}

// The unique simple root pairing to 1 with nu (1-based index). Requires nu
// dominant and all positive roots pairing into {0,1}; these are exactly the
// conditions under which the adjoint action through nu has weights in
// {z, 1, z^-1}.
inline int special_vertex(const RootDatum& datum, const Cocharacter& nu) {
  const std::vector<Rat> simple = pairings(datum, nu);
  for (std::size_t i = 0; i < simple.size(); ++i)
    if (simple[i] < 0)
      throw DomainError("cocharacter is not dominant: <alpha_" +
                        std::to_string(i + 1) + ", nu> = " + to_string(simple[i]));
  for (const auto& root : positive_roots(datum)) {
    const Rat p = dot(root, nu);
    if (p != 0 && p != 1)
      throw DomainError("adjoint weight outside {0,1}: positive root " +
                        root_to_string(root) + " pairs to " + to_string(p));
  }
  int vertex = 0;
  for (std::size_t i = 0; i < simple.size(); ++i)
    if (simple[i] == 1) {
      if (vertex != 0)
        throw DomainError("multiple simple roots pair to 1");
      vertex = static_cast<int>(i) + 1;
    }
  if (vertex == 0) throw DomainError("no simple root pairs to 1");
  return vertex;
}

enum class HalfSpin { even, odd };

inline std::string to_string(HalfSpin h) {
  return h == HalfSpin::even ? "even" : "odd";
}

// A multiset of weights in (1/2 Z)^m.
struct WeightSet {
  int rank = 0;
  std::vector<std::pair<std::vector<Rat>, Int>> weights;

  Int total() const {
    Int t = 0;
    for (const auto& [w, m] : weights) t += m;
    return t;
  }
};

// Spin weights (+-1/2, ..., +-1/2): all 2^m sign patterns for series B; for
// series D the requested parity of minus signs picks one half-spin
// representation of dimension 2^(m-1).
inline WeightSet spin_weights(Series series, int rank,
                              std::optional<HalfSpin> half = std::nullopt) {
  static_cast<void>(RootDatum(series, rank));  // validates series/rank
  if (series == Series::B && half.has_value())
    throw DomainError("series B has a single spin representation; no half");
  if (series == Series::D && !half.has_value())
    throw DomainError("series D needs a half-spin parity");
  if (rank > 30) throw DomainError("spin weight enumeration limited to rank 30");
  WeightSet out;
  out.rank = rank;
  const Rat half_value(1, 2);
  for (unsigned long bits = 0; bits < (1ul << rank); ++bits) {
    const int minus = __builtin_popcountl(bits);
    if (series == Series::D &&
        (minus % 2 == 0) != (*half == HalfSpin::even))
      continue;
    std::vector<Rat> w(rank, half_value);
    for (int i = 0; i < rank; ++i)
      if (bits >> i & 1) w[i] = -half_value;
    out.weights.emplace_back(std::move(w), Int(1));
  }
  return out;
}

// Weights of the standard representation of SO(n): +-t_i, plus a zero weight
// in odd ambient dimension. The negative control for the two-weight test.
inline WeightSet standard_weights(Series series, int rank) {
  static_cast<void>(RootDatum(series, rank));
  WeightSet out;
  out.rank = rank;
  for (int i = 0; i < rank; ++i)
    for (int s : {1, -1}) {
      std::vector<Rat> w(rank, Rat(0));
      w[i] = s;
      out.weights.emplace_back(std::move(w), Int(1));
    }
  if (series == Series::B)
    out.weights.emplace_back(std::vector<Rat>(rank, Rat(0)), Int(1));
  return out;
}

// Multiset of <weight, nu> values.
inline std::map<Rat, Int> weight_spectrum(const WeightSet& w, const Cocharacter& raw) {
  if (raw.size() != static_cast<std::size_t>(w.rank))
    throw DomainError("cocharacter rank mismatch");
  const Cocharacter nu = canonical(raw);
  std::map<Rat, Int> spectrum;
  for (const auto& [weight, mult] : w.weights) {
    Rat v = 0;
    for (std::size_t i = 0; i < weight.size(); ++i) v += weight[i] * nu[i];
    spectrum[v] += mult;
  }
  return spectrum;
}

// Exactly two distinct values, differing by 1.
inline bool is_two_step_spectrum(const std::map<Rat, Int>& spectrum) {
  if (spectrum.size() != 2) return false;
  auto it = spectrum.begin();
  const Rat& low = it->first;
  const Rat& high = std::next(it)->first;
  return high - low == 1;
}

}  // namespace ks

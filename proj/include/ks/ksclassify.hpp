#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ks/clifford.hpp"
#include "ks/errors.hpp"
#include "ks/quadspace.hpp"
#include "ks/rational.hpp"

namespace ks {

// The three simple-factor regimes of the Kuga-Satake Hodge structure,
// decided by the parity of n and the square class of (-1)^(n/2) * delta.
enum class KSCase { odd, even_nonsquare, even_square };

inline std::string to_string(KSCase c) {
  switch (c) {
    case KSCase::odd: return "ODD";
    case KSCase::even_nonsquare: return "EVEN_NONSQUARE";
    case KSCase::even_square: return "EVEN_SQUARE";
  }
  throw InternalError("unknown case label");
}

// One branch of the classification, for a fixed value of r (the number of
// spin / half-spin copies inside each simple factor, decided by the
// splitness of an endomorphism quaternion algebra that is outside this
// computation). Conservation: distinct_factors * factor_dim * multiplicity
// = 2^(n-1) = dim C+(V).
struct KSBranch {
  int r = 1;
  int distinct_factors = 1;
  Int factor_dim;
  Int multiplicity;
};

struct KSReport {
  int n = 0;
  SquareClass delta{1};
  KSCase label = KSCase::odd;
  std::array<KSBranch, 2> branches;  // r = 1 and r = 2
  Int torus_bound;
  // Engaged when the quaternion algebra's splitness is supplied externally;
  // split selects r = 1, nonsplit r = 2.
  std::optional<int> selected_r;
};

namespace detail {

inline Int p2(int e) {
  if (e < 0) throw InternalError("negative power-of-two exponent");
  return pow2(static_cast<unsigned long>(e));
}

inline std::array<KSBranch, 2> branches_for(KSCase label, int n) {
  switch (label) {
    case KSCase::odd:
      return {KSBranch{1, 1, p2((n - 1) / 2), p2((n - 1) / 2)},
              KSBranch{2, 1, p2((n + 1) / 2), p2((n - 3) / 2)}};
    case KSCase::even_nonsquare:
      return {KSBranch{1, 1, p2(n / 2), p2(n / 2 - 1)},
              KSBranch{2, 1, p2(n / 2 + 1), p2(n / 2 - 2)}};
    case KSCase::even_square:
      return {KSBranch{1, 2, p2(n / 2 - 1), p2(n / 2 - 1)},
              KSBranch{2, 2, p2(n / 2), p2(n / 2 - 2)}};
  }
  throw InternalError("unknown case label");
}

inline Int bound_for(KSCase label, int n) {
  switch (label) {
    case KSCase::odd: return p2((n - 3) / 2);
    case KSCase::even_nonsquare: return p2(n / 2 - 1);
    case KSCase::even_square: return p2(n / 2 - 2);
  }
  throw InternalError("unknown case label");
}

inline void check_report(const KSReport& report) {
  const Int even_dim = pow2(static_cast<unsigned long>(report.n - 1));
  Int min_dim;
  for (const KSBranch& b : report.branches) {
    if (Int(b.distinct_factors) * b.factor_dim * b.multiplicity != even_dim)
      throw InternalError("branch violates factor conservation");
    if (min_dim == 0 || b.factor_dim < min_dim) min_dim = b.factor_dim;
  }
  if (report.torus_bound * 2 != min_dim)
    throw InternalError("torus bound does not match minimal factor dimension");
}

}  // namespace detail

// Simple-factor structure of the Kuga-Satake Hodge structure of an
// n-dimensional space with discriminant delta, both branches of r.
inline KSReport classify(int n, const SquareClass& delta) {
  if (n < 3) throw DomainError("classification needs n >= 3");
  KSReport report;
  report.n = n;
  report.delta = delta;
  if (n % 2 == 1) {
    report.label = KSCase::odd;
  } else {
    // (-1)^(n/2) * delta is a square iff its square-free representative is 1.
    const Int signed_rep = (n / 2) % 2 == 1 ? Int(-delta.rep) : delta.rep;
    report.label =
        signed_rep == 1 ? KSCase::even_square : KSCase::even_nonsquare;
  }
  report.branches = detail::branches_for(report.label, n);
  report.torus_bound = detail::bound_for(report.label, n);
  detail::check_report(report);
  return report;
}

// Lower bound for the dimension of a complex torus whose cohomology can see
// the K3-type structure: half the smallest simple-factor dimension.
inline Int torus_bound(int n, const SquareClass& delta) {
  return classify(n, delta).torus_bound;
}

struct ClassifyOptions {
  bool run_oracle = false;
  int oracle_max_n = 8;
  std::optional<bool> quaternion_split;  // external splitness knowledge
  unsigned long trial_division_bound = kTrialDivisionBound;
};

struct GramClassification {
  KSReport report;
  std::pair<int, int> signature{0, 0};
  std::vector<std::string> warnings;
  bool oracle_checked = false;
  std::optional<bool> oracle_split;
};

// Full pipeline: diagonalize, take the discriminant square class, classify.
// With the oracle enabled and n within bounds, the case label is cross-checked
// against the split/nonsplit center of C+(V); a mismatch is a bug, not bad
// input.
inline GramClassification classify_from_gram(const QuadraticSpace& space,
                                             const ClassifyOptions& options = {}) {
  GramClassification out;
  const DiagonalForm diag = diagonalize(space);
  int pos = 0, neg = 0;
  for (const Rat& c : diag.coeffs) (sgn(c) > 0 ? pos : neg)++;
  out.signature = {pos, neg};

  const SquareClass delta = discriminant(space, options.trial_division_bound);
  out.report = classify(space.dim(), delta);
  if (options.quaternion_split)
    out.report.selected_r = *options.quaternion_split ? 1 : 2;

  if (pos < 2)
    out.warnings.push_back(
        "signature (" + std::to_string(pos) + "," + std::to_string(neg) +
        "): no positive-definite 2-plane, so no K3-type Hodge structure "
        "admits this form");

  if (options.run_oracle && space.dim() <= options.oracle_max_n) {
    const CenterReport center = even_center(diag, options.oracle_max_n);
    out.oracle_checked = true;
    if (space.dim() % 2 == 0) {
      out.oracle_split = center.split;
      if (!center.split.has_value())
        throw InternalError("center oracle returned no splitness for even n");
      if (*center.split != (out.report.label == KSCase::even_square))
        throw InternalError(
            "center oracle contradicts the case label: split=" +
            std::string(*center.split ? "true" : "false") + " but case " +
            to_string(out.report.label));
    } else if (center.dim != 1) {
      throw InternalError("center oracle: odd-dimensional form with center "
                          "dimension " + std::to_string(center.dim));
    }
  }
  return out;
}

// One reading of a hyperkahler preset: a case label with its branch data.
struct PresetReading {
  KSCase label = KSCase::odd;
  std::array<KSBranch, 2> branches;
  Int torus_bound;
};

struct HyperkahlerReport {
  int b2 = 0;
  bool polarized = false;
  int n = 0;
  int delta_sign = 0;  // sign of det forced by the signature
  // False when the sign of (-1)^(n/2)*delta is positive: squareness then
  // needs the full square class, and both candidate readings are reported.
  bool sign_determines_case = true;
  std::vector<PresetReading> readings;
  std::vector<std::string> notes;
};

// The second cohomology of a compact hyperkahler manifold carries a form of
// signature (3, b2-3); passing to the orthogonal complement of a polarization
// removes one positive direction. Only the sign of the discriminant is
// determined, which settles the case exactly when (-1)^(n/2)*delta < 0.
inline HyperkahlerReport hyperkahler_preset(int b2, bool polarized) {
  if (b2 < 5) throw DomainError("hyperkahler preset needs b2 >= 5");
  HyperkahlerReport out;
  out.b2 = b2;
  out.polarized = polarized;
  out.n = polarized ? b2 - 1 : b2;
  const int neg = b2 - 3;
  out.delta_sign = neg % 2 == 0 ? 1 : -1;

  auto reading = [&](KSCase label) {
    return PresetReading{label, detail::branches_for(label, out.n),
                         detail::bound_for(label, out.n)};
  };

  if (out.n % 2 == 1) {
    out.readings.push_back(reading(KSCase::odd));
  } else {
    const int signed_sign = (out.n / 2) % 2 == 1 ? -out.delta_sign : out.delta_sign;
    if (signed_sign < 0) {
      out.readings.push_back(reading(KSCase::even_nonsquare));
    } else {
      out.sign_determines_case = false;
      out.readings.push_back(reading(KSCase::even_square));
      out.readings.push_back(reading(KSCase::even_nonsquare));
      out.notes.push_back(
          "(-1)^(n/2)*delta is positive; the full square class of delta is "
          "needed to separate EVEN_SQUARE from EVEN_NONSQUARE");
    }
  }

  // Cross-reference against the four printed sub-cases of the hyperkahler
  // example; record both the printed label and the computed one.
  auto printed = [&]() -> std::optional<std::pair<std::string, KSCase>> {
    if (!polarized && b2 % 2 == 1) return {{"b2 odd, full H^2 (printed label i)", KSCase::odd}};
    if (!polarized && b2 % 4 == 0)
      return {{"b2 divisible by 4, full H^2 (printed label ii)", KSCase::even_nonsquare}};
    if (polarized && b2 % 2 == 0)
      return {{"b2 even, polarization removed (printed label i)", KSCase::odd}};
    if (polarized && b2 % 4 == 3)
      return {{"b2 = 3 mod 4, polarization removed (printed label ii)",
               KSCase::even_nonsquare}};
    return std::nullopt;
  }();
  if (printed) {
    const KSCase computed = out.readings.front().label;
    if (out.sign_determines_case && computed == printed->second) {
      out.notes.push_back("matches published sub-case: " + printed->first);
    } else {
      out.notes.push_back("published sub-case " + printed->first +
                          " disagrees with computed case " + to_string(computed));
    }
  }
  return out;
}

}  // namespace ks

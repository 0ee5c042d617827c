#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ks/clifford.hpp"
#include "ks/hodgetype.hpp"
#include "ks/ksclassify.hpp"
#include "ks/lifting.hpp"
#include "ks/quadspace.hpp"
#include "ks/rootspin.hpp"

// Machine-readable renderings. Rationals are always "p/q" strings; integers
// become JSON numbers when they fit and decimal strings otherwise, so output
// never passes through floating point.
namespace ks {

inline nlohmann::json rat_json(const Rat& q) { return to_string(q); }

inline nlohmann::json int_json(const Int& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

inline nlohmann::json branch_json(const KSBranch& b) {
  return {{"r", b.r},
          {"factors", b.distinct_factors},
          {"dim", int_json(b.factor_dim)},
          {"N", int_json(b.multiplicity)}};
}

inline nlohmann::json report_json(const KSReport& r) {
  nlohmann::json branches = nlohmann::json::array();
  for (const KSBranch& b : r.branches) branches.push_back(branch_json(b));
  nlohmann::json out{{"n", r.n},
                     {"delta", int_json(r.delta.rep)},
                     {"case", to_string(r.label)},
                     {"branches", branches},
                     {"torus_bound", int_json(r.torus_bound)}};
  if (r.selected_r) out["selected_r"] = *r.selected_r;
  return out;
}

inline nlohmann::json classification_json(const GramClassification& c) {
  nlohmann::json out = report_json(c.report);
  out["signature"] = {c.signature.first, c.signature.second};
  out["warnings"] = c.warnings;
  if (c.oracle_checked) {
    nlohmann::json oracle{{"checked", true}};
    if (c.oracle_split) oracle["split"] = *c.oracle_split;
    out["oracle"] = oracle;
  }
  return out;
}

inline nlohmann::json element_json(const CliffordElement& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, coef] : a.coords()) {
    nlohmann::json indices = nlohmann::json::array();
    for (BasisMask rest = mask; rest != 0; rest &= rest - 1)
      indices.push_back(std::countr_zero(rest) + 1);
    terms.push_back({{"basis", indices}, {"coef", rat_json(coef)}});
  }
  return terms;
}

inline nlohmann::json diagonal_json(const DiagonalForm& d) {
  nlohmann::json out = nlohmann::json::array();
  for (const Rat& c : d.coeffs) out.push_back(rat_json(c));
  return out;
}

inline nlohmann::json center_json(const CenterReport& report,
                                  const DiagonalForm& d) {
  nlohmann::json basis = nlohmann::json::array();
  for (const CliffordElement& z : report.basis)
    basis.push_back({{"terms", element_json(z)}, {"text", to_string(z)}});
  nlohmann::json out{{"n", d.dim()},
                     {"diagonal", diagonal_json(d)},
                     {"dim", report.dim},
                     {"basis", basis}};
  out["split"] = report.split ? nlohmann::json(*report.split)
                              : nlohmann::json(nullptr);
  return out;
}

inline nlohmann::json hodge_json(const HodgeType& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [pq, m] : t.entries())
    entries.push_back({{"p", rat_json(pq.first)},
                       {"q", rat_json(pq.second)},
                       {"mult", int_json(m)}});
  return {{"entries", entries},
          {"dim", int_json(t.dimension())},
          {"text", to_string(t)}};
}

inline nlohmann::json factorization_json(const TensorFactorization& f) {
  nlohmann::json constants = nlohmann::json::array();
  for (const Rat& c : f.constants) constants.push_back(rat_json(c));
  return {{"index", f.index}, {"constants", constants}};
}

inline nlohmann::json spectrum_json(const std::map<Rat, Int>& spectrum) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [value, mult] : spectrum)
    out.push_back({{"value", rat_json(value)}, {"mult", int_json(mult)}});
  return out;
}

// Aggregated output of the `roots` subcommand.
struct RootsSummary {
  Series series = Series::B;
  int rank = 0;
  Cocharacter nu;
  std::vector<Rat> simple_pairings;
  int special_vertex = 0;
  struct Spin {
    std::optional<HalfSpin> half;
    Int count;
    std::map<Rat, Int> spectrum;
    bool two_step = false;
  };
  std::vector<Spin> spins;
};

inline nlohmann::json roots_json(const RootsSummary& r) {
  nlohmann::json nu = nlohmann::json::array();
  for (const Rat& v : r.nu) nu.push_back(rat_json(v));
  nlohmann::json pairings = nlohmann::json::array();
  for (const Rat& v : r.simple_pairings) pairings.push_back(rat_json(v));
  nlohmann::json spins = nlohmann::json::array();
  for (const auto& s : r.spins) {
    nlohmann::json entry{{"count", int_json(s.count)},
                         {"spectrum", spectrum_json(s.spectrum)},
                         {"two_step", s.two_step}};
    entry["half"] = s.half ? nlohmann::json(to_string(*s.half))
                           : nlohmann::json(nullptr);
    spins.push_back(entry);
  }
  return {{"series", to_string(r.series)}, {"rank", r.rank},
          {"nu", nu},                      {"pairings", pairings},
          {"special_vertex", r.special_vertex}, {"spin", spins}};
}

inline nlohmann::json lift_json(const ToralIsogeny& iso,
                                const std::vector<Int>& target,
                                const FractionalCocharacter& lift) {
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : iso.matrix()) {
    nlohmann::json r = nlohmann::json::array();
    for (const Int& v : row) r.push_back(int_json(v));
    matrix.push_back(r);
  }
  nlohmann::json h = nlohmann::json::array();
  for (const Int& v : target) h.push_back(int_json(v));
  nlohmann::json x = nlohmann::json::array();
  for (const Rat& v : lift.x) x.push_back(rat_json(v));
  return {{"matrix", matrix},
          {"target", h},
          {"x", x},
          {"N", int_json(lift.level)},
          {"level_bound", int_json(lift_level_bound(iso))}};
}

inline nlohmann::json preset_json(const HyperkahlerReport& r) {
  nlohmann::json readings = nlohmann::json::array();
  for (const PresetReading& reading : r.readings) {
    nlohmann::json branches = nlohmann::json::array();
    for (const KSBranch& b : reading.branches) branches.push_back(branch_json(b));
    readings.push_back({{"case", to_string(reading.label)},
                        {"branches", branches},
                        {"torus_bound", int_json(reading.torus_bound)}});
  }
  return {{"b2", r.b2},
          {"polarized", r.polarized},
          {"n", r.n},
          {"delta_sign", r.delta_sign},
          {"sign_determines_case", r.sign_determines_case},
          {"readings", readings},
          {"notes", r.notes}};
}

}  // namespace ks

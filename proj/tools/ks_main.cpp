// ks: exact-arithmetic reports on rational quadratic spaces of K3 type,
// their even Clifford algebras, Hodge type calculus, spin weight spectra,
// and cocharacter lifting. All output is deterministic; --json switches to
// machine-readable form with rationals as "p/q" strings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ks/clifford.hpp"
#include "ks/errors.hpp"
#include "ks/form_input.hpp"
#include "ks/hodgetype.hpp"
#include "ks/ksclassify.hpp"
#include "ks/lifting.hpp"
#include "ks/quadspace.hpp"
#include "ks/rational.hpp"
#include "ks/report_json.hpp"
#include "ks/rootspin.hpp"

namespace {

int oracle_max_n() {
  const char* env = std::getenv("KS_ORACLE_MAX_N");
  if (env == nullptr || *env == '\0') return 8;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || value < 1 || value > 31)
    throw ks::ParseError("KS_ORACLE_MAX_N must be an integer in [1,31]");
  return static_cast<int>(value);
}

void emit(bool as_json, const nlohmann::json& doc, const std::string& text) {
  if (as_json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

std::string signature_text(const std::pair<int, int>& s) {
  return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
}

std::string branch_text(const ks::KSBranch& b) {
  return "branch r=" + std::to_string(b.r) + ": " +
         std::to_string(b.distinct_factors) + " simple factor(s) of dim " +
         ks::to_string(b.factor_dim) + ", multiplicity N=" +
         ks::to_string(b.multiplicity) + "\n";
}

std::string classification_text(const ks::GramClassification& c) {
  std::ostringstream out;
  out << "n: " << c.report.n << "\n";
  out << "delta: " << ks::to_string(c.report.delta.rep) << "\n";
  out << "case: " << ks::to_string(c.report.label) << "\n";
  out << "signature: " << signature_text(c.signature) << "\n";
  for (const ks::KSBranch& b : c.report.branches) out << branch_text(b);
  out << "torus_bound: " << ks::to_string(c.report.torus_bound) << "\n";
  if (c.report.selected_r)
    out << "selected branch (external splitness): r=" << *c.report.selected_r
        << "\n";
  if (c.oracle_checked) {
    out << "oracle: center of C+ recomputed";
    if (c.oracle_split)
      out << ", split=" << (*c.oracle_split ? "true" : "false");
    out << ", consistent\n";
  }
  for (const std::string& w : c.warnings) out << "warning: " << w << "\n";
  return out.str();
}

struct ClassifyArgs {
  std::string form;
  std::string batch;
  bool json = false;
  bool oracle = false;
  std::string split_hint;
};

void run_classify_one(const std::string& spec, const ClassifyArgs& args) {
  const ks::QuadraticSpace space = ks::parse_form_spec(spec);
  ks::ClassifyOptions options;
  options.run_oracle = args.oracle;
  options.oracle_max_n = oracle_max_n();
  if (!args.split_hint.empty()) {
    if (args.split_hint == "split")
      options.quaternion_split = true;
    else if (args.split_hint == "nonsplit")
      options.quaternion_split = false;
    else
      throw ks::ParseError("--split-hint takes 'split' or 'nonsplit'");
  }
  const ks::GramClassification result = ks::classify_from_gram(space, options);
  emit(args.json, ks::classification_json(result), classification_text(result));
}

void run_classify(const ClassifyArgs& args) {
  if (!args.batch.empty()) {
    std::ifstream file(args.batch);
    if (!file) throw ks::ParseError("cannot open batch file " + args.batch);
    std::string line;
    bool first = true;
    while (std::getline(file, line)) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (!first && !args.json) std::cout << "\n";
      first = false;
      run_classify_one(line, args);
    }
    return;
  }
  if (args.form.empty())
    throw ks::ParseError("classify needs --form or --batch");
  run_classify_one(args.form, args);
}

std::string center_text(const ks::CenterReport& report, const ks::DiagonalForm& d) {
  std::ostringstream out;
  out << "n: " << d.dim() << "\n";
  out << "diagonal:";
  for (const ks::Rat& c : d.coeffs) out << " " << ks::to_string(c);
  out << "\n";
  out << "center dim: " << report.dim << "\n";
  for (const ks::CliffordElement& z : report.basis)
    out << "central: " << ks::to_string(z) << "\n";
  if (report.split)
    out << "split: " << (*report.split ? "true" : "false") << "\n";
  else
    out << "split: n/a (odd n)\n";
  return out.str();
}

void run_clifford_center(const std::string& form, bool as_json) {
  const ks::QuadraticSpace space = ks::parse_form_spec(form);
  const ks::DiagonalForm d = ks::diagonalize(space);
  const ks::CenterReport report = ks::even_center(d, oracle_max_n());
  emit(as_json, ks::center_json(report, d), center_text(report, d));
}

void run_clifford_mult(const std::string& form, const std::string& a_text,
                       const std::string& b_text, bool as_json) {
  const ks::QuadraticSpace space = ks::parse_form_spec(form);
  const ks::DiagonalForm d = ks::diagonalize(space);
  const ks::CliffordElement a = ks::parse_clifford_element(a_text, d.dim());
  const ks::CliffordElement b = ks::parse_clifford_element(b_text, d.dim());
  const ks::CliffordElement product = ks::clifford_product(a, b, d);
  nlohmann::json doc{{"n", d.dim()},
                     {"diagonal", ks::diagonal_json(d)},
                     {"a", ks::element_json(a)},
                     {"b", ks::element_json(b)},
                     {"product", ks::element_json(product)},
                     {"text", ks::to_string(product)}};
  std::ostringstream text;
  text << "n: " << d.dim() << "\n";
  text << "diagonal:";
  for (const ks::Rat& c : d.coeffs) text << " " << ks::to_string(c);
  text << "\n";
  text << "a: " << ks::to_string(a) << "\n";
  text << "b: " << ks::to_string(b) << "\n";
  text << "a*b: " << ks::to_string(product) << "\n";
  emit(as_json, doc, text.str());
}

void run_clifford_dims(int n, bool as_json) {
  const auto [full, even] = ks::dimension_check(n);
  nlohmann::json doc{{"n", n},
                     {"dim_C", ks::int_json(full)},
                     {"dim_C_plus", ks::int_json(even)}};
  std::ostringstream text;
  text << "n: " << n << "\n";
  text << "dim C(V): " << ks::to_string(full) << "\n";
  text << "dim C+(V): " << ks::to_string(even) << "\n";
  emit(as_json, doc, text.str());
}

void run_hodge(const std::string& op, const std::string& a_text,
               const std::string& b_text, const std::string& c_text,
               const std::string& factors_text, bool as_json) {
  if (op == "factor") {
    std::vector<ks::HodgeType> factors;
    std::stringstream body(factors_text);
    std::string item;
    while (std::getline(body, item, ';'))
      factors.push_back(ks::parse_hodge_type(item));
    if (factors.empty())
      throw ks::ParseError("--factors must list at least one type");
    const ks::TensorFactorization f = ks::weight1_tensor_factor(factors);
    std::ostringstream text;
    text << "index: " << f.index << "\n";
    text << "constants:";
    for (const ks::Rat& c : f.constants) text << " " << ks::to_string(c);
    text << "\n";
    emit(as_json, ks::factorization_json(f), text.str());
    return;
  }

  const ks::HodgeType a = ks::parse_hodge_type(a_text);
  ks::HodgeType result = a;
  if (op == "tensor") {
    result = ks::tensor(a, ks::parse_hodge_type(b_text));
  } else if (op == "dual") {
    result = ks::dual(a);
  } else if (op == "twist") {
    result = ks::tate_twist(a, ks::parse_rational(c_text));
  } else {
    throw ks::ParseError("unknown hodge operation '" + op + "'");
  }
  nlohmann::json doc = ks::hodge_json(result);
  const auto weight = ks::purity(result);
  doc["purity"] = weight ? nlohmann::json(ks::to_string(*weight))
                         : nlohmann::json(nullptr);
  doc["k3_type"] = ks::is_k3_type(result);
  doc["abelian_type"] = ks::is_abelian_type(result);
  std::ostringstream text;
  text << "type: " << ks::to_string(result) << "\n";
  text << "dim: " << ks::to_string(result.dimension()) << "\n";
  emit(as_json, doc, text.str());
}

void run_roots(const std::string& series_text, int rank,
               const std::string& half_text, const std::string& nu_text,
               bool as_json) {
  ks::Series series;
  if (series_text == "B")
    series = ks::Series::B;
  else if (series_text == "D")
    series = ks::Series::D;
  else
    throw ks::ParseError("--series takes 'B' or 'D'");

  const ks::RootDatum datum(series, rank);
  ks::Cocharacter nu(rank, ks::Rat(0));
  nu[0] = 1;
  if (!nu_text.empty()) {
    nu.clear();
    std::stringstream body(nu_text);
    std::string item;
    while (std::getline(body, item, ',')) nu.push_back(ks::parse_rational(item));
  }

  ks::RootsSummary summary;
  summary.series = series;
  summary.rank = rank;
  summary.nu = nu;
  summary.simple_pairings = ks::pairings(datum, nu);
  summary.special_vertex = ks::special_vertex(datum, nu);

  std::vector<std::optional<ks::HalfSpin>> halves;
  if (series == ks::Series::B) {
    halves.push_back(std::nullopt);
  } else if (half_text.empty()) {
    halves.push_back(ks::HalfSpin::even);
    halves.push_back(ks::HalfSpin::odd);
  } else if (half_text == "even") {
    halves.push_back(ks::HalfSpin::even);
  } else if (half_text == "odd") {
    halves.push_back(ks::HalfSpin::odd);
  } else {
    throw ks::ParseError("--half takes 'even' or 'odd'");
  }
  for (const auto& half : halves) {
    const ks::WeightSet weights = ks::spin_weights(series, rank, half);
    ks::RootsSummary::Spin spin;
    spin.half = half;
    spin.count = weights.total();
    spin.spectrum = ks::weight_spectrum(weights, nu);
    spin.two_step = ks::is_two_step_spectrum(spin.spectrum);
    summary.spins.push_back(std::move(spin));
  }

  std::ostringstream text;
  text << "series: " << ks::to_string(series) << "\n";
  text << "rank: " << rank << "\n";
  text << "nu:";
  for (const ks::Rat& v : nu) text << " " << ks::to_string(v);
  text << "\n";
  text << "pairings:";
  for (const ks::Rat& v : summary.simple_pairings) text << " " << ks::to_string(v);
  text << "\n";
  text << "special vertex: " << summary.special_vertex << "\n";
  for (const auto& spin : summary.spins) {
    text << "spin";
    if (spin.half) text << " (" << ks::to_string(*spin.half) << " half)";
    text << ": " << ks::to_string(spin.count) << " weights, spectrum";
    for (const auto& [value, mult] : spin.spectrum)
      text << " " << ks::to_string(value) << ":" << ks::to_string(mult);
    text << (spin.two_step ? " (two-step)" : " (not two-step)") << "\n";
  }
  emit(as_json, ks::roots_json(summary), text.str());
}

void run_lift(const std::string& matrix_text, const std::string& target_text,
              bool as_json) {
  nlohmann::json mdoc = nlohmann::json::parse(matrix_text, nullptr, false);
  if (mdoc.is_discarded() || !mdoc.is_array())
    throw ks::ParseError("--matrix must be a JSON array of integer rows");
  ks::IMatrix m;
  for (const auto& row : mdoc) {
    if (!row.is_array()) throw ks::ParseError("--matrix rows must be arrays");
    std::vector<ks::Int> r;
    for (const auto& v : row) {
      const ks::Rat q = ks::rational_from_json(v);
      if (!ks::is_integral(q))
        throw ks::ParseError("--matrix entries must be integers");
      r.push_back(q.get_num());
    }
    m.push_back(std::move(r));
  }
  std::vector<ks::Int> target;
  std::stringstream body(target_text);
  std::string item;
  while (std::getline(body, item, ',')) {
    const ks::Rat q = ks::parse_rational(item);
    if (!ks::is_integral(q))
      throw ks::ParseError("--target entries must be integers");
    target.push_back(q.get_num());
  }

  const ks::ToralIsogeny iso(std::move(m));
  const ks::FractionalCocharacter lift = ks::fractional_lift(iso, target);

  std::ostringstream text;
  text << "rank: " << iso.rank() << "\n";
  text << "x:";
  for (const ks::Rat& v : lift.x) text << " " << ks::to_string(v);
  text << "\n";
  text << "N: " << ks::to_string(lift.level) << "\n";
  text << "level bound: " << ks::to_string(ks::lift_level_bound(iso)) << "\n";
  emit(as_json, ks::lift_json(iso, target, lift), text.str());
}

void run_preset_hyperkahler(int b2, bool polarized, bool as_json) {
  const ks::HyperkahlerReport report = ks::hyperkahler_preset(b2, polarized);
  std::ostringstream text;
  text << "b2: " << report.b2 << (report.polarized ? " (polarized)" : "") << "\n";
  text << "n: " << report.n << "\n";
  text << "delta sign: " << (report.delta_sign > 0 ? "+" : "-") << "\n";
  if (!report.sign_determines_case)
    text << "case: indeterminate from the signature alone\n";
  for (const ks::PresetReading& reading : report.readings) {
    text << "case " << ks::to_string(reading.label) << ":\n";
    for (const ks::KSBranch& b : reading.branches) text << "  " << branch_text(b);
    text << "  torus_bound: " << ks::to_string(reading.torus_bound) << "\n";
  }
  for (const std::string& note : report.notes) text << "note: " << note << "\n";
  emit(as_json, ks::preset_json(report), text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Kuga-Satake classification toolkit"};
  app.require_subcommand(1);

  ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "classify the Kuga-Satake structure of a quadratic space");
  classify->add_option("--form", classify_args.form,
                       "form spec: U, U^k, diag:a,b,..., sum:..., inline JSON, "
                       "or a JSON file path");
  classify->add_option("--batch", classify_args.batch,
                       "file with one form spec per line");
  classify->add_flag("--json", classify_args.json, "emit JSON");
  classify->add_flag("--oracle", classify_args.oracle,
                     "cross-check the case label against the Clifford center "
                     "(n <= KS_ORACLE_MAX_N)");
  classify->add_option("--split-hint", classify_args.split_hint,
                       "external quaternion-algebra knowledge: split|nonsplit");

  CLI::App* clifford = app.add_subcommand("clifford", "even Clifford algebra tools");
  clifford->require_subcommand(1);
  std::string center_form;
  bool center_json_flag = false;
  CLI::App* center = clifford->add_subcommand("center", "center of C+(V)");
  center->add_option("--form", center_form, "form spec")->required();
  center->add_flag("--json", center_json_flag, "emit JSON");

  std::string mult_form, mult_a, mult_b;
  bool mult_json_flag = false;
  CLI::App* mult = clifford->add_subcommand(
      "mult", "multiply elements in the diagonalized basis");
  mult->add_option("--form", mult_form, "form spec")->required();
  mult->add_option("--a", mult_a, "left element, e.g. '1/2*e{1,2} + e{}'")
      ->required();
  mult->add_option("--b", mult_b, "right element")->required();
  mult->add_flag("--json", mult_json_flag, "emit JSON");

  int dims_n = 0;
  bool dims_json_flag = false;
  CLI::App* dims = clifford->add_subcommand("dims", "dimensions of C(V) and C+(V)");
  dims->add_option("--n", dims_n, "dimension of V")->required();
  dims->add_flag("--json", dims_json_flag, "emit JSON");

  CLI::App* hodge = app.add_subcommand("hodge", "Hodge type calculus");
  hodge->require_subcommand(1);
  struct HodgeArgs {
    std::string a, b, c, factors;
    bool json = false;
  } hodge_args[4];
  const std::string hodge_ops[4] = {"tensor", "dual", "twist", "factor"};
  CLI::App* hodge_subs[4];
  for (int i = 0; i < 4; ++i) {
    hodge_subs[i] = hodge->add_subcommand(hodge_ops[i]);
    hodge_subs[i]->add_flag("--json", hodge_args[i].json, "emit JSON");
  }
  hodge_subs[0]->add_option("--a", hodge_args[0].a, "left type")->required();
  hodge_subs[0]->add_option("--b", hodge_args[0].b, "right type")->required();
  hodge_subs[1]->add_option("--a", hodge_args[1].a, "type")->required();
  hodge_subs[2]->add_option("--a", hodge_args[2].a, "type")->required();
  hodge_subs[2]->add_option("--c", hodge_args[2].c, "twist amount (rational)")
      ->required();
  hodge_subs[3]
      ->add_option("--factors", hodge_args[3].factors,
                   "semicolon-separated list of types")
      ->required();

  std::string roots_series, roots_half, roots_nu;
  int roots_rank = 0;
  bool roots_json_flag = false;
  CLI::App* roots = app.add_subcommand("roots", "root data and spin weights");
  roots->add_option("--series", roots_series, "B or D")->required();
  roots->add_option("--rank", roots_rank, "rank m")->required();
  roots->add_option("--half", roots_half, "half-spin parity for series D");
  roots->add_option("--nu", roots_nu,
                    "cocharacter, comma-separated rationals (default 1,0,...,0)");
  roots->add_flag("--json", roots_json_flag, "emit JSON");

  std::string lift_matrix, lift_target;
  bool lift_json_flag = false;
  CLI::App* lift = app.add_subcommand("lift", "fractional cocharacter lifting");
  lift->add_option("--matrix", lift_matrix, "integer matrix as JSON, e.g. [[2]]")
      ->required();
  lift->add_option("--target", lift_target, "comma-separated integer vector")
      ->required();
  lift->add_flag("--json", lift_json_flag, "emit JSON");

  CLI::App* preset = app.add_subcommand("preset", "worked presets");
  preset->require_subcommand(1);
  int preset_b2 = 0;
  bool preset_polarized = false, preset_json_flag = false;
  CLI::App* hyperkahler =
      preset->add_subcommand("hyperkahler", "second cohomology of a compact "
                                            "hyperkahler manifold");
  hyperkahler->add_option("--b2", preset_b2, "second Betti number")->required();
  hyperkahler->add_flag("--polarized", preset_polarized,
                        "restrict to the orthogonal complement of a polarization");
  hyperkahler->add_flag("--json", preset_json_flag, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(classify)) {
      run_classify(classify_args);
    } else if (app.got_subcommand(clifford)) {
      if (clifford->got_subcommand(center))
        run_clifford_center(center_form, center_json_flag);
      else if (clifford->got_subcommand(mult))
        run_clifford_mult(mult_form, mult_a, mult_b, mult_json_flag);
      else
        run_clifford_dims(dims_n, dims_json_flag);
    } else if (app.got_subcommand(hodge)) {
      for (int i = 0; i < 4; ++i)
        if (hodge->got_subcommand(hodge_subs[i]))
          run_hodge(hodge_ops[i], hodge_args[i].a, hodge_args[i].b,
                    hodge_args[i].c, hodge_args[i].factors, hodge_args[i].json);
    } else if (app.got_subcommand(roots)) {
      run_roots(roots_series, roots_rank, roots_half, roots_nu, roots_json_flag);
    } else if (app.got_subcommand(lift)) {
      run_lift(lift_matrix, lift_target, lift_json_flag);
    } else if (app.got_subcommand(preset)) {
      run_preset_hyperkahler(preset_b2, preset_polarized, preset_json_flag);
    }
  } catch (const ks::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ks::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ks::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "doctest.h"

#include <random>

#include "ks/ksclassify.hpp"

#include "oracles.hpp"

using namespace ks;

namespace {

SquareClass sc(long v) { return square_class(Rat(v)); }

}  // namespace

TEST_CASE("case selection from parity and square class") {
  CHECK(classify(7, sc(5)).label == KSCase::odd);
  CHECK(classify(7, sc(-5)).label == KSCase::odd);
  // n = 6: (-1)^3 * delta.
  CHECK(classify(6, sc(-1)).label == KSCase::even_square);
  CHECK(classify(6, sc(1)).label == KSCase::even_nonsquare);
  // n = 4: (-1)^2 * delta.
  CHECK(classify(4, sc(-1)).label == KSCase::even_nonsquare);
  CHECK(classify(4, sc(1)).label == KSCase::even_square);
  CHECK(classify(4, sc(2)).label == KSCase::even_nonsquare);
  CHECK_THROWS_AS(classify(2, sc(1)), DomainError);
  CHECK_THROWS_AS(classify(0, sc(1)), DomainError);
}

TEST_CASE("branch data for the paper's worked inputs") {
  SUBCASE("n=6, delta=-1: the 4-torus example") {
    const KSReport r = classify(6, sc(-1));
    CHECK(r.label == KSCase::even_square);
    CHECK(r.branches[0].r == 1);
    CHECK(r.branches[0].distinct_factors == 2);
    CHECK(r.branches[0].factor_dim == 4);
    CHECK(r.branches[0].multiplicity == 4);
    CHECK(r.branches[1].r == 2);
    CHECK(r.branches[1].distinct_factors == 2);
    CHECK(r.branches[1].factor_dim == 8);
    CHECK(r.branches[1].multiplicity == 2);
    CHECK(r.torus_bound == 2);
  }
  SUBCASE("n=7: odd case") {
    const KSReport r = classify(7, sc(3));
    CHECK(r.branches[0].distinct_factors == 1);
    CHECK(r.branches[0].factor_dim == 8);
    CHECK(r.branches[0].multiplicity == 8);
    CHECK(r.branches[1].factor_dim == 16);
    CHECK(r.branches[1].multiplicity == 4);
    CHECK(r.torus_bound == 4);
  }
  SUBCASE("n=4, delta=-1: even nonsquare") {
    const KSReport r = classify(4, sc(-1));
    CHECK(r.branches[0].factor_dim == 4);
    CHECK(r.branches[0].multiplicity == 2);
    CHECK(r.branches[1].factor_dim == 8);
    CHECK(r.branches[1].multiplicity == 1);
    CHECK(r.torus_bound == 2);
  }
}

TEST_CASE("conservation and bound consistency for n = 3..16") {
  for (int n = 3; n <= 16; ++n) {
    for (long delta : {1L, -1L, 2L, -2L, 3L, -6L}) {
      const KSReport r = classify(n, sc(delta));
      const Int even_dim = pow2(n - 1);
      Int min_dim = 0;
      for (const KSBranch& b : r.branches) {
        CHECK(Int(b.distinct_factors) * b.factor_dim * b.multiplicity ==
              even_dim);
        if (min_dim == 0 || b.factor_dim < min_dim) min_dim = b.factor_dim;
      }
      CHECK(r.torus_bound * 2 == min_dim);
      CHECK(torus_bound(n, sc(delta)) == r.torus_bound);
    }
  }
}

TEST_CASE("torus bound formulas") {
  CHECK(torus_bound(21, sc(1)) == 512);  // 2^((n-3)/2)
  CHECK(torus_bound(6, sc(-1)) == 2);    // even square: 2^(n/2-2)
  CHECK(torus_bound(6, sc(1)) == 4);     // even nonsquare: 2^(n/2-1)
}

TEST_CASE("bound grows with n within each case family") {
  for (int n = 3; n + 2 <= 31; n += 2)
    CHECK(torus_bound(n + 2, sc(1)) > torus_bound(n, sc(1)));
  for (int n = 4; n + 2 <= 30; n += 2) {
    // Same case at n and n+2 requires flipping the sign of delta.
    const SquareClass keep_square = (n / 2) % 2 == 1 ? sc(-1) : sc(1);
    const SquareClass flip_square = (n / 2) % 2 == 1 ? sc(1) : sc(-1);
    CHECK(classify(n, keep_square).label == KSCase::even_square);
    CHECK(classify(n + 2, flip_square).label == KSCase::even_square);
    CHECK(torus_bound(n + 2, flip_square) > torus_bound(n, keep_square));
    CHECK(classify(n, flip_square).label == KSCase::even_nonsquare);
    CHECK(classify(n + 2, keep_square).label == KSCase::even_nonsquare);
    CHECK(torus_bound(n + 2, keep_square) > torus_bound(n, flip_square));
  }
}

TEST_CASE("classify_from_gram pipeline") {
  SUBCASE("three hyperbolic planes reproduce the worked example") {
    ClassifyOptions options;
    options.run_oracle = true;
    const auto result =
        classify_from_gram(QuadraticSpace::hyperbolic_planes(3), options);
    CHECK(result.report.n == 6);
    CHECK(result.report.delta.rep == -1);
    CHECK(result.report.label == KSCase::even_square);
    CHECK(result.signature == std::pair<int, int>{3, 3});
    CHECK(result.warnings.empty());
    CHECK(result.oracle_checked);
    REQUIRE(result.oracle_split.has_value());
    CHECK(*result.oracle_split == true);
  }
  SUBCASE("diag(1,1,1,-1) lands in the nonsquare case") {
    const auto result = classify_from_gram(
        QuadraticSpace::diagonal({Rat(1), Rat(1), Rat(1), Rat(-1)}));
    CHECK(result.report.n == 4);
    CHECK(result.report.delta.rep == -1);
    CHECK(result.report.label == KSCase::even_nonsquare);
    CHECK_FALSE(result.oracle_checked);
  }
  SUBCASE("negative definite form warns about the missing 2-plane") {
    const auto result = classify_from_gram(
        QuadraticSpace::diagonal({Rat(-1), Rat(-1), Rat(-1)}));
    CHECK(result.report.label == KSCase::odd);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("no positive-definite 2-plane") !=
          std::string::npos);
  }
  SUBCASE("splitness hint selects a branch") {
    ClassifyOptions options;
    options.quaternion_split = true;
    const auto split =
        classify_from_gram(QuadraticSpace::hyperbolic_planes(3), options);
    CHECK(split.report.selected_r == 1);
    options.quaternion_split = false;
    const auto nonsplit =
        classify_from_gram(QuadraticSpace::hyperbolic_planes(3), options);
    CHECK(nonsplit.report.selected_r == 2);
  }
}

TEST_CASE("oracle agreement on random diagonal forms") {
  std::mt19937_64 rng(701);
  ClassifyOptions options;
  options.run_oracle = true;
  for (int n : {4, 6, 8}) {
    for (int trial = 0; trial < 10; ++trial) {
      const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
      const QuadraticSpace space = QuadraticSpace::diagonal(d.coeffs);
      // classify_from_gram throws InternalError on any oracle mismatch.
      const auto result = classify_from_gram(space, options);
      CHECK(result.oracle_checked);
      REQUIRE(result.oracle_split.has_value());
      CHECK(*result.oracle_split ==
            (result.report.label == KSCase::even_square));
    }
  }
}

TEST_CASE("classification depends only on the square class") {
  std::mt19937_64 rng(709);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const QuadraticSpace space = ks::testing::random_space(rng, n);
    const auto base = classify_from_gram(space);

    // Rescale the form by a nonzero square.
    const Rat scale =
        ks::testing::random_nonzero_rational(rng) * ks::testing::random_nonzero_rational(rng);
    linalg::QMatrix scaled = space.gram();
    for (auto& row : scaled)
      for (Rat& v : row) v *= scale * scale;
    const auto rescaled = classify_from_gram(QuadraticSpace(n, scaled));

    CHECK(rescaled.report.label == base.report.label);
    CHECK(rescaled.report.delta == base.report.delta);
    CHECK(rescaled.report.torus_bound == base.report.torus_bound);
  }
}

TEST_CASE("hyperkahler presets") {
  SUBCASE("b2 odd, unpolarized: odd case") {
    const auto r = hyperkahler_preset(7, false);
    CHECK(r.n == 7);
    CHECK(r.sign_determines_case);
    REQUIRE(r.readings.size() == 1);
    CHECK(r.readings[0].label == KSCase::odd);
    CHECK(r.readings[0].branches[0].factor_dim == 8);   // 2^((b2-1)/2)
    CHECK(r.readings[0].branches[1].factor_dim == 16);  // 2^((b2+1)/2)
  }
  SUBCASE("b2 divisible by 4, unpolarized: nonsquare case") {
    const auto r = hyperkahler_preset(8, false);
    CHECK(r.n == 8);
    CHECK(r.delta_sign == -1);
    CHECK(r.sign_determines_case);
    REQUIRE(r.readings.size() == 1);
    CHECK(r.readings[0].label == KSCase::even_nonsquare);
    CHECK(r.readings[0].branches[0].factor_dim == 16);  // 2^(b2/2)
    CHECK(r.readings[0].branches[1].factor_dim == 32);  // 2^(b2/2+1)
  }
  SUBCASE("b2 even, polarized: odd case on n = b2-1") {
    const auto r = hyperkahler_preset(22, true);
    CHECK(r.n == 21);
    CHECK(r.sign_determines_case);
    REQUIRE(r.readings.size() == 1);
    CHECK(r.readings[0].label == KSCase::odd);
    CHECK(r.readings[0].branches[0].factor_dim == 1024);  // 2^(b2/2-1)
    CHECK(r.readings[0].branches[1].factor_dim == 2048);  // 2^(b2/2)
  }
  SUBCASE("b2 = 3 mod 4, polarized: nonsquare case") {
    const auto r = hyperkahler_preset(23, true);
    CHECK(r.n == 22);
    CHECK(r.delta_sign == 1);
    CHECK(r.sign_determines_case);
    REQUIRE(r.readings.size() == 1);
    CHECK(r.readings[0].label == KSCase::even_nonsquare);
    CHECK(r.readings[0].branches[0].factor_dim == 2048);  // 2^((b2-1)/2)
    CHECK(r.readings[0].branches[1].factor_dim == 4096);  // 2^((b2+1)/2)
  }
  SUBCASE("indeterminate sign reports both candidate cases") {
    // b2 = 2 mod 4, unpolarized: (-1)^(n/2)*delta > 0.
    const auto r = hyperkahler_preset(6, false);
    CHECK_FALSE(r.sign_determines_case);
    REQUIRE(r.readings.size() == 2);
    CHECK(r.readings[0].label == KSCase::even_square);
    CHECK(r.readings[1].label == KSCase::even_nonsquare);
  }
  SUBCASE("published sub-case labels are recorded and consistent") {
    for (auto [b2, pol] : std::vector<std::pair<int, bool>>{
             {7, false}, {8, false}, {22, true}, {23, true}}) {
      const auto r = hyperkahler_preset(b2, pol);
      bool matched = false;
      for (const auto& note : r.notes)
        if (note.find("matches published sub-case") != std::string::npos)
          matched = true;
      CHECK(matched);
    }
  }
  CHECK_THROWS_AS(hyperkahler_preset(4, false), DomainError);
}

TEST_CASE("unpolarized preset agrees with a realized Gram matrix") {
  // Signature (3, b2-3) realized as diag(1,1,1,-1,...,-1); the preset's sign
  // reasoning must match the full pipeline whenever the sign decides.
  for (int b2 : {7, 8, 11, 12}) {
    std::vector<Rat> entries(b2, Rat(-1));
    entries[0] = entries[1] = entries[2] = Rat(1);
    const auto full = classify_from_gram(QuadraticSpace::diagonal(entries));
    const auto preset = hyperkahler_preset(b2, false);
    REQUIRE(preset.sign_determines_case);
    CHECK(preset.readings[0].label == full.report.label);
    CHECK(preset.readings[0].torus_bound == full.report.torus_bound);
  }
}

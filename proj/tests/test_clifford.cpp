#include "doctest.h"

#include <random>

#include "ks/clifford.hpp"

#include "oracles.hpp"

using namespace ks;

namespace {

DiagonalForm form(std::vector<Rat> coeffs) { return DiagonalForm{std::move(coeffs)}; }

CliffordElement random_element(std::mt19937_64& rng, int n, int terms) {
  CliffordElement out(n);
  std::uniform_int_distribution<BasisMask> mask(0, (BasisMask{1} << n) - 1);
  for (int t = 0; t < terms; ++t)
    out.add_term(mask(rng), ks::testing::random_nonzero_rational(rng));
  return out;
}

}  // namespace

TEST_CASE("defining relations") {
  const DiagonalForm d = form({Rat(7), Rat(-3)});
  const auto e1 = CliffordElement::generator(2, 1);
  const auto e2 = CliffordElement::generator(2, 2);

  CHECK(clifford_product(e1, e1, d) == CliffordElement::scalar(2, Rat(7)));
  CHECK(clifford_product(e2, e1, d) ==
        CliffordElement::basis(2, 0b11) * Rat(-1));
  CHECK(clifford_product(e1, e2, d) == CliffordElement::basis(2, 0b11));
}

TEST_CASE("(e1 e2)^2 for d=(1,-1) is +1") {
  const DiagonalForm d = form({Rat(1), Rat(-1)});
  const auto e12 = CliffordElement::basis(2, 0b11);
  // Independent route: literal generator-word reduction.
  const auto [coef, mask] = ks::testing::word_product(0b11, 0b11, d);
  REQUIRE(mask == 0);
  REQUIRE(coef == 1);
  CHECK(clifford_product(e12, e12, d) == CliffordElement::scalar(2, Rat(1)));
}

TEST_CASE("even_basis") {
  CHECK(even_basis(2) == std::vector<BasisMask>{0b00, 0b11});
  CHECK(even_basis(3).size() == 4);
  CHECK(even_basis(8).size() == 128);
  CHECK_THROWS_AS(even_basis(0), DomainError);
}

TEST_CASE("dimension_check") {
  CHECK(dimension_check(6) == std::pair<Int, Int>{64, 32});
  CHECK(dimension_check(1) == std::pair<Int, Int>{2, 1});
  CHECK(dimension_check(3) == std::pair<Int, Int>{8, 4});
  CHECK_THROWS_AS(dimension_check(0), DomainError);
}

TEST_CASE("sign rule matches generator-word expansion") {
  std::mt19937_64 rng(101);
  for (int n = 1; n <= 8; ++n) {
    const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
    std::uniform_int_distribution<BasisMask> mask(0, (BasisMask{1} << n) - 1);
    for (int trial = 0; trial < 50; ++trial) {
      const BasisMask s = mask(rng), t = mask(rng);
      const auto a = CliffordElement::basis(n, s);
      const auto b = CliffordElement::basis(n, t);
      CHECK(clifford_product(a, b, d) == ks::testing::expanded_product(a, b, d));
    }
  }
}

TEST_CASE("associativity on random basis triples") {
  std::mt19937_64 rng(103);
  for (int n = 1; n <= 8; ++n) {
    const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
    std::uniform_int_distribution<BasisMask> mask(0, (BasisMask{1} << n) - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = CliffordElement::basis(n, mask(rng));
      const auto b = CliffordElement::basis(n, mask(rng));
      const auto c = CliffordElement::basis(n, mask(rng));
      CHECK(clifford_product(clifford_product(a, b, d), c, d) ==
            clifford_product(a, clifford_product(b, c, d), d));
    }
  }
}

TEST_CASE("bilinearity and unit on random elements") {
  std::mt19937_64 rng(107);
  const int n = 5;
  const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
  const auto unit = CliffordElement::basis(n, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_element(rng, n, 4);
    const auto b = random_element(rng, n, 4);
    const auto c = random_element(rng, n, 3);
    CHECK(clifford_product(unit, a, d) == a);
    CHECK(clifford_product(a, unit, d) == a);
    CHECK(clifford_product(a + b, c, d) ==
          clifford_product(a, c, d) + clifford_product(b, c, d));
    CHECK(clifford_product(c, a + b, d) ==
          clifford_product(c, a, d) + clifford_product(c, b, d));
  }
}

TEST_CASE("even part is closed under multiplication") {
  std::mt19937_64 rng(109);
  for (int n : {2, 4, 6}) {
    const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
    const auto basis = even_basis(n);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = CliffordElement::basis(n, basis[pick(rng)]);
      const auto b = CliffordElement::basis(n, basis[pick(rng)]);
      const auto product = clifford_product(a, b, d);
      for (const auto& [mask, coef] : product.coords())
        CHECK(std::popcount(mask) % 2 == 0);
    }
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const DiagonalForm d = form({Rat(1), Rat(1)});
  const auto a = CliffordElement::generator(2, 1);
  const auto b = CliffordElement::generator(3, 1);
  CHECK_THROWS_AS(clifford_product(a, b, d), DomainError);
  const DiagonalForm d3 = form({Rat(1), Rat(1), Rat(1)});
  CHECK_THROWS_AS(
      clifford_product(a, CliffordElement::generator(2, 2), d3), DomainError);
}

TEST_CASE("even_center fixed examples") {
  SUBCASE("d=(1,1): nonsplit") {
    const auto report = even_center(form({Rat(1), Rat(1)}));
    CHECK(report.dim == 2);
    REQUIRE(report.split.has_value());
    CHECK(*report.split == false);
    // The central line outside the scalars squares to -1.
    const DiagonalForm d = form({Rat(1), Rat(1)});
    const auto e12 = CliffordElement::basis(2, 0b11);
    CHECK(clifford_product(e12, e12, d) == CliffordElement::scalar(2, Rat(-1)));
  }
  SUBCASE("d=(1,-1): split") {
    const auto report = even_center(form({Rat(1), Rat(-1)}));
    CHECK(report.dim == 2);
    REQUIRE(report.split.has_value());
    CHECK(*report.split == true);
  }
  SUBCASE("d=(1,1,1): center is the scalars") {
    const auto report = even_center(form({Rat(1), Rat(1), Rat(1)}));
    CHECK(report.dim == 1);
    CHECK_FALSE(report.split.has_value());
  }
}

TEST_CASE("even_center dimension bound") {
  std::vector<Rat> big(9, Rat(1));
  CHECK_THROWS_AS(even_center(DiagonalForm{big}), DomainError);
  CHECK_NOTHROW(even_center(DiagonalForm{big}, 9));
}

TEST_CASE("center basis really is central") {
  std::mt19937_64 rng(113);
  for (int n = 1; n <= 6; ++n) {
    const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
    const auto report = even_center(d);
    CHECK(report.dim == (n % 2 == 0 ? 2 : 1));
    for (const auto& z : report.basis)
      for (const BasisMask g : even_basis(n)) {
        const auto other = CliffordElement::basis(n, g);
        CHECK(clifford_product(z, other, d) == clifford_product(other, z, d));
      }
  }
}

TEST_CASE("center splitness equals the square-class criterion") {
  // The theorem-level cross-check: for even n, the even Clifford center
  // splits iff (-1)^(n/2) * (product of d_i) is a square.
  std::mt19937_64 rng(127);
  for (int n : {2, 4, 6}) {
    for (int trial = 0; trial < 20; ++trial) {
      const DiagonalForm d = ks::testing::random_unit_diagonal(rng, n);
      Rat prod = 1;
      for (const Rat& c : d.coeffs) prod *= c;
      if ((n / 2) % 2 == 1) prod = -prod;
      const bool square = square_class(prod).is_square();
      const auto report = even_center(d);
      REQUIRE(report.split.has_value());
      CHECK(*report.split == square);
    }
  }
}

TEST_CASE("element text round trip") {
  const CliffordElement a =
      parse_clifford_element("1/2*e{1,3} + e{} - 4*e{2}", 3);
  CHECK(a.coefficient(0b101) == Rat(1, 2));
  CHECK(a.coefficient(0) == 1);
  CHECK(a.coefficient(0b010) == -4);
  CHECK(parse_clifford_element(to_string(a), 3) == a);
  CHECK(to_string(CliffordElement(2)) == "0");

  CHECK_THROWS_AS(parse_clifford_element("e{2,1}", 3), ParseError);
  CHECK_THROWS_AS(parse_clifford_element("e{4}", 3), ParseError);
  CHECK_THROWS_AS(parse_clifford_element("", 3), ParseError);
  CHECK_THROWS_AS(parse_clifford_element("1 +", 3), ParseError);
}

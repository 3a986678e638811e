#include "cfield/expr.hpp"
#include "cfield/factor.hpp"
#include "cfield/upoly.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace cfield;

namespace {

UniPoly random_poly(oracle::Rng& rng, int deg, long bound) {
  std::vector<BigRational> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(rng.range(-bound, bound));
  if (c.back().is_zero()) c.back() = BigRational(1);
  return UniPoly(c);
}

oracle::QPoly to_q(const UniPoly& p) {
  oracle::QPoly q;
  for (auto& c : p.coeffs()) q.push_back(c.raw());
  return q;
}

oracle::ZPoly to_z(const UniPoly& p) {
  IntegerForm f = integer_form(p);
  return oracle::ZPoly(f.primitive.begin(), f.primitive.end());
}

UniPoly P(const std::string& s) { return parse_rational_poly(s); }

}  // namespace

TEST_CASE("rationals stay in lowest terms") {
  BigRational a(BigInt(6), BigInt(-4));
  CHECK(a.numerator() == -3);
  CHECK(a.denominator() == 2);
  CHECK(BigRational::parse("-6/4") == a);
  CHECK((a + BigRational(3, 2)).is_zero());
  CHECK(a.inverse() == BigRational(BigInt(-2), BigInt(3)));
  CHECK(BigRational(2).pow(10) == BigRational(1024));
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), DivisionByZero);
  CHECK_THROWS_AS(BigRational(0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(BigRational(BigInt(1), BigInt(0)), DivisionByZero);
  CHECK(BigRational(-1) < BigRational(1, 3));
}

TEST_CASE("polynomial parsing and printing") {
  UniPoly p = P("x^4 - 10x^2 + 1");
  CHECK(p == UniPoly({1, 0, -10, 0, 1}));
  CHECK(P("(x+1)^2") == UniPoly({1, 2, 1}));
  CHECK(P("x/2 + 1/3").coeff(1) == BigRational(1, 2));
  CHECK(parse_rational_poly(p.str()) == p);
  CHECK_THROWS_AS(P("x^"), ParseError);
  CHECK_THROWS_AS(P("y + 1"), ParseError);
}

TEST_CASE("division with remainder, seeded") {
  oracle::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    UniPoly a = random_poly(rng, static_cast<int>(rng.range(0, 9)), 20);
    UniPoly b = random_poly(rng, static_cast<int>(rng.range(0, 5)), 20);
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
  CHECK_THROWS_AS(divmod(UniPoly({1, 1}), UniPoly()), DivisionByZero);
}

TEST_CASE("extended gcd identity and common factors, seeded") {
  oracle::Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    UniPoly c = random_poly(rng, static_cast<int>(rng.range(0, 3)), 5);
    UniPoly a = c * random_poly(rng, static_cast<int>(rng.range(0, 4)), 9);
    UniPoly b = c * random_poly(rng, static_cast<int>(rng.range(0, 4)), 9);
    ExtendedGcd e = extended_gcd(a, b);
    CHECK(e.s * a + e.t * b == e.g);
    CHECK(e.g == gcd(a, b));
    CHECK(divmod(a, e.g).second.is_zero());
    CHECK(divmod(b, e.g).second.is_zero());
    CHECK(divmod(e.g, c.monic()).second.is_zero());
  }
}

TEST_CASE("resultant agrees with the Sylvester determinant, seeded") {
  oracle::Rng rng(13);
  for (int k = 0; k < 120; ++k) {
    UniPoly p = random_poly(rng, static_cast<int>(rng.range(1, 6)), 12);
    UniPoly q = random_poly(rng, static_cast<int>(rng.range(1, 6)), 12);
    if (k % 5 == 0) q = q * p;  // common factor: resultant zero
    CHECK(resultant(p, q).raw() == oracle::sylvester_resultant(to_q(p), to_q(q)));
  }
  CHECK_THROWS_AS(resultant(UniPoly(), UniPoly({1, 1})), AlgebraError);
}

TEST_CASE("squarefree decomposition reassembles, seeded") {
  oracle::Rng rng(14);
  for (int k = 0; k < 60; ++k) {
    UniPoly a = random_poly(rng, static_cast<int>(rng.range(1, 3)), 6);
    UniPoly b = random_poly(rng, static_cast<int>(rng.range(1, 3)), 6);
    UniPoly p = a * a * a * b * BigRational(7);
    auto dec = squarefree_decomposition(p);
    UniPoly prod = UniPoly::constant(p.lead());
    for (auto& [s, m] : dec) {
      CHECK(gcd(s, s.derivative()).degree() == 0);
      for (int i = 0; i < m; ++i) prod = prod * s;
    }
    CHECK(prod == p);
    CHECK(squarefree_part(p) == squarefree_part(a * b));
  }
}

TEST_CASE("Kronecker oracle finds factors of known reducibles") {
  CHECK(oracle::kronecker_has_factor(to_z(P("(x^2+1)(x^2+x+3)"))));
  CHECK(oracle::kronecker_has_factor(to_z(P("(x^3-2)(x^2-3)"))));
  CHECK(oracle::kronecker_has_factor(to_z(P("(2x-1)(x^4+1)"))));
  CHECK_FALSE(oracle::kronecker_has_factor(to_z(P("x^4-10x^2+1"))));
  CHECK_FALSE(oracle::kronecker_has_factor(to_z(P("x^5-x-1"))));
}

TEST_CASE("factorisation over Q: known cases") {
  Factorization f = factor_over_Q(P("x^4-10x^2+1"));
  CHECK(f.count() == 1);
  f = factor_over_Q(P("2x^6 - 2"));
  CHECK(f.unit == BigRational(2));
  CHECK(f.count() == 4);  // (x-1)(x+1)(x^2+x+1)(x^2-x+1)
  CHECK(f.product() == P("2x^6 - 2"));
  // Swinnerton-Dyer polynomial for 2, 3, 5: irreducible but reducible mod every prime.
  UniPoly sd = P("x^8 - 40x^6 + 352x^4 - 960x^2 + 576");
  CHECK(is_irreducible_over_Q(sd));
  f = factor_over_Q(P("(x^2-2)^3 (x^3-2) (x+1/2)"));
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == P("x + 1/2"));
  CHECK(f.factors[1].second == 3);
  CHECK_THROWS_AS(factor_over_Q(UniPoly({5})), AlgebraError);
}

TEST_CASE("factorisation over Q agrees with Kronecker, seeded") {
  oracle::Rng rng(15);
  for (int k = 0; k < 80; ++k) {
    UniPoly p = random_poly(rng, static_cast<int>(rng.range(2, 4)), 4);
    if (k % 2 == 0) p = p * random_poly(rng, static_cast<int>(rng.range(1, 2)), 4);
    if (squarefree_part(p).degree() != p.degree()) continue;
    Factorization f = factor_over_Q(p);
    CHECK(f.product() == p);
    for (auto& [g, m] : f.factors) {
      CHECK(g == g.monic());
      CHECK_FALSE(oracle::kronecker_has_factor(to_z(g)));
    }
    CHECK(is_irreducible_over_Q(p) == !oracle::kronecker_has_factor(to_z(p)));
  }
}

TEST_CASE("restricted factor search") {
  UniPoly p = P("(x^2-2)(x^2-3)(x^3-5)(x-7)");
  auto quads = squarefree_factors_over_Q(p, 2);
  CHECK(quads.size() == 2);
  CHECK(squarefree_factors_over_Q(p, 2, 1).size() == 1);
  CHECK(squarefree_factors_over_Q(p, 3).at(0) == P("x^3-5"));
}

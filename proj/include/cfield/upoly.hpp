#pragma once

#include "cfield/rational.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace cfield {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<BigRational> coeffs);
  UniPoly(std::initializer_list<long> coeffs);

  static UniPoly constant(const BigRational& c);
  static UniPoly monomial(const BigRational& c, std::size_t deg);
  static UniPoly x() { return monomial(BigRational(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<BigRational>& coeffs() const { return c_; }
  BigRational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRational(); }
  const BigRational& lead() const;

  UniPoly monic() const;
  UniPoly derivative() const;
  /// p(q(x)).
  UniPoly compose(const UniPoly& q) const;
  /// p(x + a).
  UniPoly shift(const BigRational& a) const;
  /// p(c x).
  UniPoly scale_var(const BigRational& c) const;
  BigRational eval(const BigRational& at) const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const BigRational& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const BigRational& s) { return a *= s; }
  friend UniPoly operator*(const BigRational& s, UniPoly a) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigRational> c_;
};

/// Canonical polynomial order: by degree, then coefficients from the
/// constant term upward.
std::strong_ordering canonical_compare(const UniPoly& a, const UniPoly& b);

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero when both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct ExtendedGcd {
  UniPoly g, s, t;  // s*a + t*b = g, g monic
};
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);

/// Resultant over Q. Throws AlgebraError on a zero input.
BigRational resultant(const UniPoly& p, const UniPoly& q);

/// Monic squarefree part: same roots, each simple.
UniPoly squarefree_part(const UniPoly& p);
/// Yun decomposition: monic squarefree factors s_i with p = c * prod s_i^i.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);

/// p = scale * primitive, with primitive in Z[x] having positive leading
/// coefficient and content 1.
struct IntegerForm {
  BigRational scale;
  std::vector<BigInt> primitive;
};
IntegerForm integer_form(const UniPoly& p);
UniPoly from_integers(const std::vector<BigInt>& c);

}  // namespace cfield

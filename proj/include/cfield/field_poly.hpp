#pragma once

#include "cfield/number_field.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace cfield {

/// Dense univariate polynomial with coefficients in a NumberField.
class FieldPoly {
 public:
  FieldPoly() = default;
  /// Zero polynomial over f.
  explicit FieldPoly(FieldPtr f) : f_(std::move(f)) {}
  FieldPoly(FieldPtr f, std::vector<FieldElement> coeffs);
  /// Rational polynomial viewed over f.
  FieldPoly(FieldPtr f, const UniPoly& p);

  static FieldPoly x(const FieldPtr& f);
  static FieldPoly constant(const FieldElement& c);
  /// X - r.
  static FieldPoly linear(const FieldElement& r);

  const FieldPtr& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(std::size_t i) const;
  const FieldElement& lead() const;
  /// True when every coefficient is rational.
  bool is_rational() const;
  UniPoly to_rational() const;

  FieldPoly monic() const;
  FieldPoly derivative() const;
  FieldElement eval(const FieldElement& x) const;
  /// p(X + a).
  FieldPoly shift(const FieldElement& a) const;
  /// Applies an embedding to every coefficient.
  FieldPoly map(const class FieldEmbedding& e) const;

  FieldPoly operator-() const;
  FieldPoly& operator+=(const FieldPoly& o);
  FieldPoly& operator-=(const FieldPoly& o);
  friend FieldPoly operator+(FieldPoly a, const FieldPoly& b) { return a += b; }
  friend FieldPoly operator-(FieldPoly a, const FieldPoly& b) { return a -= b; }
  friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);
  friend FieldPoly operator*(const FieldPoly& a, const FieldElement& s);
  friend bool operator==(const FieldPoly& a, const FieldPoly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

  std::string str(const std::string& var = "X", const std::string& theta = "t") const;

 private:
  void trim();
  FieldPtr f_;
  std::vector<FieldElement> c_;
};

/// Degree first, then coefficients (canonical element order) from the
/// constant term upward.
std::strong_ordering canonical_compare(const FieldPoly& a, const FieldPoly& b);

std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& a, const FieldPoly& b);
/// Remainder of a rational polynomial modulo b, by Horner's rule.
FieldPoly rem_rational(const UniPoly& a, const FieldPoly& b);
FieldPoly gcd(const FieldPoly& a, const FieldPoly& b);
/// Monic squarefree factors s_i with p = lc * prod s_i^i.
std::vector<std::pair<FieldPoly, int>> squarefree_decomposition(const FieldPoly& p);
FieldPoly squarefree_part(const FieldPoly& p);

/// Norm N(p) = prod over the conjugates of the coefficient field, a
/// rational polynomial of degree [F:Q] * deg p. Computed by evaluation
/// and interpolation modulo word-size primes with a proven coefficient
/// bound.
UniPoly norm(const FieldPoly& p);

}  // namespace cfield

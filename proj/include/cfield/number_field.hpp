#pragma once

#include "cfield/rational.hpp"
#include "cfield/upoly.hpp"

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace cfield {

class NumberField;
class FieldElement;
using FieldPtr = std::shared_ptr<const NumberField>;

/// One step of the tower a field was built from: a generator and its
/// minimal polynomial over the field generated by the earlier steps.
/// Everything is written in coordinates of the field's current power basis.
struct TowerStep {
  std::vector<BigRational> generator;
  std::vector<std::vector<BigRational>> relative_min_poly;  // ascending, monic
};

/// Q(theta) with theta a root of a monic integral irreducible polynomial.
/// Fields are compared by identity: two separately built copies of the
/// same field are different objects, related only through embeddings.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  struct Token;  // restricts construction to the factories below

  /// The rational field, as a degree-1 field with theta = 0.
  static FieldPtr rationals();
  /// Q(alpha) for alpha a root of p (irreducibility is verified). If p is
  /// not integral after making it monic, theta = c * alpha for a small
  /// positive integer c that clears the denominators; alpha is recorded as
  /// the first tower generator.
  static FieldPtr create(const UniPoly& p);
  /// Builds a field directly from a monic integral irreducible polynomial
  /// and a tower history, without re-verifying irreducibility.
  static FieldPtr create_trusted(const UniPoly& theta_min_poly, std::vector<TowerStep> log);
  /// Small positive c with p(x / c) * c^deg integral, for monic p.
  static BigInt integral_scale(const UniPoly& monic_p);

  NumberField(Token, UniPoly theta_min_poly, std::vector<TowerStep> log);

  int degree() const { return n_; }
  const UniPoly& min_poly() const { return m_; }
  const std::vector<BigInt>& min_poly_integral() const { return mz_; }
  const std::vector<TowerStep>& tower_log() const { return log_; }
  /// Tower generators as elements.
  std::vector<FieldElement> tower_generators() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement theta() const;
  FieldElement from_rational(const BigRational& r) const;
  FieldElement from_coords(const std::vector<BigRational>& coords) const;
  /// p(theta).
  FieldElement from_poly(const UniPoly& p) const;

  bool is_rationals() const { return n_ == 1; }
  FieldPtr ptr() const { return shared_from_this(); }

 private:
  int n_;
  UniPoly m_;
  std::vector<BigInt> mz_;
  std::vector<TowerStep> log_;
};

/// Element of a NumberField. Stored as an integer numerator vector over a
/// positive common denominator in lowest terms.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr owner, std::vector<BigInt> num, BigInt den);

  const FieldPtr& owner() const { return owner_; }
  const NumberField& field() const { return *owner_; }
  bool valid() const { return owner_ != nullptr; }

  std::vector<BigRational> coords() const;
  BigRational coord(std::size_t i) const;
  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }
  UniPoly to_poly() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }
  FieldElement& operator*=(const BigRational& s);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator*(FieldElement a, const BigRational& s) { return a *= s; }
  friend FieldElement operator*(const BigRational& s, FieldElement a) { return a *= s; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement inverse() const;
  FieldElement pow(unsigned e) const;

  /// Minimal polynomial over Q (monic).
  UniPoly min_poly() const;

  /// Coordinate-vector string such as "[0, 1/2, 3]".
  std::string str() const;
  /// Polynomial in theta, e.g. "1/2*t^2 - 3".
  std::string poly_str(const std::string& var = "t") const;

 private:
  void normalize();
  void check_same(const FieldElement& o) const;

  FieldPtr owner_;
  std::vector<BigInt> num_;
  BigInt den_ = 1;
};

/// Canonical element order: lexicographic on coordinates.
std::strong_ordering canonical_compare(const FieldElement& a, const FieldElement& b);
struct CanonicalLess {
  bool operator()(const FieldElement& a, const FieldElement& b) const { return canonical_compare(a, b) < 0; }
};

/// p(x) for a rational polynomial p.
FieldElement eval_at(const UniPoly& p, const FieldElement& x);

/// Embedding determined by the image of theta.
class FieldEmbedding {
 public:
  FieldEmbedding() = default;
  /// Verifies that theta_image is a root of domain's theta polynomial.
  FieldEmbedding(FieldPtr domain, FieldPtr codomain, FieldElement theta_image);
  static FieldEmbedding identity(const FieldPtr& f);
  /// The unique embedding Q -> F.
  static FieldEmbedding from_rationals(const FieldPtr& f);

  const FieldPtr& domain() const { return dom_; }
  const FieldPtr& codomain() const { return cod_; }
  const FieldElement& theta_image() const { return img_; }

  FieldElement operator()(const FieldElement& x) const;
  /// this after first: x -> this(first(x)).
  FieldEmbedding after(const FieldEmbedding& first) const;
  /// An embedding between fields of equal degree is an isomorphism.
  bool is_surjective() const { return dom_->degree() == cod_->degree(); }
  /// Inverse of a surjective embedding.
  FieldEmbedding inverse() const;

  friend bool operator==(const FieldEmbedding& a, const FieldEmbedding& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.img_ == b.img_;
  }

 private:
  FieldPtr dom_, cod_;
  FieldElement img_;
};

}  // namespace cfield

#include "cfield/number_field.hpp"

#include "cfield/detail/field_modular.hpp"

#include "cfield/factor.hpp"
#include "cfield/linalg.hpp"

#include <sstream>

namespace cfield {

struct NumberField::Token {};

namespace {

std::vector<BigRational> unit_coords(int n, int i, const BigRational& v) {
  std::vector<BigRational> c(static_cast<std::size_t>(n));
  c[static_cast<std::size_t>(i)] = v;
  return c;
}

bool scaled_is_integral(const UniPoly& monic_p, const BigInt& c) {
  const int n = monic_p.degree();
  for (int i = 0; i < n; ++i) {
    BigRational v = monic_p.coeff(static_cast<std::size_t>(i)) * BigRational(c).pow(static_cast<unsigned>(n - i));
    if (!v.is_integer()) return false;
  }
  return true;
}

}  // namespace

NumberField::NumberField(Token, UniPoly theta_min_poly, std::vector<TowerStep> log)
    : n_(theta_min_poly.degree()), m_(std::move(theta_min_poly)), log_(std::move(log)) {
  for (auto& c : m_.coeffs()) {
    if (!c.is_integer()) throw AlgebraError("theta polynomial must be integral");
    mz_.push_back(c.numerator());
  }
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = std::make_shared<const NumberField>(Token{}, UniPoly::x(), std::vector<TowerStep>{});
  return q;
}

FieldPtr NumberField::create(const UniPoly& p) {
  if (p.degree() < 1) throw AlgebraError("defining polynomial must be nonconstant");
  if (!is_irreducible_over_Q(p)) throw AlgebraError("defining polynomial " + p.str() + " is reducible over Q");
  UniPoly mp = p.monic();
  if (mp.degree() == 1) {
    // Q itself; the generator is the rational root.
    TowerStep step{{-mp.coeff(0)}, {{mp.coeff(0)}, {BigRational(1)}}};
    return std::make_shared<const NumberField>(Token{}, UniPoly::x(), std::vector<TowerStep>{step});
  }
  BigInt c = integral_scale(mp);
  UniPoly theta_poly = mp.scale_var(BigRational(1, c)) * BigRational(c).pow(static_cast<unsigned>(mp.degree()));
  const int n = mp.degree();
  TowerStep step;
  step.generator = unit_coords(n, 1, BigRational(1, c));
  for (auto& a : mp.coeffs()) step.relative_min_poly.push_back(unit_coords(n, 0, a));
  return std::make_shared<const NumberField>(Token{}, theta_poly, std::vector<TowerStep>{step});
}

BigInt NumberField::integral_scale(const UniPoly& monic_p) {
  BigInt c = 1;
  for (auto& a : monic_p.coeffs()) mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), a.denominator().get_mpz_t());
  for (unsigned long q = 2; q < 1000; ++q) {
    while (mpz_divisible_ui_p(c.get_mpz_t(), q) && scaled_is_integral(monic_p, c / q)) c /= q;
  }
  return c;
}

FieldPtr NumberField::create_trusted(const UniPoly& theta_min_poly, std::vector<TowerStep> log) {
  if (theta_min_poly.degree() < 1 || !theta_min_poly.lead().is_one())
    throw AlgebraError("theta polynomial must be monic and nonconstant");
  return std::make_shared<const NumberField>(Token{}, theta_min_poly, std::move(log));
}

std::vector<FieldElement> NumberField::tower_generators() const {
  std::vector<FieldElement> out;
  for (auto& s : log_) out.push_back(from_coords(s.generator));
  return out;
}

FieldElement NumberField::zero() const { return from_rational(BigRational()); }
FieldElement NumberField::one() const { return from_rational(BigRational(1)); }

FieldElement NumberField::theta() const {
  if (n_ == 1) return from_rational(-m_.coeff(0));
  return from_coords(unit_coords(n_, 1, BigRational(1)));
}

FieldElement NumberField::from_rational(const BigRational& r) const {
  std::vector<BigInt> num(static_cast<std::size_t>(n_), BigInt(0));
  num[0] = r.numerator();
  return FieldElement(ptr(), std::move(num), r.denominator());
}

FieldElement NumberField::from_coords(const std::vector<BigRational>& coords) const {
  if (coords.size() != static_cast<std::size_t>(n_)) throw AlgebraError("coordinate vector of wrong length");
  BigInt den = 1;
  for (auto& c : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<BigInt> num;
  num.reserve(coords.size());
  for (auto& c : coords) num.push_back(c.numerator() * (den / c.denominator()));
  return FieldElement(ptr(), std::move(num), den);
}

FieldElement NumberField::from_poly(const UniPoly& p) const {
  if (n_ == 1) return from_rational(p.eval(-m_.coeff(0)));
  return eval_at(p, theta());
}

FieldElement::FieldElement(FieldPtr owner, std::vector<BigInt> num, BigInt den)
    : owner_(std::move(owner)), num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw DivisionByZero();
  normalize();
}

void FieldElement::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  BigInt g = den_;
  for (auto& x : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (g != 1) {
    for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void FieldElement::check_same(const FieldElement& o) const {
  if (owner_ != o.owner_) throw AlgebraError("elements belong to different fields");
}

std::vector<BigRational> FieldElement::coords() const {
  std::vector<BigRational> out;
  out.reserve(num_.size());
  for (auto& x : num_) out.emplace_back(x, den_);
  return out;
}

BigRational FieldElement::coord(std::size_t i) const { return BigRational(num_.at(i), den_); }

UniPoly FieldElement::to_poly() const { return UniPoly(coords()); }

bool FieldElement::is_zero() const {
  for (auto& x : num_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

bool FieldElement::is_one() const { return is_rational() && num_[0] == den_; }

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const BigRational& s) {
  for (auto& x : num_) x *= s.numerator();
  den_ *= s.denominator();
  normalize();
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  const std::size_t n = num_.size();
  const auto& m = owner_->min_poly_integral();
  std::vector<BigInt> r(2 * n - 1, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (o.num_[j] != 0) mpz_addmul(r[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
  }
  for (std::size_t k = 2 * n - 1; k-- > n;) {
    if (r[k] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (m[j] != 0) mpz_submul(r[k - n + j].get_mpz_t(), r[k].get_mpz_t(), m[j].get_mpz_t());
  }
  r.resize(n);
  num_ = std::move(r);
  den_ *= o.den_;
  normalize();
  return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.owner_ == b.owner_ && a.den_ == b.den_ && a.num_ == b.num_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return owner_->from_rational(coord(0).inverse());
  if (owner_->degree() >= 6) return detail::inverse_multimodular(*this);
  ExtendedGcd eg = extended_gcd(to_poly(), owner_->min_poly());
  return owner_->from_poly(eg.s);
}

FieldElement FieldElement::pow(unsigned e) const {
  FieldElement result = owner_->one();
  FieldElement base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

UniPoly FieldElement::min_poly() const {
  const int n = owner_->degree();
  LinearSpan span(static_cast<std::size_t>(n));
  FieldElement pw = owner_->one();
  for (int k = 0; k <= n; ++k) {
    auto rel = span.add(pw.coords());
    if (rel) {
      std::vector<BigRational> c;
      for (auto& x : *rel) c.push_back(-x);
      c.emplace_back(1);
      return UniPoly(std::move(c));
    }
    pw *= *this;
  }
  throw AlgebraError("minimal polynomial search did not terminate");
}

std::string FieldElement::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) os << ", ";
    os << BigRational(num_[i], den_);
  }
  os << "]";
  return os.str();
}

std::string FieldElement::poly_str(const std::string& var) const { return to_poly().str(var); }

std::strong_ordering canonical_compare(const FieldElement& a, const FieldElement& b) {
  if (a.owner() != b.owner()) throw AlgebraError("elements belong to different fields");
  for (std::size_t i = 0; i < a.numerators().size(); ++i) {
    int c = cmp(a.numerators()[i] * b.denominator(), b.numerators()[i] * a.denominator());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

FieldElement eval_at(const UniPoly& p, const FieldElement& x) {
  FieldElement r = x.field().zero();
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    r *= x;
    r += x.field().from_rational(c[i]);
  }
  return r;
}

FieldEmbedding::FieldEmbedding(FieldPtr domain, FieldPtr codomain, FieldElement theta_image)
    : dom_(std::move(domain)), cod_(std::move(codomain)), img_(std::move(theta_image)) {
  if (img_.owner() != cod_) throw AlgebraError("theta image is not in the codomain");
  if (!eval_at(dom_->min_poly(), img_).is_zero())
    throw AlgebraError("theta image is not a root of the domain's defining polynomial");
}

FieldEmbedding FieldEmbedding::identity(const FieldPtr& f) { return FieldEmbedding(f, f, f->theta()); }

FieldEmbedding FieldEmbedding::from_rationals(const FieldPtr& f) {
  return FieldEmbedding(NumberField::rationals(), f, f->zero());
}

FieldElement FieldEmbedding::operator()(const FieldElement& x) const {
  if (x.owner() != dom_) throw AlgebraError("element is not in the embedding's domain");
  if (x.is_rational()) return cod_->from_rational(x.coord(0));
  return eval_at(x.to_poly(), img_);
}

FieldEmbedding FieldEmbedding::after(const FieldEmbedding& first) const {
  if (first.cod_ != dom_) throw AlgebraError("embeddings do not compose");
  return FieldEmbedding(first.dom_, cod_, (*this)(first.img_));
}

FieldEmbedding FieldEmbedding::inverse() const {
  if (!is_surjective()) throw AlgebraError("embedding is not surjective");
  const int n = cod_->degree();
  LinearSpan span(static_cast<std::size_t>(n));
  FieldElement pw = cod_->one();
  for (int k = 0; k < n; ++k) {
    span.add(pw.coords());
    pw *= img_;
  }
  auto c = span.express(cod_->theta().coords());
  return FieldEmbedding(cod_, dom_, dom_->from_poly(UniPoly(*c)));
}

}  // namespace cfield

#include "cfield/field_poly.hpp"

#include "cfield/detail/field_modular.hpp"
#include "cfield/detail/modular.hpp"

#include <sstream>

namespace cfield {

FieldPoly::FieldPoly(FieldPtr f, std::vector<FieldElement> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (auto& c : c_)
    if (c.owner() != f_) throw AlgebraError("polynomial coefficient from a different field");
  trim();
}

FieldPoly::FieldPoly(FieldPtr f, const UniPoly& p) : f_(std::move(f)) {
  for (auto& c : p.coeffs()) c_.push_back(f_->from_rational(c));
  trim();
}

FieldPoly FieldPoly::x(const FieldPtr& f) { return FieldPoly(f, {f->zero(), f->one()}); }

FieldPoly FieldPoly::constant(const FieldElement& c) { return FieldPoly(c.owner(), {c}); }

FieldPoly FieldPoly::linear(const FieldElement& r) { return FieldPoly(r.owner(), {-r, r.field().one()}); }

void FieldPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement FieldPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }

const FieldElement& FieldPoly::lead() const {
  if (c_.empty()) throw AlgebraError("leading coefficient of the zero polynomial");
  return c_.back();
}

bool FieldPoly::is_rational() const {
  for (auto& c : c_)
    if (!c.is_rational()) return false;
  return true;
}

UniPoly FieldPoly::to_rational() const {
  std::vector<BigRational> v;
  for (auto& c : c_) {
    if (!c.is_rational()) throw AlgebraError("polynomial has irrational coefficients");
    v.push_back(c.coord(0));
  }
  return UniPoly(std::move(v));
}

FieldPoly FieldPoly::monic() const {
  if (is_zero() || lead().is_one()) return *this;
  return *this * lead().inverse();
}

FieldPoly FieldPoly::derivative() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * BigRational(static_cast<long>(i)));
  return FieldPoly(f_, std::move(d));
}

FieldElement FieldPoly::eval(const FieldElement& x) const {
  FieldElement r = f_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) {
    r *= x;
    r += c_[i];
  }
  return r;
}

FieldPoly FieldPoly::shift(const FieldElement& a) const {
  std::vector<FieldElement> c = c_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  return FieldPoly(f_, std::move(c));
}

FieldPoly FieldPoly::map(const FieldEmbedding& e) const {
  if (e.domain() != f_) throw AlgebraError("embedding domain does not match polynomial field");
  std::vector<FieldElement> c;
  for (auto& x : c_) c.push_back(e(x));
  return FieldPoly(e.codomain(), std::move(c));
}

FieldPoly FieldPoly::operator-() const {
  FieldPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

FieldPoly& FieldPoly::operator+=(const FieldPoly& o) {
  if (!f_) f_ = o.f_;
  if (o.f_ && o.f_ != f_) throw AlgebraError("polynomials over different fields");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

FieldPoly& FieldPoly::operator-=(const FieldPoly& o) { return *this += -o; }

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
  if (a.f_ != b.f_) throw AlgebraError("polynomials over different fields");
  if (a.is_zero() || b.is_zero()) return FieldPoly(a.f_);
  std::vector<FieldElement> r(a.c_.size() + b.c_.size() - 1, a.f_->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return FieldPoly(a.f_, std::move(r));
}

FieldPoly operator*(const FieldPoly& a, const FieldElement& s) {
  std::vector<FieldElement> r;
  for (auto& c : a.c_) r.push_back(c * s);
  return FieldPoly(a.f_, std::move(r));
}

std::string FieldPoly::str(const std::string& var, const std::string& theta) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const FieldElement& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c.is_one() && i > 0;
    if (!unit) {
      os << "(" << c.poly_str(theta) << ")";
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::strong_ordering canonical_compare(const FieldPoly& a, const FieldPoly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    if (auto c = canonical_compare(a.coeffs()[i], b.coeffs()[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& a, const FieldPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const FieldPtr& f = b.field();
  if (a.degree() < b.degree()) return {FieldPoly(f), a};
  std::vector<FieldElement> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<FieldElement> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, f->zero());
  FieldElement inv = b.lead().inverse();
  for (std::size_t k = q.size(); k-- > 0;) {
    FieldElement c = r[k + db] * inv;
    if (c.is_zero()) continue;
    q[k] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= c * b.coeffs()[j];
  }
  r.resize(db, f->zero());
  return {FieldPoly(f, std::move(q)), FieldPoly(f, std::move(r))};
}

FieldPoly rem_rational(const UniPoly& a, const FieldPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const FieldPtr& f = b.field();
  FieldPoly bm = b.monic();
  const std::size_t db = static_cast<std::size_t>(bm.degree());
  if (db == 0) return FieldPoly(f);
  // r holds db coefficients; multiply by X and fold the overflow back.
  std::vector<FieldElement> r(db, f->zero());
  const auto& ac = a.coeffs();
  for (std::size_t i = ac.size(); i-- > 0;) {
    FieldElement top = r[db - 1];
    for (std::size_t j = db - 1; j > 0; --j) r[j] = r[j - 1];
    r[0] = f->from_rational(ac[i]);
    if (!top.is_zero())
      for (std::size_t j = 0; j < db; ++j) r[j] -= top * bm.coeffs()[j];
  }
  return FieldPoly(f, std::move(r));
}

FieldPoly gcd(const FieldPoly& a, const FieldPoly& b) {
  FieldPoly x = a, y = b;
  while (!y.is_zero()) {
    FieldPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<FieldPoly, int>> squarefree_decomposition(const FieldPoly& p) {
  if (p.is_zero()) throw AlgebraError("squarefree decomposition of the zero polynomial");
  std::vector<std::pair<FieldPoly, int>> out;
  if (p.degree() == 0) return out;
  FieldPoly f = p.monic();
  FieldPoly fp = f.derivative();
  FieldPoly a = gcd(f, fp);
  FieldPoly b = divmod(f, a).first;
  FieldPoly c = divmod(fp, a).first;
  FieldPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    FieldPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

FieldPoly squarefree_part(const FieldPoly& p) {
  if (p.is_zero()) throw AlgebraError("squarefree part of the zero polynomial");
  if (p.degree() == 0) return FieldPoly::constant(p.field()->one());
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

namespace {

// D * p with integer coefficients, for evaluating the norm modulo primes.
struct NormData {
  int n = 0, d = 0, N = 0;
  BigInt D = 1;
  std::vector<std::vector<BigInt>> c;  // c[k][l]: coefficient of theta^l X^k
  const std::vector<BigInt>* m = nullptr;

  explicit NormData(const FieldPoly& p) {
    const NumberField& F = *p.field();
    n = F.degree();
    d = p.degree();
    N = n * d;
    m = &F.min_poly_integral();
    for (auto& e : p.coeffs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.denominator().get_mpz_t());
    c.resize(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
      const FieldElement& e = p.coeffs()[static_cast<std::size_t>(k)];
      BigInt scale = D / e.denominator();
      for (auto& x : e.numerators()) c[static_cast<std::size_t>(k)].push_back(x * scale);
    }
  }

  // Coefficients of D^n * N(p) modulo prime, length N + 1.
  detail::ModPoly image(std::uint64_t prime) const {
    detail::Zp zp(prime);
    detail::ModPoly mp = zp.reduce(*m);
    std::vector<std::vector<std::uint64_t>> cp(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
      for (auto& x : c[k]) cp[k].push_back(zp.reduce(x));
    std::vector<std::uint64_t> xs(static_cast<std::size_t>(N) + 1), ys(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      xs[j] = j;
      detail::ModPoly g(static_cast<std::size_t>(n), 0);
      std::uint64_t xpow = 1;
      for (std::size_t k = 0; k < cp.size(); ++k) {
        for (std::size_t l = 0; l < cp[k].size(); ++l) g[l] = zp.add(g[l], zp.mul(cp[k][l], xpow));
        xpow = zp.mul(xpow, xs[j]);
      }
      detail::Zp::trim(g);
      ys[j] = zp.resultant(mp, g);
    }
    // Newton interpolation through (xs, ys).
    std::vector<std::uint64_t> dd = ys;
    for (std::size_t lvl = 1; lvl < xs.size(); ++lvl)
      for (std::size_t j = xs.size() - 1; j >= lvl; --j)
        dd[j] = zp.mul(zp.sub(dd[j], dd[j - 1]), zp.inv(zp.sub(xs[j], xs[j - lvl])));
    detail::ModPoly poly{dd.back()};
    for (std::size_t j = xs.size() - 1; j-- > 0;) {
      poly = zp.mul(poly, detail::ModPoly{zp.sub(0, xs[j]), 1});
      poly = zp.add(poly, detail::ModPoly{dd[j]});
    }
    poly.resize(xs.size(), 0);
    return poly;
  }
};

}  // namespace

UniPoly norm(const FieldPoly& p) {
  if (p.is_zero()) throw AlgebraError("norm of the zero polynomial");
  if (p.field()->degree() == 1) return p.to_rational();
  NormData nd(p);
  const int n = nd.n;

  // Root bound R for theta (Fujiwara) and the coefficient bound S^n.
  const auto& m = *nd.m;
  BigInt R = 1;
  for (int i = 1; i <= n; ++i) {
    BigInt a = abs(m[static_cast<std::size_t>(n - i)]);
    if (a == 0) continue;
    BigInt r;
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(i));
    r += 1;
    if (r > R) R = r;
  }
  R *= 2;
  BigInt S = 0;
  for (auto& row : nd.c) {
    BigInt pw = 1;
    for (auto& x : row) {
      S += abs(x) * pw;
      pw *= R;
    }
  }
  BigInt bound;
  mpz_pow_ui(bound.get_mpz_t(), S.get_mpz_t(), static_cast<unsigned long>(n));
  bound = 2 * bound + 1;

  std::vector<BigInt> result(static_cast<std::size_t>(nd.N) + 1, BigInt(0));
  BigInt modulus = 1;
  std::uint64_t prime = (1ULL << 30);
  while (modulus <= bound) {
    prime = detail::next_prime(prime + 1);
    detail::ModPoly poly = nd.image(prime);
    for (std::size_t i = 0; i < result.size(); ++i) detail::crt_accumulate(result[i], modulus, poly[i], prime);
    modulus *= static_cast<unsigned long>(prime);
  }
  BigInt half = modulus / 2;
  BigInt Dn;
  mpz_pow_ui(Dn.get_mpz_t(), nd.D.get_mpz_t(), static_cast<unsigned long>(n));
  std::vector<BigRational> out;
  for (auto& v : result) {
    if (v > half) v -= modulus;
    out.emplace_back(v, Dn);
  }
  return UniPoly(std::move(out));
}

namespace detail {

bool norm_certainly_squarefree(const FieldPoly& p) {
  if (p.field()->degree() == 1) return squarefree_part(p.to_rational()).degree() == p.degree();
  NormData nd(p);
  std::uint64_t prime = (1ULL << 30) + 4321;
  for (int attempt = 0; attempt < 2; ++attempt) {
    prime = next_prime(prime + 1);
    Zp zp(prime);
    ModPoly img = nd.image(prime);
    Zp::trim(img);
    if (static_cast<int>(img.size()) - 1 != nd.N) continue;
    if (zp.is_squarefree(img)) return true;
  }
  return false;
}

}  // namespace detail

}  // namespace cfield

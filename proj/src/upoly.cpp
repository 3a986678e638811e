#include "cfield/upoly.hpp"

#include <sstream>

namespace cfield {

UniPoly::UniPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

UniPoly UniPoly::constant(const BigRational& c) { return UniPoly(std::vector<BigRational>{c}); }

UniPoly UniPoly::monomial(const BigRational& c, std::size_t deg) {
  std::vector<BigRational> v(deg + 1);
  v[deg] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const BigRational& UniPoly::lead() const {
  if (c_.empty()) throw AlgebraError("leading coefficient of the zero polynomial");
  return c_.back();
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigRational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * BigRational(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::compose(const UniPoly& q) const {
  UniPoly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + constant(*it);
  return r;
}

UniPoly UniPoly::shift(const BigRational& a) const {
  std::vector<BigRational> c = c_;
  // Taylor shift by repeated synthetic division.
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::scale_var(const BigRational& s) const {
  std::vector<BigRational> c = c_;
  BigRational pw(1);
  for (auto& x : c) {
    x *= pw;
    pw *= s;
  }
  return UniPoly(std::move(c));
}

BigRational UniPoly::eval(const BigRational& at) const {
  BigRational r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const BigRational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i].raw() * b.c_[j].raw();
  }
  std::vector<BigRational> out;
  out.reserve(r.size());
  for (auto& x : r) out.emplace_back(x);
  return UniPoly(std::move(out));
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigRational& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    BigRational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || !a.is_one()) {
      os << a;
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::strong_ordering canonical_compare(const UniPoly& a, const UniPoly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    if (auto c = a.coeffs()[i] <=> b.coeffs()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<mpq_class> r;
  r.reserve(a.coeffs().size());
  for (auto& x : a.coeffs()) r.push_back(x.raw());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  mpq_class inv = 1 / b.lead().raw();
  for (std::size_t k = q.size(); k-- > 0;) {
    mpq_class c = r[k + db] * inv;
    q[k] = BigRational(c);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= c * b.coeffs()[j].raw();
  }
  std::vector<BigRational> rem;
  for (std::size_t i = 0; i < db; ++i) rem.emplace_back(r[i]);
  return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(1), s1;
  UniPoly t0, t1 = UniPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UniPoly s2 = s0 - q * s1;
    UniPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  BigRational inv = r0.lead().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

BigRational resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw AlgebraError("resultant of a zero polynomial");
  // res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} res(B, R), R = A mod B.
  UniPoly a = p, b = q;
  BigRational acc(1);
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) return acc * b.lead().pow(static_cast<unsigned>(da));
    UniPoly r = divmod(a, b).second;
    if (r.is_zero()) return BigRational();
    if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
    acc *= b.lead().pow(static_cast<unsigned>(da - r.degree()));
    a = std::move(b);
    b = std::move(r);
  }
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw AlgebraError("squarefree part of the zero polynomial");
  if (p.degree() == 0) return UniPoly::constant(1);
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw AlgebraError("squarefree decomposition of the zero polynomial");
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() == 0) return out;
  UniPoly f = p.monic();
  UniPoly fp = f.derivative();
  UniPoly a = gcd(f, fp);
  UniPoly b = divmod(f, a).first;
  UniPoly c = divmod(fp, a).first;
  UniPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UniPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

IntegerForm integer_form(const UniPoly& p) {
  IntegerForm out;
  if (p.is_zero()) {
    out.scale = BigRational();
    return out;
  }
  BigInt den = 1;
  for (auto& c : p.coeffs()) {
    BigInt d = c.denominator();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<BigInt> v;
  BigInt g = 0;
  for (auto& c : p.coeffs()) {
    BigInt x = c.numerator() * (den / c.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    v.push_back(x);
  }
  if (v.back() < 0) g = -g;
  for (auto& x : v) x /= g;
  out.scale = BigRational(g, den);
  out.primitive = std::move(v);
  return out;
}

UniPoly from_integers(const std::vector<BigInt>& c) {
  std::vector<BigRational> v;
  v.reserve(c.size());
  for (auto& x : c) v.emplace_back(x);
  return UniPoly(std::move(v));
}

}  // namespace cfield

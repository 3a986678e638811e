#include "cfield/detail/modular.hpp"

#include <algorithm>

namespace cfield::detail {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t start) {
  std::uint64_t n = std::max<std::uint64_t>(start, 2);
  while (!is_prime_u64(n)) ++n;
  return n;
}

std::uint64_t Zp::pow(std::uint64_t a, std::uint64_t e) const { return powmod64(a, e, p_); }

std::uint64_t Zp::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DivisionByZero();
  return powmod64(a, p_ - 2, p_);
}

std::uint64_t Zp::reduce(const BigInt& v) const {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p_));
}

void Zp::trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly Zp::add(const ModPoly& a, const ModPoly& b) const {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
  trim(r);
  return r;
}

ModPoly Zp::sub(const ModPoly& a, const ModPoly& b) const {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
  trim(r);
  return r;
}

ModPoly Zp::mul(const ModPoly& a, const ModPoly& b) const {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
  }
  trim(r);
  return r;
}

ModPoly Zp::scale(const ModPoly& a, std::uint64_t s) const {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], s);
  trim(r);
  return r;
}

void Zp::divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) const {
  if (b.empty()) throw DivisionByZero();
  r = a;
  if (a.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(a.size() - b.size() + 1, 0);
  std::uint64_t inv_lead = inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t c = mul(r[k + db], inv_lead);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] = sub(r[k + j], mul(c, b[j]));
  }
  trim(q);
  r.resize(db);
  trim(r);
}

ModPoly Zp::rem(const ModPoly& a, const ModPoly& b) const {
  if (a.size() < b.size()) return a;
  ModPoly r = a;
  std::uint64_t inv_lead = inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size() - b.size() + 1; k-- > 0;) {
    std::uint64_t c = mul(r[k + db], inv_lead);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] = sub(r[k + j], mul(c, b[j]));
  }
  r.resize(db);
  trim(r);
  return r;
}

ModPoly Zp::monic(const ModPoly& a) const {
  if (a.empty()) return a;
  return scale(a, inv(a.back()));
}

ModPoly Zp::gcd(const ModPoly& a, const ModPoly& b) const {
  ModPoly x = a, y = b;
  while (!y.empty()) {
    ModPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

void Zp::xgcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t) const {
  ModPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    ModPoly q, r;
    divmod(r0, r1, q, r);
    ModPoly s2 = sub(s0, mul(q, s1));
    ModPoly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  std::uint64_t il = inv(r0.back());
  g = scale(r0, il);
  s = scale(s0, il);
  t = scale(t0, il);
}

ModPoly Zp::derivative(const ModPoly& a) const {
  if (a.size() <= 1) return {};
  ModPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mul(a[i], i % p_);
  trim(d);
  return d;
}

ModPoly Zp::mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) const { return rem(mul(a, b), m); }

ModPoly Zp::powmod(const ModPoly& a, const BigInt& e, const ModPoly& m) const {
  ModPoly result{1};
  result = rem(result, m);
  ModPoly base = rem(a, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
  }
  return result;
}

std::uint64_t Zp::eval(const ModPoly& a, std::uint64_t x) const {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = add(mul(r, x), a[i]);
  return r;
}

std::uint64_t Zp::resultant(ModPoly a, ModPoly b) const {
  if (a.empty() || b.empty()) return 0;
  std::uint64_t acc = 1;
  while (true) {
    std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return mul(acc, pow(b[0], da));
    ModPoly r = rem(a, b);
    if (r.empty()) return 0;
    if ((da & 1) && (db & 1)) acc = sub(0, acc);
    acc = mul(acc, pow(b.back(), da - (r.size() - 1)));
    a = std::move(b);
    b = std::move(r);
  }
}

ModPoly Zp::reduce(const ZPoly& a) const {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce(a[i]);
  trim(r);
  return r;
}

bool Zp::is_squarefree(const ModPoly& f) const {
  ModPoly d = derivative(f);
  if (d.empty()) return f.size() <= 1;
  return gcd(f, d).size() == 1;
}

std::vector<std::pair<ModPoly, int>> Zp::distinct_degree(const ModPoly& f_in) const {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly f = monic(f_in);
  ModPoly x{0, 1};
  ModPoly h = rem(x, f);
  BigInt pz(static_cast<unsigned long>(p_));
  for (int d = 1; f.size() > 1; ++d) {
    if (2 * d > static_cast<int>(f.size() - 1)) {
      out.emplace_back(f, static_cast<int>(f.size() - 1));
      break;
    }
    h = powmod(h, pz, f);
    ModPoly g = gcd(sub(h, x), f);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      ModPoly q, r;
      divmod(f, g, q, r);
      f = q;
      h = rem(h, f);
    }
  }
  return out;
}

std::vector<ModPoly> Zp::equal_degree(const ModPoly& f, int d, std::mt19937_64& rng) const {
  const std::size_t n = f.size() - 1;
  if (static_cast<int>(n) == d) return {f};
  BigInt e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, p_ - 1);
  while (true) {
    ModPoly a(n);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (a.size() <= 1) continue;
    ModPoly g = gcd(a, f);
    if (g.size() == 1) {
      ModPoly b = powmod(a, e, f);
      g = gcd(sub(b, ModPoly{1}), f);
    }
    if (g.size() > 1 && g.size() < f.size()) {
      ModPoly q, r;
      divmod(f, g, q, r);
      auto left = equal_degree(g, d, rng);
      auto right = equal_degree(monic(q), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<ModPoly> Zp::factor_squarefree(const ModPoly& f, std::mt19937_64& rng) const {
  std::vector<ModPoly> out;
  for (auto& [g, d] : distinct_degree(f)) {
    auto parts = equal_degree(g, d, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

int Zp::root_count(const ModPoly& f_in) const {
  if (f_in.empty()) throw AlgebraError("roots of the zero polynomial");
  ModPoly f = monic(f_in);
  if (f.size() == 1) return 0;
  ModPoly x{0, 1};
  ModPoly h = powmod(x, BigInt(static_cast<unsigned long>(p_)), f);
  ModPoly g = gcd(sub(h, x), f);
  return static_cast<int>(g.size()) - 1;
}

std::vector<std::uint64_t> Zp::roots(const ModPoly& f_in, std::mt19937_64& rng) const {
  if (f_in.empty()) throw AlgebraError("roots of the zero polynomial");
  ModPoly f = monic(f_in);
  std::vector<std::uint64_t> out;
  if (f.size() == 1) return out;
  ModPoly x{0, 1};
  ModPoly h = powmod(x, BigInt(static_cast<unsigned long>(p_)), f);
  ModPoly g = gcd(sub(h, x), f);
  if (g.size() <= 1) return out;
  for (auto& lin : equal_degree(g, 1, rng)) out.push_back(sub(0, lin[0]));
  std::sort(out.begin(), out.end());
  return out;
}

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  ztrim(r);
  return r;
}

ZPoly zmod_coeffs(const ZPoly& a, const BigInt& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  ztrim(r);
  return r;
}

ZPoly zsymmetric(const ZPoly& a, const BigInt& m) {
  ZPoly r = zmod_coeffs(a, m);
  BigInt half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  ztrim(r);
  return r;
}

void zdivmod_monic(const ZPoly& a, const ZPoly& b, const BigInt& m, ZPoly& q, ZPoly& r) {
  r = zmod_coeffs(a, m);
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  const std::size_t db = b.size() - 1;
  q.assign(r.size() - db, BigInt(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt c = r[k + db];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(r[k + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
      mpz_fdiv_r(r[k + j].get_mpz_t(), r[k + j].get_mpz_t(), m.get_mpz_t());
    }
  }
  r.resize(db);
  ztrim(r);
  ztrim(q);
}

namespace {

ZPoly to_z(const ModPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ztrim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  ztrim(r);
  return r;
}

// One quadratic Hensel step: from modulus m to m*m.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const BigInt& mm) {
  ZPoly e = zmod_coeffs(zsub(f, zmul(g, h)), mm);
  ZPoly q, r;
  zdivmod_monic(zmul(s, e), h, mm, q, r);
  ZPoly g2 = zmod_coeffs(zadd(zadd(g, zmul(t, e)), zmul(q, g)), mm);
  ZPoly h2 = zmod_coeffs(zadd(h, r), mm);
  ZPoly b = zmod_coeffs(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{BigInt(1)}), mm);
  ZPoly c, d;
  zdivmod_monic(zmul(s, b), h2, mm, c, d);
  s = zmod_coeffs(zsub(s, d), mm);
  t = zmod_coeffs(zsub(zsub(t, zmul(t, b)), zmul(c, g2)), mm);
  g = std::move(g2);
  h = std::move(h2);
}

ZPoly make_monic_mod(const ZPoly& a, const BigInt& m) {
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), m.get_mpz_t());
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * inv;
  return zmod_coeffs(r, m);
}

}  // namespace

std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<ModPoly>& factors, std::uint64_t p, unsigned k,
                               BigInt& modulus) {
  Zp zp(p);
  unsigned K = 1;
  while (K < k) K *= 2;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), K);

  std::vector<ZPoly> out;
  ZPoly cur = zmod_coeffs(f, modulus);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    std::uint64_t lc = zp.reduce(cur.back());
    ModPoly g0 = zp.scale(factors[i], lc);
    ModPoly h0{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) h0 = zp.mul(h0, factors[j]);
    ModPoly gg, s0, t0;
    zp.xgcd(g0, h0, gg, s0, t0);
    ZPoly g = to_z(g0), h = to_z(h0), s = to_z(s0), t = to_z(t0);
    BigInt m(static_cast<unsigned long>(p));
    for (unsigned e = 1; e < K; e *= 2) {
      BigInt mm = m * m;
      hensel_step(cur, g, h, s, t, mm);
      m = mm;
    }
    out.push_back(make_monic_mod(g, modulus));
    cur = h;
  }
  out.push_back(make_monic_mod(cur, modulus));
  return out;
}

void crt_accumulate(BigInt& value, const BigInt& modulus, std::uint64_t residue, std::uint64_t p) {
  Zp zp(p);
  std::uint64_t v = zp.reduce(value);
  std::uint64_t minv = zp.inv(zp.reduce(modulus));
  std::uint64_t delta = zp.mul(zp.sub(residue % p, v), minv);
  value += modulus * static_cast<unsigned long>(delta);
}

}  // namespace cfield::detail

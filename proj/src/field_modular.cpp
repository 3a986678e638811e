#include "cfield/detail/field_modular.hpp"

#include "cfield/detail/modular.hpp"

namespace cfield::detail {

bool rational_reconstruct(const BigInt& a, const BigInt& m, BigInt& num, BigInt& den) {
  BigInt bound;
  BigInt half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  num = r1;
  den = t1;
  return true;
}

namespace {

constexpr std::size_t kMaxPrimes = 400;

// Z/p[t]/(m_p), where m_p is the reduction of the integral minimal polynomial.
struct Residue {
  Zp zp;
  ModPoly m;

  Residue(std::uint64_t p, const std::vector<BigInt>& mz) : zp(p), m(zp.reduce(mz)) {}

  // Image of a field element; false when p divides its denominator.
  bool image(const FieldElement& a, ModPoly& out) const {
    std::uint64_t d = zp.reduce(a.denominator());
    if (d == 0) return false;
    ModPoly v;
    for (auto& x : a.numerators()) v.push_back(zp.reduce(x));
    Zp::trim(v);
    out = zp.scale(v, zp.inv(d));
    return true;
  }

  bool inverse(const ModPoly& a, ModPoly& out) const {
    if (a.empty()) return false;
    ModPoly g, s, t;
    zp.xgcd(a, m, g, s, t);
    if (g.size() != 1) return false;
    out = zp.rem(s, m);
    return true;
  }

  ModPoly mul(const ModPoly& a, const ModPoly& b) const { return zp.mulmod(a, b, m); }
};

using RPoly = std::vector<ModPoly>;  // ascending, coefficients in the residue ring

void rtrim(RPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

// a mod b with b monic; false never happens here since b is monic.
RPoly rrem_monic(RPoly a, const RPoly& b, const Residue& R) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    ModPoly c = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (!c.empty())
      for (std::size_t j = 0; j < db; ++j) a[shift + j] = R.zp.sub(a[shift + j], R.mul(c, b[j]));
    a.pop_back();
    rtrim(a);
  }
  return a;
}

bool rmonic(RPoly& a, const Residue& R) {
  ModPoly inv;
  if (!R.inverse(a.back(), inv)) return false;
  for (auto& c : a) c = R.mul(c, inv);
  return true;
}

// Monic gcd over the residue ring; false if a leading coefficient is a zero divisor.
bool rgcd(RPoly a, RPoly b, const Residue& R, RPoly& out) {
  rtrim(a);
  rtrim(b);
  if (!a.empty() && !rmonic(a, R)) return false;
  while (!b.empty()) {
    if (!rmonic(b, R)) return false;
    RPoly r = rrem_monic(a, b, R);
    a = std::move(b);
    b = std::move(r);
  }
  out = std::move(a);
  return true;
}

// Incremental CRT over a flat list of residues, with reconstruction into
// rationals sharing a running denominator.
struct Accumulator {
  std::vector<BigInt> values;
  BigInt modulus = 1;

  void add(const std::vector<std::uint64_t>& residues, std::uint64_t p) {
    if (values.empty()) values.assign(residues.size(), BigInt(0));
    for (std::size_t i = 0; i < residues.size(); ++i) crt_accumulate(values[i], modulus, residues[i], p);
    modulus *= static_cast<unsigned long>(p);
  }

  bool reconstruct(std::vector<BigRational>& out) const {
    out.clear();
    BigInt L = 1;
    for (auto& v : values) {
      BigInt num, den;
      BigInt scaled = (v * L) % modulus;
      if (!rational_reconstruct(scaled, modulus, num, den)) return false;
      out.emplace_back(num, den * L);
      L *= den;
    }
    return true;
  }
};

bool scheduled(std::size_t count) {
  if (count <= 4) return true;
  return (count & (count - 1)) == 0 || count % 8 == 0;
}

}  // namespace

FieldElement inverse_multimodular(const FieldElement& a) {
  if (a.is_zero()) throw DivisionByZero();
  const NumberField& F = a.field();
  const std::size_t n = static_cast<std::size_t>(F.degree());
  Accumulator acc;
  std::uint64_t prime = (1ULL << 30) + 777;
  std::size_t used = 0;
  for (std::size_t tries = 0; tries < 4 * kMaxPrimes && used < kMaxPrimes; ++tries) {
    prime = next_prime(prime + 1);
    Residue R(prime, F.min_poly_integral());
    ModPoly ai, inv;
    if (!R.image(a, ai) || !R.inverse(ai, inv)) continue;
    inv.resize(n, 0);
    acc.add(inv, prime);
    ++used;
    if (!scheduled(used)) continue;
    std::vector<BigRational> coords;
    if (!acc.reconstruct(coords)) continue;
    FieldElement b = F.from_coords(coords);
    if ((a * b).is_one()) return b;
  }
  // Exact fallback.
  ExtendedGcd eg = extended_gcd(a.to_poly(), F.min_poly());
  return F.from_poly(eg.s);
}

std::optional<FieldPoly> gcd_with_rational(const FieldPoly& g, const UniPoly& h, int expected_degree) {
  const FieldPtr& F = g.field();
  const std::size_t n = static_cast<std::size_t>(F->degree());
  if (expected_degree < 1 || expected_degree > g.degree() || expected_degree > h.degree()) return std::nullopt;
  if (expected_degree == g.degree()) {
    FieldPoly gm = g.monic();
    if (rem_rational(h, gm).is_zero()) return gm;
    return std::nullopt;
  }
  auto [hscale, hz] = integer_form(h);
  (void)hscale;
  const BigInt& hlead = hz.back();

  Accumulator acc;
  std::uint64_t prime = (1ULL << 30) + 1234;
  std::size_t used = 0;
  for (std::size_t tries = 0; tries < 4 * kMaxPrimes && used < kMaxPrimes; ++tries) {
    prime = next_prime(prime + 1);
    Residue R(prime, F->min_poly_integral());
    if (R.zp.reduce(hlead) == 0) continue;
    RPoly gp;
    bool ok = true;
    for (auto& c : g.coeffs()) {
      ModPoly v;
      if (!R.image(c, v)) {
        ok = false;
        break;
      }
      gp.push_back(std::move(v));
    }
    if (!ok) continue;
    rtrim(gp);
    if (static_cast<int>(gp.size()) - 1 != g.degree() || !rmonic(gp, R)) continue;
    // h mod g_p by Horner, keeping degree below deg g.
    const std::size_t dg = gp.size() - 1;
    RPoly r(dg);
    for (std::size_t i = hz.size(); i-- > 0;) {
      ModPoly top = r[dg - 1];
      for (std::size_t j = dg - 1; j > 0; --j) r[j] = r[j - 1];
      std::uint64_t c = R.zp.reduce(hz[i]);
      r[0] = c ? ModPoly{c} : ModPoly{};
      if (!top.empty())
        for (std::size_t j = 0; j < dg; ++j) r[j] = R.zp.sub(r[j], R.mul(top, gp[j]));
    }
    RPoly G;
    if (!rgcd(gp, r, R, G)) continue;
    if (static_cast<int>(G.size()) - 1 != expected_degree) continue;
    std::vector<std::uint64_t> flat;
    for (std::size_t k = 0; k < static_cast<std::size_t>(expected_degree); ++k) {
      ModPoly c = G[k];
      c.resize(n, 0);
      flat.insert(flat.end(), c.begin(), c.end());
    }
    acc.add(flat, prime);
    ++used;
    if (!scheduled(used)) continue;
    std::vector<BigRational> coords;
    if (!acc.reconstruct(coords)) continue;
    std::vector<FieldElement> cs;
    for (std::size_t k = 0; k < static_cast<std::size_t>(expected_degree); ++k)
      cs.push_back(F->from_coords(std::vector<BigRational>(coords.begin() + static_cast<std::ptrdiff_t>(k * n),
                                                           coords.begin() + static_cast<std::ptrdiff_t>((k + 1) * n))));
    cs.push_back(F->one());
    FieldPoly cand(F, std::move(cs));
    if (divmod(g, cand).second.is_zero() && rem_rational(h, cand).is_zero()) return cand;
  }
  return std::nullopt;
}

}  // namespace cfield::detail

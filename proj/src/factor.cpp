#include "cfield/factor.hpp"

#include "cfield/detail/modular.hpp"

#include <algorithm>
#include <functional>

namespace cfield {

using detail::ModPoly;
using detail::ZPoly;
using detail::Zp;

UniPoly Factorization::product() const {
  UniPoly r = UniPoly::constant(unit);
  for (auto& [f, m] : factors)
    for (int i = 0; i < m; ++i) r = r * f;
  return r;
}

int Factorization::count() const {
  int n = 0;
  for (auto& fm : factors) n += fm.second;
  return n;
}

namespace {

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

BigInt zcontent(const ZPoly& a) {
  BigInt g = 0;
  for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly zprimitive(ZPoly a) {
  BigInt g = zcontent(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

// Exact division in Z[x]; false if b does not divide a.
bool zdiv_exact(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  if (a.size() < b.size()) return false;
  ZPoly r = a;
  const std::size_t db = b.size() - 1;
  q.assign(a.size() - db, BigInt(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    if (!mpz_divisible_p(r[k + db].get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_divexact(q[k].get_mpz_t(), r[k + db].get_mpz_t(), b.back().get_mpz_t());
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
  }
  for (std::size_t i = 0; i < db; ++i)
    if (r[i] != 0) return false;
  return true;
}

UniPoly to_monic_uni(const ZPoly& a) {
  std::vector<BigRational> c;
  c.reserve(a.size());
  for (auto& x : a) c.emplace_back(x, a.back());
  return UniPoly(std::move(c));
}

// Bitset of degrees realisable as sums of sub-multisets of the given degrees.
std::vector<bool> subset_degrees(const std::vector<int>& degs, int n) {
  std::vector<bool> ok(static_cast<std::size_t>(n) + 1, false);
  ok[0] = true;
  for (int d : degs)
    for (int s = n; s >= d; --s)
      if (ok[static_cast<std::size_t>(s - d)]) ok[static_cast<std::size_t>(s)] = true;
  return ok;
}

// Zassenhaus on a primitive squarefree integer polynomial with positive
// leading coefficient and nonzero constant term.
void zassenhaus(const ZPoly& f, int only_degree, std::size_t max_found, std::vector<ZPoly>& out) {
  const int n = zdeg(f);
  if (n <= 1) {
    if (only_degree < 0 || only_degree == n) out.push_back(f);
    return;
  }
  std::mt19937_64 rng(0x5eed1234abcdULL);

  // Pick the prime giving the fewest modular factors among a handful of
  // good primes; intersect the possible factor degrees across all of them.
  std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
  std::uint64_t best_p = 0;
  std::size_t best_count = 0;
  int good = 0;
  for (std::uint64_t p = 3; good < 6 && p < 5000; p = detail::next_prime(p + 1)) {
    Zp zp(p);
    if (zp.reduce(f.back()) == 0) continue;
    ModPoly fp = zp.monic(zp.reduce(f));
    if (!zp.is_squarefree(fp)) continue;
    ++good;
    std::vector<int> degs;
    for (auto& [g, d] : zp.distinct_degree(fp))
      for (int k = 0; k < (static_cast<int>(g.size()) - 1) / d; ++k) degs.push_back(d);
    auto sums = subset_degrees(degs, n);
    for (int s = 0; s <= n; ++s) possible[static_cast<std::size_t>(s)] = possible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
    if (best_p == 0 || degs.size() < best_count) {
      best_p = p;
      best_count = degs.size();
    }
  }
  if (best_p == 0) throw AlgebraError("no good prime found for factorisation");

  bool irreducible = true;
  for (int s = 1; s < n; ++s)
    if (possible[static_cast<std::size_t>(s)]) irreducible = false;
  if (irreducible || best_count == 1) {
    if (only_degree < 0 || only_degree == n) out.push_back(f);
    return;
  }
  if (only_degree >= 0 && (only_degree > n || !possible[static_cast<std::size_t>(only_degree)])) return;

  Zp zp(best_p);
  std::vector<ModPoly> modf = zp.factor_squarefree(zp.monic(zp.reduce(f)), rng);

  // Coefficient bound for lc * (any factor): lc * 2^n * ||f||_2.
  BigInt norm2 = 0;
  for (auto& c : f) norm2 += c * c;
  BigInt norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  BigInt bound = f.back() * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  bound = 2 * bound + 1;
  unsigned k = 1;
  BigInt pk(static_cast<unsigned long>(best_p));
  while (pk <= bound) {
    pk *= static_cast<unsigned long>(best_p);
    ++k;
  }
  BigInt M;
  std::vector<ZPoly> lifted = detail::hensel_lift(f, modf, best_p, k, M);

  std::vector<int> degs;
  std::vector<BigInt> consts;
  for (auto& u : lifted) {
    degs.push_back(zdeg(u));
    consts.push_back(u[0]);
  }

  ZPoly F = f;
  std::vector<std::size_t> idx(lifted.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::size_t found = 0;
  BigInt half = M / 2;

  auto try_subset = [&](const std::vector<std::size_t>& sub) -> bool {
    const BigInt& lc = F.back();
    BigInt c = lc;
    for (std::size_t i : sub) {
      c *= consts[i];
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    }
    if (c > half) c -= M;
    if (c == 0) return false;
    BigInt target = lc * F[0];
    if (!mpz_divisible_p(target.get_mpz_t(), c.get_mpz_t())) return false;
    ZPoly g{lc};
    for (std::size_t i : sub) g = detail::zmod_coeffs(detail::zmul(g, lifted[i]), M);
    g = detail::zsymmetric(g, M);
    ZPoly pp = zprimitive(g);
    ZPoly q;
    if (!zdiv_exact(F, pp, q)) return false;
    if (only_degree < 0 || zdeg(pp) == only_degree) {
      out.push_back(pp);
      ++found;
    }
    F = q;
    std::vector<std::size_t> rest;
    for (std::size_t i : idx)
      if (std::find(sub.begin(), sub.end(), i) == sub.end()) rest.push_back(i);
    idx = rest;
    return true;
  };

  for (std::size_t s = 1; s <= idx.size(); ++s) {
    if (only_degree < 0 && 2 * s > idx.size()) break;
    if (found >= max_found) return;
    bool restart = true;
    while (restart && s <= idx.size()) {
      restart = false;
      std::vector<std::size_t> sub;
      int dF = zdeg(F);
      std::function<bool(std::size_t, int)> rec = [&](std::size_t start, int dsum) -> bool {
        if (sub.size() == s) {
          if (only_degree >= 0) {
            if (dsum != only_degree) return false;
          } else if (!possible[static_cast<std::size_t>(dsum)] || dsum == 0 || dsum == dF) {
            return false;
          }
          return try_subset(sub);
        }
        for (std::size_t j = start; j < idx.size(); ++j) {
          if (idx.size() - j < s - sub.size()) break;
          int nd = dsum + degs[idx[j]];
          if (only_degree >= 0 && nd > only_degree) continue;
          sub.push_back(idx[j]);
          bool hit = rec(j + 1, nd);
          sub.pop_back();
          if (hit) return true;
        }
        return false;
      };
      if (rec(0, 0)) {
        restart = true;
        if (found >= max_found) return;
      }
    }
  }
  if (only_degree < 0 && zdeg(F) > 0) out.push_back(F);
}

}  // namespace

std::vector<UniPoly> squarefree_factors_over_Q(const UniPoly& p, int only_degree, std::size_t max_found) {
  if (p.degree() < 1) throw AlgebraError("factorisation of a constant polynomial");
  std::vector<UniPoly> result;
  if (max_found == 0) return result;
  UniPoly q = p;
  if (q.coeff(0).is_zero()) {
    if (only_degree < 0 || only_degree == 1) result.push_back(UniPoly::x());
    q = divmod(q, UniPoly::x()).first;
    if (result.size() >= max_found) return result;
  }
  if (q.degree() >= 1) {
    IntegerForm form = integer_form(q);
    std::vector<ZPoly> zs;
    zassenhaus(form.primitive, only_degree, max_found - result.size(), zs);
    for (auto& z : zs) result.push_back(to_monic_uni(z));
  }
  std::sort(result.begin(), result.end(), [](const UniPoly& a, const UniPoly& b) { return canonical_compare(a, b) < 0; });
  return result;
}

Factorization factor_over_Q(const UniPoly& p) {
  if (p.degree() < 1) throw AlgebraError("factorisation of a constant polynomial");
  Factorization out;
  out.unit = p.lead();
  for (auto& [s, m] : squarefree_decomposition(p))
    for (auto& f : squarefree_factors_over_Q(s)) out.factors.emplace_back(f, m);
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    auto c = canonical_compare(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return out;
}

bool is_irreducible_over_Q(const UniPoly& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  if (squarefree_part(p).degree() != p.degree()) return false;
  return squarefree_factors_over_Q(p).size() == 1;
}

}  // namespace cfield

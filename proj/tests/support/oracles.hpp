#pragma once

// Independent reference implementations used to check the library. They
// work on plain GMP integers and rationals and share no code with it.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace oracle {

using ZPoly = std::vector<mpz_class>;  // ascending coefficients
using QPoly = std::vector<mpq_class>;

/// splitmix64; portable, so seeded tests behave the same everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t s_;
};

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline mpz_class eval(const ZPoly& p, long x) {
  mpz_class r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

/// Exact division in Z[x]; false if b does not divide a.
inline bool divides(const ZPoly& b, ZPoly a) {
  trim(a);
  if (b.empty()) return false;
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    mpz_class q;
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return false;
    q = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
    trim(a);
  }
  return a.empty();
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Newton interpolation through (xs[i], ys[i]); ascending coefficients.
inline QPoly interpolate(const std::vector<long>& xs, const std::vector<mpz_class>& ys) {
  const std::size_t n = xs.size();
  std::vector<mpq_class> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly r(1, dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    // r = r * (x - xs[k]) + dd[k]
    QPoly next(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] += r[i];
      next[i] -= r[i] * xs[k];
    }
    next[0] += dd[k];
    r = next;
  }
  return r;
}

/// Kronecker's method: searches every candidate factor of degree 1..n/2 by
/// interpolating divisors of f at integer points. True if f (integral,
/// primitive) has a factor of positive degree below its own.
inline bool kronecker_has_factor(const ZPoly& f) {
  const long n = static_cast<long>(f.size()) - 1;
  if (n <= 1) return false;
  std::vector<long> pts;
  std::vector<mpz_class> vals;
  for (long k = 0; static_cast<long>(pts.size()) <= n / 2; ++k) {
    long x = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    mpz_class v = eval(f, x);
    if (v == 0) return true;  // linear factor x - pts
    pts.push_back(x);
    vals.push_back(v);
  }
  for (long d = 1; d <= n / 2; ++d) {
    const std::size_t m = static_cast<std::size_t>(d) + 1;
    std::vector<long> xs(pts.begin(), pts.begin() + static_cast<long>(m));
    std::vector<std::vector<mpz_class>> choices(m);
    for (std::size_t i = 0; i < m; ++i)
      for (auto& dv : divisors(vals[i])) {
        choices[i].push_back(dv);
        if (i > 0) choices[i].push_back(-dv);  // sign of g fixed by its first value
      }
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
      std::vector<mpz_class> ys(m);
      for (std::size_t i = 0; i < m; ++i) ys[i] = choices[i][idx[i]];
      QPoly g = interpolate(xs, ys);
      while (!g.empty() && g.back() == 0) g.pop_back();
      if (g.size() >= 2) {
        bool integral = true;
        for (auto& c : g)
          if (c.get_den() != 1) integral = false;
        if (integral) {
          ZPoly gz;
          for (auto& c : g) gz.push_back(c.get_num());
          if (static_cast<long>(gz.size()) - 1 < n && divides(gz, f)) return true;
        }
      }
      std::size_t i = 0;
      while (i < m && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == m) break;
    }
  }
  return false;
}

/// Resultant as the determinant of the Sylvester matrix.
inline mpq_class sylvester_resultant(const QPoly& p, const QPoly& q) {
  const std::size_t m = p.size() - 1, n = q.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<mpq_class>> a(size, std::vector<mpq_class>(size, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) a[r][r + i] = p[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) a[n + r][r + i] = q[n - i];
  mpq_class det = 1;
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t piv = c;
    while (piv < size && a[piv][c] == 0) ++piv;
    if (piv == size) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < size; ++r) {
      if (a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < size; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace oracle

#pragma once

// Internal machinery for modular polynomial arithmetic: word-size primes
// for factor patterns, resultants and CRT, and multiprecision moduli for
// Hensel lifting.

#include "cfield/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cfield::detail {

using ModPoly = std::vector<std::uint64_t>;  // ascending, trimmed
using ZPoly = std::vector<BigInt>;           // ascending, trimmed

bool is_prime_u64(std::uint64_t n);
/// Primes p >= start in increasing order, all below 2^31.
std::uint64_t next_prime(std::uint64_t start);

/// Arithmetic in Z/p[x] for a prime p < 2^31.
class Zp {
 public:
  explicit Zp(std::uint64_t p) : p_(p) {}
  std::uint64_t p() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t reduce(const BigInt& v) const;

  static void trim(ModPoly& a);
  ModPoly add(const ModPoly& a, const ModPoly& b) const;
  ModPoly sub(const ModPoly& a, const ModPoly& b) const;
  ModPoly mul(const ModPoly& a, const ModPoly& b) const;
  ModPoly scale(const ModPoly& a, std::uint64_t s) const;
  ModPoly rem(const ModPoly& a, const ModPoly& b) const;
  void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) const;
  ModPoly monic(const ModPoly& a) const;
  ModPoly gcd(const ModPoly& a, const ModPoly& b) const;
  /// s*a + t*b = g (monic).
  void xgcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t) const;
  ModPoly derivative(const ModPoly& a) const;
  ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) const;
  ModPoly powmod(const ModPoly& a, const BigInt& e, const ModPoly& m) const;
  std::uint64_t eval(const ModPoly& a, std::uint64_t x) const;
  std::uint64_t resultant(ModPoly a, ModPoly b) const;
  ModPoly reduce(const ZPoly& a) const;

  bool is_squarefree(const ModPoly& f) const;
  /// Distinct-degree factorisation of a monic squarefree polynomial:
  /// pairs (product of all irreducible factors of degree d, d).
  std::vector<std::pair<ModPoly, int>> distinct_degree(const ModPoly& f) const;
  /// Splits a monic squarefree product of degree-d irreducibles.
  std::vector<ModPoly> equal_degree(const ModPoly& f, int d, std::mt19937_64& rng) const;
  /// All monic irreducible factors of a monic squarefree polynomial.
  std::vector<ModPoly> factor_squarefree(const ModPoly& f, std::mt19937_64& rng) const;
  /// Roots in Z/p of a nonzero polynomial (distinct, ascending).
  std::vector<std::uint64_t> roots(const ModPoly& f, std::mt19937_64& rng) const;
  /// Number of distinct roots in Z/p.
  int root_count(const ModPoly& f) const;

 private:
  std::uint64_t p_;
};

// Multiprecision Z/m[x], coefficients kept in [0, m).
void ztrim(ZPoly& a);
ZPoly zmul(const ZPoly& a, const ZPoly& b);
ZPoly zmod_coeffs(const ZPoly& a, const BigInt& m);
ZPoly zsymmetric(const ZPoly& a, const BigInt& m);
/// Division by a monic polynomial modulo m.
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const BigInt& m, ZPoly& q, ZPoly& r);

/// Lifts f = lc * prod(factors) mod p (factors monic, pairwise coprime)
/// to a factorisation modulo p^k; returned factors are monic mod p^k.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<ModPoly>& factors, std::uint64_t p,
                               unsigned k, BigInt& modulus);

/// Chinese remaindering of residues (symmetric range on the final result
/// is applied by the caller).
void crt_accumulate(BigInt& value, const BigInt& modulus, std::uint64_t residue, std::uint64_t p);

}  // namespace cfield::detail

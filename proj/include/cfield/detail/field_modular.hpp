#pragma once

// Multimodular helpers for number-field computations whose exact rational
// versions suffer from coefficient growth: images modulo word-size primes,
// Chinese remaindering, rational reconstruction, exact verification.

#include "cfield/field_poly.hpp"
#include "cfield/number_field.hpp"

#include <optional>

namespace cfield::detail {

/// n/d with n = a*d (mod m), |n|, d <= sqrt(m/2); false if none exists.
bool rational_reconstruct(const BigInt& a, const BigInt& m, BigInt& num, BigInt& den);

/// Inverse of a nonzero element, verified exactly.
FieldElement inverse_multimodular(const FieldElement& a);

/// Monic gcd of a monic polynomial g over F and a rational polynomial h,
/// when the degree of the gcd is known. nullopt if the computation could
/// not be completed (the caller falls back to exact arithmetic).
std::optional<FieldPoly> gcd_with_rational(const FieldPoly& g, const UniPoly& h, int expected_degree);

/// Cheap probabilistic-free check: true only if the norm of p is certainly
/// squarefree (its reduction modulo some prime is squarefree of full degree).
bool norm_certainly_squarefree(const FieldPoly& p);

}  // namespace cfield::detail

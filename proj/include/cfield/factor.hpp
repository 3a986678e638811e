#pragma once

#include "cfield/upoly.hpp"

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace cfield {

/// p = unit * prod f_i^{m_i}, every f_i monic irreducible over Q, listed in
/// canonical polynomial order.
struct Factorization {
  BigRational unit;
  std::vector<std::pair<UniPoly, int>> factors;

  UniPoly product() const;
  /// Number of irreducible factors counted with multiplicity.
  int count() const;
};

/// Complete factorisation over Q (Zassenhaus: modular factoring, Hensel
/// lifting, exhaustive recombination). Throws AlgebraError on constants.
Factorization factor_over_Q(const UniPoly& p);

bool is_irreducible_over_Q(const UniPoly& p);

/// Monic irreducible factors of a squarefree polynomial. With only_degree
/// set, returns only factors of that degree and stops after max_found of
/// them; this is much cheaper when the caller knows what it is looking for.
std::vector<UniPoly> squarefree_factors_over_Q(const UniPoly& p, int only_degree = -1,
                                               std::size_t max_found = std::numeric_limits<std::size_t>::max());

}  // namespace cfield

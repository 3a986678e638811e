#pragma once

#include "cfield/rational.hpp"

#include <optional>
#include <vector>

namespace cfield {

/// Incrementally maintained span of rational vectors. Each vector offered
/// to add() either extends the basis or is reported as a combination of
/// the basis vectors accepted so far (in insertion order).
class LinearSpan {
 public:
  explicit LinearSpan(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// nullopt when v was independent (and is now part of the basis).
  std::optional<std::vector<BigRational>> add(const std::vector<BigRational>& v);
  /// Coefficients of v over the basis, or nullopt if v is outside the span.
  std::optional<std::vector<BigRational>> express(const std::vector<BigRational>& v) const;

 private:
  struct Row {
    std::size_t pivot;
    std::vector<mpq_class> values;  // pivot entry normalised to 1
    std::vector<mpq_class> combo;   // values = sum combo[i] * basis[i]
  };
  bool reduce(std::vector<mpq_class>& v, std::vector<mpq_class>& combo) const;

  std::size_t dim_;
  std::vector<Row> rows_;
};

/// Solves A x = b exactly for square nonsingular A; nullopt if singular.
std::optional<std::vector<BigRational>> solve_linear(std::vector<std::vector<BigRational>> a,
                                                     std::vector<BigRational> b);

}  // namespace cfield

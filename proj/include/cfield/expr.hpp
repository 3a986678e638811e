#pragma once

// Text syntax for polynomials and field elements: integer coefficients,
// + - * / ^, parentheses, implicit multiplication ("10x^2", "2sqrt(3)"),
// named generators and a sqrt(...) function resolved by the caller.

#include "cfield/field_poly.hpp"
#include "cfield/number_field.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cfield {

class ParseError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

struct ExprContext {
  FieldPtr field;
  /// Name of the polynomial variable; empty when parsing plain elements.
  std::string variable = "x";
  std::function<std::optional<FieldElement>(const std::string&)> lookup;
  /// Resolves sqrt(a); unset means sqrt is unavailable.
  std::function<FieldElement(const FieldElement&)> sqrt;
};

FieldPoly parse_field_poly(const std::string& text, const ExprContext& ctx);
FieldElement parse_element(const std::string& text, const ExprContext& ctx);
/// Polynomial over Q in the given variable.
UniPoly parse_rational_poly(const std::string& text, const std::string& var = "x");

/// Splits on sep outside parentheses, trimming whitespace.
std::vector<std::string> split_top_level(const std::string& text, char sep);

}  // namespace cfield

#pragma once

#include <string>

#include "symcartan/ring/scalar_field.hpp"

namespace symcartan {

/// Parses the exact expression grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" int)?
///   base   := rational | ident | sin(ident) | cos(ident) | "(" expr ")" | "-" factor
/// Affine coordinates appear bare; angle coordinates only inside sin/cos.
ScalarField parse_expr(const ChartPtr& chart, const std::string& text);

Rational parse_rational(const std::string& text);

}  // namespace symcartan

#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "symcartan/ring/chart.hpp"
#include "symcartan/ring/monomial.hpp"

namespace symcartan {

/// Value together with its gradient in the chart coordinates.
struct Dual {
  double v = 0;
  std::array<double, kMaxVars> d{};
};

/// Closed-form function of the coordinates for the numeric verification
/// path.  Accepts the exact grammar plus decimals, pi, real exponents and
/// sin, cos, exp, log, sqrt applied to arbitrary subexpressions; angle
/// coordinates are plain real variables here.
class NumExpr {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Log, Sqrt };

  static NumExpr parse(const ChartPtr& chart, const std::string& text);
  static NumExpr constant(double c);

  double eval(const std::vector<double>& coords) const;
  Dual eval_dual(const std::vector<double>& coords) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  friend class NumParser;
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace symcartan

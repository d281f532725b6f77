#pragma once

#include <string>
#include <vector>

#include "symcartan/ring/chart.hpp"
#include "symcartan/ring/poly.hpp"

namespace symcartan {

struct NumericPoint {
  ChartPtr chart;
  std::vector<double> values;  // angle coordinates store the angle itself
};

// Generator values (x, cos t, sin t, ...) of a point.
std::vector<double> generator_values(const NumericPoint& p);

// Reduces sin^2 -> 1 - cos^2 for every angle pair of the chart.
Poly angle_normal_form(const Chart& chart, const Poly& p);

/// Exact rational function on a chart: num/den with the gcd removed, a monic
/// denominator and both parts in angle normal form.
class ScalarField {
 public:
  ScalarField() = default;  // detached zero, only useful as a placeholder
  explicit ScalarField(ChartPtr chart) : chart_(std::move(chart)), den_(1) {}
  ScalarField(ChartPtr chart, const Rational& c) : chart_(std::move(chart)), num_(c), den_(1) {}
  ScalarField(ChartPtr chart, long c) : ScalarField(std::move(chart), Rational(c)) {}
  static ScalarField from_polys(ChartPtr chart, Poly num, Poly den = Poly(1));

  // Affine coordinate x_i.  Angle coordinates are not functions; use cos_of/sin_of.
  static ScalarField coordinate(ChartPtr chart, int i);
  static ScalarField cos_of(ChartPtr chart, int i);
  static ScalarField sin_of(ChartPtr chart, int i);

  const ChartPtr& chart() const { return chart_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const;  // requires is_constant()

  ScalarField operator-() const;
  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator/=(const ScalarField& o);
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
  friend ScalarField operator/(ScalarField a, const ScalarField& b) { return a /= b; }
  friend bool operator==(const ScalarField& a, const ScalarField& b);
  friend bool operator!=(const ScalarField& a, const ScalarField& b) { return !(a == b); }

  ScalarField scaled(const Rational& c) const;
  ScalarField pow(int e) const;
  ScalarField partial(int i) const;

  double eval(const NumericPoint& p) const;
  // Evaluation on precomputed generator values.
  double eval_generators(const std::vector<double>& gens) const;

  std::string to_string() const;

 private:
  void normalize();
  ChartPtr chart_;
  Poly num_;
  Poly den_{1};
};

ScalarField partial(const ScalarField& f, int i);
double eval_numeric(const ScalarField& f, const NumericPoint& p);
// Moves f to another chart; coordinate i of the source becomes coordinate
// coord_map[i] of the target, which must have the same kind.
ScalarField transfer(const ScalarField& f, ChartPtr target, const std::vector<int>& coord_map);

// Renders a polynomial in the expression grammar of the chart.
std::string poly_to_string(const Chart& chart, const Poly& p);

}  // namespace symcartan

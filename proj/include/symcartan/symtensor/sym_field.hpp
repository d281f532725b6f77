#pragma once

#include <map>
#include <string>
#include <vector>

#include "symcartan/ring/scalar_field.hpp"

namespace symcartan {

// Velocity monomial -> coefficient.  Velocity variable i is byte i of the
// monomial, independent of the chart generator layout.
using FiberPoly = std::map<Monomial, ScalarField, GrlexGreater>;

/// Symmetric covariant r-tensor field stored as its polynomial in velocities
/// phi~(v) = (1/r!) phi(v, ..., v).
class SymField {
 public:
  SymField() = default;
  SymField(ChartPtr chart, int degree);

  static SymField scalar(const ScalarField& f);
  static SymField from_fiber(ChartPtr chart, int degree, FiberPoly poly);
  // The coordinate 1-form dx^i.
  static SymField dx(ChartPtr chart, int i);
  // From components on sorted index tuples (tensor convention).
  static SymField from_components(ChartPtr chart, int degree, const std::map<std::vector<int>, ScalarField>& comps);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  int dim() const { return chart_->dim(); }
  const FiberPoly& fiber() const { return poly_; }
  bool is_zero() const { return poly_.empty(); }

  ScalarField coefficient(const Monomial& m) const;
  // phi(d_{i1}, ..., d_{ir}) for indices in any order.
  ScalarField component(const std::vector<int>& indices) const;
  // Nonzero components on sorted index tuples.
  std::map<std::vector<int>, ScalarField> components() const;
  // Value of a degree-0 field.
  ScalarField as_scalar() const;

  SymField operator-() const;
  SymField& operator+=(const SymField& o);
  SymField& operator-=(const SymField& o);
  friend SymField operator+(SymField a, const SymField& b) { return a += b; }
  friend SymField operator-(SymField a, const SymField& b) { return a -= b; }
  friend bool operator==(const SymField& a, const SymField& b);
  friend bool operator!=(const SymField& a, const SymField& b) { return !(a == b); }

  SymField scaled(const ScalarField& f) const;
  SymField scaled(const Rational& c) const;

  // Coefficientwise d/dx^i.
  SymField partial_x(int i) const;
  // d/dv^i, degree r-1.
  SymField partial_v(int i) const;
  // Multiplication by v^i, degree r+1.
  SymField times_v(int i) const;

  // phi~ at a point and velocity.
  double eval_tilde(const NumericPoint& p, const std::vector<double>& velocity) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const ScalarField& c);
  ChartPtr chart_;
  int degree_ = 0;
  FiberPoly poly_;
};

// phi (.) psi: product of fiber polynomials.
SymField sym_product(const SymField& a, const SymField& b);
SymField operator*(const SymField& a, const SymField& b);
SymField operator*(const ScalarField& f, const SymField& a);

/// Symmetrization of a full covariant tensor; entries keyed by r-tuples in
/// any order, missing tuples are zero.
SymField sym_projection(ChartPtr chart, int degree, const std::map<std::vector<int>, ScalarField>& full);

// prod of factorials of the exponents of a velocity monomial.
Rational multiplicity(const Monomial& m);
Monomial velocity_monomial(const std::vector<int>& indices);
std::vector<int> velocity_indices(const Monomial& m);

// All sorted index tuples of length r over n indices (lexicographic).
std::vector<std::vector<int>> sorted_tuples(int n, int r);

}  // namespace symcartan

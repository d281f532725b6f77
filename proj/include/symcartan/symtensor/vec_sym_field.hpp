#pragma once

#include <vector>

#include "symcartan/symtensor/sym_field.hpp"

namespace symcartan {

/// Element of Upsilon^k(M, TM): one degree-k SymField per output component.
/// k = 0 holds vector fields, k = 1 endomorphism fields.
class VecSymField {
 public:
  VecSymField() = default;
  VecSymField(ChartPtr chart, int degree);
  VecSymField(ChartPtr chart, int degree, std::vector<SymField> comps);

  static VecSymField vector_field(ChartPtr chart, const std::vector<ScalarField>& comps);
  // Coordinate vector field d/dx^i.
  static VecSymField coordinate_vector(ChartPtr chart, int i);
  // A(d_j) = sum_m a[m][j] d_m.
  static VecSymField endomorphism(ChartPtr chart, const std::vector<std::vector<ScalarField>>& a);
  static VecSymField identity(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  int dim() const { return chart_->dim(); }
  const SymField& comp(int m) const { return comps_.at(m); }
  SymField& comp(int m) { return comps_.at(m); }
  // X^m for vector fields.
  ScalarField scalar(int m) const { return comps_.at(m).as_scalar(); }
  std::vector<ScalarField> scalars() const;
  // A^m_j for endomorphisms.
  ScalarField endo(int m, int j) const;
  bool is_zero() const;

  VecSymField operator-() const;
  VecSymField& operator+=(const VecSymField& o);
  VecSymField& operator-=(const VecSymField& o);
  friend VecSymField operator+(VecSymField a, const VecSymField& b) { return a += b; }
  friend VecSymField operator-(VecSymField a, const VecSymField& b) { return a -= b; }
  friend bool operator==(const VecSymField& a, const VecSymField& b);
  friend bool operator!=(const VecSymField& a, const VecSymField& b) { return !(a == b); }
  VecSymField scaled(const ScalarField& f) const;
  VecSymField scaled(const Rational& c) const;

  std::string to_string() const;

 private:
  ChartPtr chart_;
  int degree_ = 0;
  std::vector<SymField> comps_;
};

using VectorField = VecSymField;

/// iota_X: sum_i X^i d/dv^i.
SymField contract(const VecSymField& x, const SymField& phi);
/// Symmetric contraction iota^s_sigma: sum_m sigma~^m d/dv^m.
SymField sym_contract(const VecSymField& sigma, const SymField& phi);
// Vector field applied to a function: X f.
ScalarField apply(const VecSymField& x, const ScalarField& f);

}  // namespace symcartan

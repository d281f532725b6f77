#pragma once

#include <string>
#include <vector>

#include "symcartan/symtensor/vec_sym_field.hpp"

namespace symcartan {

using FieldMatrix = std::vector<std::vector<ScalarField>>;

FieldMatrix zero_matrix(const ChartPtr& chart, int rows, int cols);
// Exact inverse by Gaussian elimination; throws ComputationError if singular.
FieldMatrix inverse(const FieldMatrix& a);
ScalarField determinant(const FieldMatrix& a);

/// Array T^a_{bc} of scalar fields with no symmetry assumed.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(ChartPtr chart);
  const ScalarField& operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }
  ScalarField& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  const ChartPtr& chart() const { return chart_; }
  int dim() const { return n_; }
  bool is_zero() const;
  friend bool operator==(const Tensor3& a, const Tensor3& b);

 private:
  int index(int a, int b, int c) const { return (a * n_ + b) * n_ + c; }
  ChartPtr chart_;
  int n_ = 0;
  std::vector<ScalarField> data_;
};

/// Affine connection: gamma(k, i, j) is component k of nabla_{d_i} d_j.
class Connection {
 public:
  Connection() = default;
  explicit Connection(ChartPtr chart);  // flat (all symbols zero)
  explicit Connection(Tensor3 gamma);

  const ChartPtr& chart() const { return gamma_.chart(); }
  int dim() const { return gamma_.dim(); }
  const ScalarField& gamma(int k, int i, int j) const { return gamma_(k, i, j); }
  void set_gamma(int k, int i, int j, const ScalarField& f);
  const Tensor3& symbols() const { return gamma_; }
  bool is_torsion_free() const;
  friend bool operator==(const Connection& a, const Connection& b) { return a.gamma_ == b.gamma_; }

 private:
  Tensor3 gamma_;
};

/// Riemann curvature; op(l, i, j, k) = dx^l(R(d_i, d_j) d_k).
class CurvatureField {
 public:
  explicit CurvatureField(ChartPtr chart);
  const ScalarField& op(int l, int i, int j, int k) const { return data_[index(l, i, j, k)]; }
  ScalarField& op(int l, int i, int j, int k) { return data_[index(l, i, j, k)]; }
  // Layout with the argument Z first: dx^l(R(d_j, d_k) d_i).
  const ScalarField& appendix(int l, int i, int j, int k) const { return op(l, j, k, i); }
  const ChartPtr& chart() const { return chart_; }
  int dim() const { return n_; }
  bool is_zero() const;
  // dx^l(R(X, Y) Z) as a vector field.
  VecSymField apply(const VecSymField& x, const VecSymField& y, const VecSymField& z) const;

 private:
  int index(int l, int i, int j, int k) const { return ((l * n_ + i) * n_ + j) * n_ + k; }
  ChartPtr chart_;
  int n_ = 0;
  std::vector<ScalarField> data_;
};

Tensor3 torsion(const Connection& nabla);
Connection torsion_free_part(const Connection& nabla);

// Vector-field calculus.
VecSymField lie_bracket(const VecSymField& x, const VecSymField& y);
VecSymField covariant_derivative(const Connection& nabla, const VecSymField& x, const VecSymField& y);
// (nabla X)(Y) = nabla_Y X as an endomorphism field.
VecSymField nabla_endomorphism(const Connection& nabla, const VecSymField& x);
VecSymField sym_bracket(const Connection& nabla, const VecSymField& x, const VecSymField& y);
// Endomorphism or vector-valued field applied to vector arguments.
VecSymField evaluate(const VecSymField& sigma, const std::vector<VecSymField>& args);
// sigma(X, .) for sigma of degree 2: the endomorphism Y -> sigma(X, Y).
VecSymField insert_first(const VecSymField& sigma, const VecSymField& x);

// Covariant derivative of a symmetric form along X.
SymField covariant_derivative(const Connection& nabla, const VecSymField& x, const SymField& phi);

/// nabla^s through the geodesic-spray operator on the fiber polynomial.
SymField sym_derivative(const Connection& nabla, const SymField& phi);
/// nabla^s through the component formula, sum over the slot of the derivative.
SymField sym_derivative_components(const Connection& nabla, const SymField& phi);

/// L^s_X = [iota_X, nabla^s].
SymField sym_lie(const Connection& nabla, const VecSymField& x, const SymField& phi);
/// Classical Lie derivative of a symmetric form (component formula).
SymField lie_derivative(const VecSymField& x, const SymField& phi);
/// nabla^s_A = [iota^s_A, nabla^s].
SymField a_sym_derivative(const Connection& nabla, const VecSymField& a, const SymField& phi);

CurvatureField riemann(const Connection& nabla);
// (nabla^2 X)^l_{ij} = (nabla^2 X)(d_i, d_j) = nabla_i nabla_j X - nabla_{nabla_i d_j} X.
Tensor3 second_cov(const Connection& nabla, const VecSymField& x);
// R^s X in Upsilon^2(M, TM).
VecSymField sym_curvature(const Connection& nabla, const VecSymField& x);
// 2 sym iota_X R: (Y, Z) -> R(X, Y) Z + R(X, Z) Y.
VecSymField sym_iota_curvature(const CurvatureField& r, const VecSymField& x);

// (nabla_{d_i} g)_{jk} for a symmetric form g.
bool is_parallel(const Connection& nabla, const SymField& g);

/// Degree-1 derivation D = nabla^s_A + iota^s_sigma of the symmetric algebra,
/// with nabla the auxiliary connection.
struct GeneralDerivation {
  VecSymField a;      // endomorphism field
  VecSymField sigma;  // degree 2
  Connection aux;
  SymField operator()(const SymField& phi) const;
};

GeneralDerivation general_derivation(const VecSymField& a, const VecSymField& sigma, const Connection& aux);

}  // namespace symcartan

#pragma once

#include <optional>
#include <vector>

#include "symcartan/killing/linear.hpp"
#include "symcartan/ring/poly.hpp"

namespace symcartan {

/// Structure constants u_i . u_j = c(k, i, j) u_k of an n-dimensional algebra.
class StructureConstants {
 public:
  explicit StructureConstants(int n) : n_(n), c_(static_cast<std::size_t>(n) * n * n, Rational(0)) {}
  int dim() const { return n_; }
  const Rational& operator()(int k, int i, int j) const { return c_[index(k, i, j)]; }
  Rational& operator()(int k, int i, int j) { return c_[index(k, i, j)]; }
  // Coordinates of u_i . u_j.
  std::vector<Rational> product(int i, int j) const;
  // Skew part c(k, i, j) - c(k, j, i).
  StructureConstants skew() const;
  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  int index(int k, int i, int j) const { return (k * n_ + i) * n_ + j; }
  int n_;
  std::vector<Rational> c_;
};

// Jacobi identity of a skew bracket, checked on basis triples.
bool satisfies_jacobi(const StructureConstants& b);
bool is_lie_admissible(const StructureConstants& c);

/// Lie-admissible algebra; construction throws ComputationError otherwise.
class Algebra {
 public:
  explicit Algebra(StructureConstants c);
  int dim() const { return c_.dim(); }
  const StructureConstants& constants() const { return c_; }

 private:
  StructureConstants c_;
};

bool is_left_symmetric(const Algebra& a);

// lambda with skew part = lambda * bracket, if there is one.
std::optional<Rational> skew_scale(const Algebra& a, const StructureConstants& bracket);

/// <u.v, w> = (<[u,v], w> - <[v,w], u> - <[u,w], v>) / 2 for a Lie bracket
/// and a positive definite inner product (n x n, symmetric).
Algebra algebra_from_metric(const StructureConstants& bracket, const std::vector<std::vector<Rational>>& metric);

/// Elements of Sym^r V* as homogeneous polynomials of degree r in the
/// variables v^1..v^n, zeta~(v) = zeta(v, ..., v) / r!.
Poly d_sym(const Algebra& a, const Poly& zeta);
// (d^s zeta)(u_{i_1}, ..., u_{i_r}) on an index tuple.
Rational sym_component(const Poly& zeta, const std::vector<int>& indices);
// The basis element dual to the sorted tuple: component 1 there, 0 elsewhere.
Poly sym_basis_element(const std::vector<int>& sorted_indices);

struct AlgebraCohomology {
  int degree = 0;
  int dim_ker = 0;
  int dim_ker_im = 0;
  int dim_h = 0;
  std::vector<Poly> kernel;
  std::vector<Poly> representatives;
};
AlgebraCohomology cohomology(const Algebra& a, int r);

}  // namespace symcartan

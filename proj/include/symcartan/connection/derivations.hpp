#pragma once

#include <vector>

#include "symcartan/connection/connection.hpp"

namespace symcartan {

// phi(X, ..., X) / r! for vector arguments with scalar-field entries.
ScalarField tilde_at(const SymField& phi, const std::vector<ScalarField>& x);
// sigma(X, Y) for sigma of degree 2, by polarization.
std::vector<ScalarField> sigma_at(const VecSymField& sigma, const std::vector<ScalarField>& x,
                                  const std::vector<ScalarField>& y);

/// Search for degree-1 derivations D = nabla^s_A + iota^s_sigma (flat
/// auxiliary connection) with D o D = 0, with A and sigma in a polynomial
/// coefficient family.  Vanishing of D(D f^2) = 2 Df . Df on the generator
/// functions forces Df = 0, and with A = 0 the residual on a Euclidean C
/// forces sigma(X, X) = 0 on a spanning family of X.  Both conditions are
/// linear in (A, sigma); their joint kernel is computed exactly.  Sample
/// derivations confirm that the residual identities hold and that a random
/// nonzero D does not square to zero.
struct SquareZeroReport {
  int a_unknowns = 0;
  int sigma_unknowns = 0;
  int a_kernel = 0;      // A-part of the kernel of f -> Df
  int sigma_kernel = 0;  // sigma with sigma(X, X) = 0 on the spanning family
  int joint_nullity = 0;
  int samples = 0;
  bool identities_hold = false;
  bool samples_square_nonzero = false;
  bool only_trivial() const { return joint_nullity == 0 && identities_hold && samples_square_nonzero; }
};

SquareZeroReport square_zero_derivations(const ChartPtr& chart, int coef_degree = 2, int samples = 4,
                                         unsigned seed = 0);

}  // namespace symcartan

#pragma once

#include <string>
#include <vector>

#include "symcartan/killing/linear.hpp"
#include "symcartan/symtensor/vec_sym_field.hpp"

namespace symcartan {

/// Finite coefficient family for the ansatz solvers.  An affine coordinate
/// contributes powers x^a, an angle coordinate t the normal-form products
/// cos(t)^a sin(t)^b with b <= 1, whose degree is a + b.  A basis function
/// is a product of such factors of total degree <= coef_degree, optionally
/// divided by a fixed denominator.
struct AnsatzSpec {
  int degree = 1;                // tensor degree r
  int coef_degree = 3;           // D
  std::vector<int> per_coord;    // per-coordinate degree caps, -1 for none
  std::string denominator;       // expression, empty for none

  friend bool operator==(const AnsatzSpec&, const AnsatzSpec&) = default;
};

AnsatzSpec raised(const AnsatzSpec& spec, int by);

std::vector<ScalarField> coefficient_basis(const ChartPtr& chart, const AnsatzSpec& spec);

// Unknown r-forms f * dx^I, enumerated by multi-index then coefficient.
struct SymAnsatz {
  std::vector<SymField> elements;
  std::vector<std::string> labels;
};
SymAnsatz sym_ansatz(const ChartPtr& chart, const AnsatzSpec& spec);

// Components on sorted multi-indices of a SymField.
std::vector<ScalarField> flatten(const SymField& phi);

/// Coordinates of lists of scalar fields in a common exact basis: every
/// entry is brought over the lcm of its denominators across all inputs and
/// split into monomial coefficients.  Linear relations among the inputs are
/// exactly the relations among the returned vectors.
struct Vectorized {
  std::vector<SparseVec> vectors;
  std::vector<std::string> keys;
};
Vectorized vectorize(const std::vector<std::vector<ScalarField>>& inputs);

// Rows are residual coefficients, columns the unknowns.
LinearProblem assemble(const std::vector<std::vector<ScalarField>>& residuals, std::vector<std::string> col_labels);

}  // namespace symcartan

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "symcartan/connection/connection.hpp"
#include "symcartan/killing/ansatz.hpp"
#include "symcartan/ring/expr_tree.hpp"

namespace symcartan {

struct KillingResult {
  std::vector<SymField> basis;
  LinearProblem problem;
  AnsatzSpec ansatz;
};

/// Killing r-tensors inside the ansatz: the exact kernel of K -> nabla^s K.
KillingResult killing_solve(const Connection& nabla, const AnsatzSpec& ansatz);

// Default starting ansatz for tensor degree r: D = r + 2.
AnsatzSpec default_ansatz(int r);
// Potential ansatz used against a Kill ansatz: degree r - 1, D + 1.
AnsatzSpec potential_ansatz(const AnsatzSpec& kill);

/// All dimensions are relative to the ansatz that produced them.
struct CohomologyReport {
  int degree = 0;
  int dim_kill = 0;
  int dim_exact_in_kill = 0;
  int dim_h = 0;
  std::vector<SymField> kill_basis;
  // Kill basis elements spanning a complement of the exact part.
  std::vector<SymField> representatives;
  AnsatzSpec kill_ansatz;
  std::optional<AnsatzSpec> potential;
  bool stable = false;
  int rows = 0;
  int cols = 0;
};

CohomologyReport cohomology(const Connection& nabla, const AnsatzSpec& kill, const std::optional<AnsatzSpec>& potential,
                            bool check_stability = true);
// Starts at the default ansatz and raises D by 2 until two consecutive
// results agree, up to D = 10.  The report of the first agreeing pair is
// returned with stable set.
CohomologyReport cohomology_auto(const Connection& nabla, int r, const std::string& denominator = {},
                                 int max_degree = 10);

/// Closed-form r-tensor for the numeric path, components on sorted indices.
struct ClosedFormTensor {
  int degree = 1;
  std::map<std::vector<int>, NumExpr> components;
};

struct VerifyOptions {
  int samples = 100;
  double tol = 1e-9;
  unsigned seed = 0;
};

struct VerifyResult {
  bool passed = false;
  double max_residual = 0;
  int evaluated = 0;
  int skipped = 0;  // sample points at a pole
};

// Halton point number index (from 1) in the sample box: affine coordinates
// in [-1, 1], angles in [0, 2 pi).
std::vector<double> halton_point(const Chart& chart, unsigned index);

VerifyResult killing_verify(const Connection& nabla, const ClosedFormTensor& k, const VerifyOptions& opts = {});

/// First cohomology from a closed-form family of Killing 1-forms on an
/// affine chart: dim_kill is the numeric rank of the family, dim_h the rank
/// of d restricted to it (closed equals exact on such a chart).
struct ClosedFormReport {
  bool all_killing = false;
  double max_residual = 0;
  int dim_kill = 0;
  int dim_closed = 0;
  int dim_h = 0;
};
ClosedFormReport closed_form_h1(const Connection& nabla, const std::vector<ClosedFormTensor>& family,
                                const VerifyOptions& opts = {});

struct CircleReport {
  int dim_kill = 0;
  int dim_h = 0;
  bool is_levi_civita = false;
  double integral = 0;
  bool exact = false;  // integral computed from the trigonometric mean
};
CircleReport circle_classify(const ScalarField& f);

/// Vector-field solvers on a coefficient ansatz (spec.degree is ignored).
struct FieldSpace {
  std::vector<VecSymField> basis;
  LinearProblem problem;
};
FieldSpace affine_fields(const Connection& nabla, const AnsatzSpec& ansatz);
FieldSpace parallel_fields(const Connection& nabla, const AnsatzSpec& ansatz);

struct BivectorSpace {
  std::vector<FieldMatrix> basis;
  LinearProblem problem;
};
BivectorSpace parallel_bivectors(const Connection& nabla, const AnsatzSpec& ansatz);

struct PwLiftReport {
  int bivectors = 0;
  int aff = 0;
  int aff0 = 0;
  int h1 = 0;
  int aff_quotient() const { return aff - aff0; }
  int total() const { return bivectors + aff_quotient() + h1; }
};
PwLiftReport pw_cohomology_lift(const Connection& nabla, const AnsatzSpec& fields, const AnsatzSpec& kill);

/// Product chart connection with block-diagonal symbols.
Connection product_connection(const Connection& a, const Connection& b);
// Pullback along the projection onto the first (second) factor.
SymField pull_first(const SymField& phi, const ChartPtr& product);
SymField pull_second(const SymField& phi, const ChartPtr& product);

struct KunnethReport {
  int dimension = 0;
  std::vector<SymField> basis;
  bool all_killing = false;
  Connection product;
};
// h1[i], h2[i] hold the degree-i reports for i = 0..r.
KunnethReport kunneth_subspace(const Connection& a, const std::vector<CohomologyReport>& h1, const Connection& b,
                               const std::vector<CohomologyReport>& h2, int r);

}  // namespace symcartan

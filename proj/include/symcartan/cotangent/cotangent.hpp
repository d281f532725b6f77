#pragma once

#include <string>

#include "symcartan/connection/connection.hpp"

namespace symcartan {

/// Natural chart (x^1..x^n, p_1..p_n) on T*U.  The fiber coordinate over x
/// is named p_x.
class CotangentChart {
 public:
  explicit CotangentChart(ChartPtr base);

  const ChartPtr& base() const { return base_; }
  const ChartPtr& total() const { return total_; }
  int n() const { return base_->dim(); }
  int x_index(int i) const { return i; }
  int p_index(int j) const { return n() + j; }

  static std::string fiber_name(const std::string& base_name) { return "p_" + base_name; }
  // Inverse of fiber_name; empty if the name is not a fiber coordinate.
  static std::string base_name(const std::string& fiber);

  // pr^* f
  ScalarField pull(const ScalarField& f) const;
  ScalarField momentum(int j) const;
  // sum_i p_i X^i for a base vector field, i.e. X^v.
  ScalarField pairing(const VecSymField& x) const;

 private:
  ChartPtr base_;
  ChartPtr total_;
  std::vector<int> embed_;
};

// Lifts of base objects to vector fields (or functions) on T*U.
VecSymField lift_vertical_1form(const CotangentChart& cc, const SymField& alpha);
VecSymField lift_horizontal_vec(const CotangentChart& cc, const Connection& nabla, const VecSymField& x);
ScalarField lift_vertical_vec(const CotangentChart& cc, const VecSymField& x);
VecSymField lift_complete(const CotangentChart& cc, const VecSymField& x);
VecSymField lift_endo(const CotangentChart& cc, const VecSymField& a);
// pi[i][j] = pi(dx^i, dx^j), antisymmetric.  pi^h = p_i pi^{ij} (d_j)^h.
VecSymField lift_horizontal_bivec(const CotangentChart& cc, const Connection& nabla, const FieldMatrix& pi);
// pi(alpha)^i = pi^{ij} alpha_j.
VecSymField apply_bivector(const FieldMatrix& pi, const SymField& alpha);

/// dp_i (.) dx^i - p_k Gamma^k_ij dx^i (.) dx^j
SymField patterson_walker(const CotangentChart& cc, const Connection& nabla);

/// Antisymmetric covariant 2-tensor, w(d_a, d_b) = w[a][b].
class TwoForm {
 public:
  explicit TwoForm(ChartPtr chart);
  static TwoForm from_matrix(ChartPtr chart, FieldMatrix w);
  const ScalarField& operator()(int a, int b) const { return w_[a][b]; }
  const ChartPtr& chart() const { return chart_; }
  ScalarField evaluate(const VecSymField& x, const VecSymField& y) const;
  bool is_zero() const;
  friend bool operator==(const TwoForm& a, const TwoForm& b);

 private:
  ChartPtr chart_;
  FieldMatrix w_;
};

// Exterior derivative of a 1-form: (d alpha)(X, Y) = X alpha(Y) - Y alpha(X) - alpha([X, Y]).
TwoForm exterior_derivative(const SymField& alpha);
SymField canonical_one_form(const CotangentChart& cc);
// dp_i ^ dx^i with (a ^ b) = a (x) b - b (x) a.
TwoForm canonical_symplectic(const CotangentChart& cc);

/// Connection stored on a frame e_A = frame[c][A] d_c: nabla_{e_A} e_B = c(D, A, B) e_D.
struct FrameConnection {
  FieldMatrix frame;
  Tensor3 coeffs;
};

Connection frame_to_coordinates(const FrameConnection& fc);

// Frame {E_i = (d_i)^h, F^j = (dx^j)^v} with nabla-hat of the lift.
FrameConnection lifted_connection_hat_frame(const CotangentChart& cc, const Connection& nabla);
Connection lifted_connection_hat(const CotangentChart& cc, const Connection& nabla);
// Curvature-corrected lift; throws ComputationError on torsion.
FrameConnection lifted_connection_bar_frame(const CotangentChart& cc, const Connection& nabla);
Connection lifted_connection_bar(const CotangentChart& cc, const Connection& nabla);

/// Koszul formula; throws ComputationError when g is degenerate.
Connection levi_civita(const SymField& g);

/// X^c is gradient Killing for g_nabla: nabla X = 0 and sym iota_X R = 0.
bool gradient_killing_complete_lift(const Connection& nabla, const VecSymField& x);

// [nabla^s, L^s_X] = 0 on the spanning family against the lift test.
struct GateReport {
  bool commutes = false;
  bool gradient_killing = false;
  bool agree() const { return commutes == gradient_killing; }
};
GateReport gradient_killing_gate(const Connection& nabla, const VecSymField& x);

}  // namespace symcartan

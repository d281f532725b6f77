#include "symcartan/cotangent/cotangent.hpp"

#include "symcartan/connection/identities.hpp"
#include "symcartan/errors.hpp"

namespace symcartan {

CotangentChart::CotangentChart(ChartPtr base) : base_(std::move(base)) {
  std::vector<Coordinate> coords = base_->coords();
  for (const auto& c : base_->coords()) coords.push_back({fiber_name(c.name), CoordKind::Affine});
  total_ = make_chart(std::move(coords));
  for (int i = 0; i < base_->dim(); ++i) embed_.push_back(i);
}

std::string CotangentChart::base_name(const std::string& fiber) {
  if (fiber.size() > 2 && fiber.compare(0, 2, "p_") == 0) return fiber.substr(2);
  return {};
}

ScalarField CotangentChart::pull(const ScalarField& f) const {
  require_same_chart(base_, f.chart());
  return transfer(f, total_, embed_);
}

ScalarField CotangentChart::momentum(int j) const { return ScalarField::coordinate(total_, p_index(j)); }

ScalarField CotangentChart::pairing(const VecSymField& x) const {
  ScalarField out(total_);
  for (int i = 0; i < n(); ++i) {
    ScalarField xi = x.scalar(i);
    if (!xi.is_zero()) out += momentum(i) * pull(xi);
  }
  return out;
}

namespace {

VecSymField total_vector(const CotangentChart& cc, std::vector<ScalarField> comps) {
  return VecSymField::vector_field(cc.total(), comps);
}

std::vector<ScalarField> zeros(const CotangentChart& cc) { return std::vector<ScalarField>(2 * cc.n(), ScalarField(cc.total())); }

// p_k Gamma^k_ij pulled back.
ScalarField p_gamma(const CotangentChart& cc, const Connection& nabla, int i, int j) {
  ScalarField out(cc.total());
  for (int k = 0; k < cc.n(); ++k)
    if (!nabla.gamma(k, i, j).is_zero()) out += cc.momentum(k) * cc.pull(nabla.gamma(k, i, j));
  return out;
}

}  // namespace

VecSymField lift_vertical_1form(const CotangentChart& cc, const SymField& alpha) {
  if (alpha.degree() != 1) throw ComputationError("vertical lift needs a 1-form");
  auto c = zeros(cc);
  for (int j = 0; j < cc.n(); ++j) c[cc.p_index(j)] = cc.pull(alpha.component({j}));
  return total_vector(cc, std::move(c));
}

VecSymField lift_horizontal_vec(const CotangentChart& cc, const Connection& nabla, const VecSymField& x) {
  require_same_chart(cc.base(), nabla.chart());
  auto c = zeros(cc);
  int n = cc.n();
  for (int i = 0; i < n; ++i) {
    ScalarField xi = cc.pull(x.scalar(i));
    if (xi.is_zero()) continue;
    c[cc.x_index(i)] += xi;
    for (int j = 0; j < n; ++j) {
      ScalarField pg = p_gamma(cc, nabla, i, j);
      if (!pg.is_zero()) c[cc.p_index(j)] += xi * pg;
    }
  }
  return total_vector(cc, std::move(c));
}

ScalarField lift_vertical_vec(const CotangentChart& cc, const VecSymField& x) { return cc.pairing(x); }

VecSymField lift_complete(const CotangentChart& cc, const VecSymField& x) {
  auto c = zeros(cc);
  int n = cc.n();
  for (int i = 0; i < n; ++i) {
    c[cc.x_index(i)] = cc.pull(x.scalar(i));
    for (int j = 0; j < n; ++j) {
      ScalarField d = x.scalar(i).partial(j);
      if (!d.is_zero()) c[cc.p_index(j)] -= cc.momentum(i) * cc.pull(d);
    }
  }
  return total_vector(cc, std::move(c));
}

VecSymField lift_endo(const CotangentChart& cc, const VecSymField& a) {
  auto c = zeros(cc);
  int n = cc.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ScalarField aij = a.endo(i, j);
      if (!aij.is_zero()) c[cc.p_index(j)] += cc.momentum(i) * cc.pull(aij);
    }
  return total_vector(cc, std::move(c));
}

VecSymField lift_horizontal_bivec(const CotangentChart& cc, const Connection& nabla, const FieldMatrix& pi) {
  int n = cc.n();
  VecSymField out(cc.total(), 0);
  for (int j = 0; j < n; ++j) {
    // Coefficient p_i pi^{ij} of (d_j)^h.
    ScalarField coef(cc.total());
    for (int i = 0; i < n; ++i)
      if (!pi[i][j].is_zero()) coef += cc.momentum(i) * cc.pull(pi[i][j]);
    if (coef.is_zero()) continue;
    out += lift_horizontal_vec(cc, nabla, VecSymField::coordinate_vector(cc.base(), j)).scaled(coef);
  }
  return out;
}

VecSymField apply_bivector(const FieldMatrix& pi, const SymField& alpha) {
  int n = alpha.dim();
  std::vector<ScalarField> out(n, ScalarField(alpha.chart()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!pi[i][j].is_zero()) out[i] += pi[i][j] * alpha.component({j});
  return VecSymField::vector_field(alpha.chart(), out);
}

SymField patterson_walker(const CotangentChart& cc, const Connection& nabla) {
  require_same_chart(cc.base(), nabla.chart());
  const ChartPtr& t = cc.total();
  int n = cc.n();
  SymField g(t, 2);
  for (int i = 0; i < n; ++i) g += SymField::dx(t, cc.p_index(i)) * SymField::dx(t, cc.x_index(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ScalarField pg = p_gamma(cc, nabla, i, j);
      if (!pg.is_zero()) g -= (SymField::dx(t, cc.x_index(i)) * SymField::dx(t, cc.x_index(j))).scaled(pg);
    }
  return g;
}

TwoForm::TwoForm(ChartPtr chart) : chart_(chart), w_(zero_matrix(chart, chart->dim(), chart->dim())) {}

TwoForm TwoForm::from_matrix(ChartPtr chart, FieldMatrix w) {
  int n = chart->dim();
  if (static_cast<int>(w.size()) != n) throw ComputationError("2-form has wrong shape");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (w[a][b] != -w[b][a]) throw ComputationError("2-form is not antisymmetric");
  TwoForm f(chart);
  f.w_ = std::move(w);
  return f;
}

ScalarField TwoForm::evaluate(const VecSymField& x, const VecSymField& y) const {
  int n = chart_->dim();
  ScalarField out(chart_);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!w_[a][b].is_zero()) out += w_[a][b] * x.scalar(a) * y.scalar(b);
  return out;
}

bool TwoForm::is_zero() const {
  for (const auto& row : w_)
    for (const auto& f : row)
      if (!f.is_zero()) return false;
  return true;
}

bool operator==(const TwoForm& a, const TwoForm& b) {
  require_same_chart(a.chart_, b.chart_);
  return a.w_ == b.w_;
}

TwoForm exterior_derivative(const SymField& alpha) {
  if (alpha.degree() != 1) throw ComputationError("exterior derivative is implemented for 1-forms only");
  int n = alpha.dim();
  FieldMatrix w = zero_matrix(alpha.chart(), n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) w[a][b] = alpha.component({b}).partial(a) - alpha.component({a}).partial(b);
  return TwoForm::from_matrix(alpha.chart(), std::move(w));
}

SymField canonical_one_form(const CotangentChart& cc) {
  SymField a(cc.total(), 1);
  for (int i = 0; i < cc.n(); ++i) a += SymField::dx(cc.total(), cc.x_index(i)).scaled(cc.momentum(i));
  return a;
}

TwoForm canonical_symplectic(const CotangentChart& cc) {
  int m = 2 * cc.n();
  FieldMatrix w = zero_matrix(cc.total(), m, m);
  for (int i = 0; i < cc.n(); ++i) {
    w[cc.p_index(i)][cc.x_index(i)] = ScalarField(cc.total(), 1);
    w[cc.x_index(i)][cc.p_index(i)] = ScalarField(cc.total(), -1);
  }
  return TwoForm::from_matrix(cc.total(), std::move(w));
}

Connection frame_to_coordinates(const FrameConnection& fc) {
  const FieldMatrix& m = fc.frame;
  int n = static_cast<int>(m.size());
  const ChartPtr& chart = fc.coeffs.chart();
  FieldMatrix inv = inverse(m);
  // Gamma^c_ab = sum_B d_a(N^B_b) M^c_B + sum_{A,B,D} N^A_a N^B_b C^D_AB M^c_D with N = M^-1.
  Tensor3 g(chart);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<ScalarField> w(n, ScalarField(chart));  // frame components of nabla_{d_a} d_b
      for (int bb = 0; bb < n; ++bb) {
        ScalarField d = inv[bb][b].partial(a);
        if (!d.is_zero()) w[bb] += d;
      }
      for (int aa = 0; aa < n; ++aa) {
        if (inv[aa][a].is_zero()) continue;
        for (int bb = 0; bb < n; ++bb) {
          if (inv[bb][b].is_zero()) continue;
          ScalarField nn = inv[aa][a] * inv[bb][b];
          for (int dd = 0; dd < n; ++dd)
            if (!fc.coeffs(dd, aa, bb).is_zero()) w[dd] += nn * fc.coeffs(dd, aa, bb);
        }
      }
      for (int c = 0; c < n; ++c) {
        ScalarField v(chart);
        for (int dd = 0; dd < n; ++dd)
          if (!w[dd].is_zero() && !m[c][dd].is_zero()) v += m[c][dd] * w[dd];
        g(c, a, b) = std::move(v);
      }
    }
  return Connection(std::move(g));
}

FrameConnection lifted_connection_hat_frame(const CotangentChart& cc, const Connection& nabla) {
  require_same_chart(cc.base(), nabla.chart());
  int n = cc.n();
  const ChartPtr& t = cc.total();
  FrameConnection fc{zero_matrix(t, 2 * n, 2 * n), Tensor3(t)};
  for (int i = 0; i < n; ++i) {
    fc.frame[cc.x_index(i)][i] = ScalarField(t, 1);
    for (int j = 0; j < n; ++j) fc.frame[cc.p_index(j)][i] = p_gamma(cc, nabla, i, j);
    fc.frame[cc.p_index(i)][n + i] = ScalarField(t, 1);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ScalarField gk = cc.pull(nabla.gamma(k, i, j));
        if (gk.is_zero()) continue;
        // nabla_{E_i} E_j = Gamma^k_ij E_k, nabla_{E_i} F^k = -Gamma^k_ij F^j
        fc.coeffs(k, i, j) = gk;
        fc.coeffs(n + j, i, n + k) = -gk;
      }
  return fc;
}

Connection lifted_connection_hat(const CotangentChart& cc, const Connection& nabla) {
  return frame_to_coordinates(lifted_connection_hat_frame(cc, nabla));
}

FrameConnection lifted_connection_bar_frame(const CotangentChart& cc, const Connection& nabla) {
  if (!nabla.is_torsion_free()) throw ComputationError("the Levi-Civita lift needs a torsion-free connection");
  FrameConnection fc = lifted_connection_hat_frame(cc, nabla);
  CurvatureField r = riemann(nabla);
  int n = cc.n();
  // Subtract (R(d_j, .) d_i)^v = p_m R^m(d_j, d_z) d_i F^z from nabla_{E_i} E_j.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int z = 0; z < n; ++z) {
        ScalarField v(cc.total());
        for (int m = 0; m < n; ++m)
          if (!r.op(m, j, z, i).is_zero()) v += cc.momentum(m) * cc.pull(r.op(m, j, z, i));
        if (!v.is_zero()) fc.coeffs(n + z, i, j) -= v;
      }
  return fc;
}

Connection lifted_connection_bar(const CotangentChart& cc, const Connection& nabla) {
  return frame_to_coordinates(lifted_connection_bar_frame(cc, nabla));
}

Connection levi_civita(const SymField& g) {
  if (g.degree() != 2) throw ComputationError("metric must have degree 2");
  int n = g.dim();
  const ChartPtr& chart = g.chart();
  FieldMatrix m = zero_matrix(chart, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g.component({i, j});
  if (determinant(m).is_zero()) throw ComputationError("metric is degenerate");
  FieldMatrix inv = inverse(m);
  // Gamma_{l,ij} = (d_i g_jl + d_j g_il - d_l g_ij) / 2
  Tensor3 lower(chart);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        ScalarField v = (m[j][l].partial(i) + m[i][l].partial(j) - m[i][j].partial(l)).scaled(Rational(1, 2));
        lower(l, i, j) = v;
        lower(l, j, i) = v;
      }
  Tensor3 out(chart);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        ScalarField v(chart);
        for (int l = 0; l < n; ++l)
          if (!inv[k][l].is_zero() && !lower(l, i, j).is_zero()) v += inv[k][l] * lower(l, i, j);
        out(k, i, j) = v;
        out(k, j, i) = v;
      }
  return Connection(std::move(out));
}

bool gradient_killing_complete_lift(const Connection& nabla, const VecSymField& x) {
  if (!nabla.is_torsion_free()) throw ComputationError("gradient Killing test needs a torsion-free connection");
  if (!nabla_endomorphism(nabla, x).is_zero()) return false;
  return sym_iota_curvature(riemann(nabla), x).is_zero();
}

GateReport gradient_killing_gate(const Connection& nabla, const VecSymField& x) {
  GateReport g;
  g.gradient_killing = gradient_killing_complete_lift(nabla, x);
  g.commutes = sym_lie_commutes(nabla, x, spanning_family(nabla.chart()));
  return g;
}

}  // namespace symcartan

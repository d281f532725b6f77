#include "symcartan/geodesic/geodesic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "symcartan/errors.hpp"
#include "symcartan/killing/killing.hpp"

namespace symcartan {

namespace {

using State = std::vector<double>;
using Rhs = std::function<State(const State&)>;

State axpy(const State& y, double a, const State& k) {
  State out(y);
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += a * k[i];
  return out;
}

State rk4_step(const Rhs& f, const State& y, double h) {
  State k1 = f(y);
  State k2 = f(axpy(y, h / 2, k1));
  State k3 = f(axpy(y, h / 2, k2));
  State k4 = f(axpy(y, h, k3));
  State out(y);
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

State rk4(const Rhs& f, State y, double t, int steps) {
  for (int s = 0; s < steps; ++s) y = rk4_step(f, y, t / steps);
  return y;
}

void require_finite(const State& y) {
  for (double a : y)
    if (!std::isfinite(a)) throw PoleError("trajectory left the evaluable region");
}

// Symbols evaluated at a point: g[(k * n + i) * n + j].
std::vector<double> eval_gamma(const Connection& nabla, const std::vector<double>& x) {
  int n = nabla.dim();
  auto gens = generator_values({nabla.chart(), x});
  std::vector<double> g(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ScalarField& f = nabla.gamma(k, i, j);
        if (!f.is_zero()) g[(k * n + i) * n + j] = f.eval_generators(gens);
      }
  return g;
}

// G(v, v) at x.
std::vector<double> spray_term(const Connection& nabla, const std::vector<double>& x, const std::vector<double>& v) {
  int n = nabla.dim();
  auto g = eval_gamma(nabla, x);
  std::vector<double> out(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[k] += g[(k * n + i) * n + j] * v[i] * v[j];
  return out;
}

std::vector<std::vector<int>> all_tuples(int n, int r) {
  std::vector<std::vector<int>> out{{}};
  for (int s = 0; s < r; ++s) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int i = 0; i < n; ++i) {
        next.push_back(t);
        next.back().push_back(i);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

GeodesicRun integrate_geodesic(const Connection& nabla, const NumericPoint& start, const std::vector<double>& velocity,
                               double h, double T) {
  int n = nabla.dim();
  if (!(h > 0) || !(T > 0)) throw ComputationError("step and horizon must be positive");
  double ratio = T / h;
  int steps = static_cast<int>(std::llround(ratio));
  if (steps < 1 || std::abs(ratio - steps) > 1e-9 * ratio) throw ComputationError("horizon is not a multiple of the step");
  if (static_cast<int>(start.values.size()) != n || static_cast<int>(velocity.size()) != n)
    throw ComputationError("start point or velocity has wrong dimension");
  GeodesicRun run;
  run.chart = nabla.chart();
  run.h = h;
  run.T = T;
  run.steps = steps;
  Rhs f = [&](const State& y) {
    std::vector<double> x(y.begin(), y.begin() + n), v(y.begin() + n, y.end());
    auto a = spray_term(nabla, x, v);
    State d(2 * n);
    for (int k = 0; k < n; ++k) {
      d[k] = v[k];
      d[n + k] = -a[k];
    }
    return d;
  };
  State y(start.values);
  y.insert(y.end(), velocity.begin(), velocity.end());
  run.x.reserve(steps + 1);
  run.v.reserve(steps + 1);
  for (int s = 0;; ++s) {
    require_finite(y);
    run.x.emplace_back(y.begin(), y.begin() + n);
    run.v.emplace_back(y.begin() + n, y.end());
    if (s == steps) break;
    y = rk4_step(f, y, h);
  }
  return run;
}

double conserved_quantity(const GeodesicRun& run, const SymField& k) {
  if (k.chart() != run.chart) throw ChartMismatch();
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t s = 0; s < run.x.size(); ++s) {
    double q = k.eval_tilde({run.chart, run.x[s]}, run.v[s]);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return run.x.empty() ? 0.0 : hi - lo;
}

SprayReport spray_correspondence(const Connection& nabla, const SymField& phi, int samples, unsigned seed) {
  if (phi.chart() != nabla.chart()) throw ChartMismatch();
  const int n = nabla.dim();
  const double eps = 1e-6;
  SymField exact = sym_derivative(nabla, phi);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SprayReport out;
  for (unsigned idx = seed + 1; out.evaluated < samples && idx <= seed + 10u * samples; ++idx) {
    auto x = halton_point(*nabla.chart(), idx);
    std::vector<double> v(n);
    for (auto& a : v) a = u(rng);
    try {
      auto a = spray_term(nabla, x, v);
      std::vector<double> xp(x), xm(x), vp(v), vm(v);
      for (int k = 0; k < n; ++k) {
        xp[k] += eps * v[k];
        xm[k] -= eps * v[k];
        vp[k] -= eps * a[k];
        vm[k] += eps * a[k];
      }
      double numeric = (phi.eval_tilde({nabla.chart(), xp}, vp) - phi.eval_tilde({nabla.chart(), xm}, vm)) / (2 * eps);
      double e = exact.eval_tilde({nabla.chart(), x}, v);
      out.max_residual = std::max(out.max_residual, std::abs(numeric - e) / std::max(1.0, std::abs(e)));
      ++out.evaluated;
    } catch (const PoleError&) {
      ++out.skipped;
    }
  }
  return out;
}

double sym_lie_flow_check(const Connection& nabla, const VecSymField& x, const SymField& phi, const NumericPoint& m,
                          double delta, int steps) {
  const ChartPtr& chart = nabla.chart();
  if (x.chart() != chart || phi.chart() != chart || m.chart != chart) throw ChartMismatch();
  if (x.degree() != 0) throw ComputationError("flow check needs a vector field");
  if (!(delta > 0) || steps < 1) throw ComputationError("step must be positive");
  const int n = nabla.dim();
  const int r = phi.degree();
  Connection nabla0 = torsion_free_part(nabla);
  std::vector<ScalarField> xs = x.scalars();
  std::vector<std::vector<ScalarField>> dx(n, std::vector<ScalarField>(n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) dx[a][i] = xs[a].partial(i);
  auto x_at = [&](const std::vector<double>& p) {
    auto gens = generator_values({chart, p});
    std::vector<double> out(n);
    for (int a = 0; a < n; ++a) out[a] = xs[a].is_zero() ? 0.0 : xs[a].eval_generators(gens);
    return out;
  };

  // Flow of X, optionally with the Jacobian J' = DX J (row-major after the point).
  Rhs flow = [&](const State& y) { return x_at({y.begin(), y.begin() + n}); };
  Rhs flow_jac = [&](const State& y) {
    std::vector<double> p(y.begin(), y.begin() + n);
    auto gens = generator_values({chart, p});
    State d = x_at(p);
    d.resize(n + n * n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0;
        for (int i = 0; i < n; ++i)
          if (!dx[a][i].is_zero()) s += dx[a][i].eval_generators(gens) * y[n + i * n + b];
        d[n + a * n + b] = s;
      }
    return d;
  };
  // Point plus covector transport matrix A with alpha(s) = A alpha(0):
  // A'_{ja} = G0^k_{ij} X^i A_{ka}.
  Rhs transport = [&](const State& y) {
    std::vector<double> p(y.begin(), y.begin() + n);
    auto xv = x_at(p);
    auto g = eval_gamma(nabla0, p);
    State d(xv);
    d.resize(n + n * n, 0.0);
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) {
        double s = 0;
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i) s += g[(k * n + i) * n + j] * xv[i] * y[n + k * n + a];
        d[n + j * n + a] = s;
      }
    return d;
  };
  auto with_identity = [&](const std::vector<double>& p) {
    State y(p);
    y.resize(n + n * n, 0.0);
    for (int i = 0; i < n; ++i) y[n + i * n + i] = 1;
    return y;
  };

  auto tuples = all_tuples(n, r);
  std::vector<ScalarField> comps;
  for (const auto& t : tuples) comps.push_back(phi.component(t));

  // Components of P_{2t,0} (Psi_{-t})^*_{Psi_{2t}(m)} phi_{Psi_t(m)} on all tuples.
  auto composite = [&](double t) {
    State q = rk4(flow, m.values, t, steps);
    require_finite(q);
    State pt = rk4(transport, with_identity(m.values), 2 * t, 2 * steps);
    require_finite(pt);
    std::vector<double> p(pt.begin(), pt.begin() + n);
    State back = rk4(flow_jac, with_identity(p), -t, steps);
    require_finite(back);
    Eigen::MatrixXd a(n, n), jac(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = pt[n + i * n + j];
        jac(i, j) = back[n + i * n + j];  // d(Psi_{-t})^i / dx^j at p
      }
    // M_{ik} = sum_j (A^-1)_{ij} jac_{kj}
    Eigen::MatrixXd mm = a.inverse() * jac.transpose();
    auto gens = generator_values({chart, q});
    std::vector<double> vals(tuples.size());
    for (std::size_t c = 0; c < tuples.size(); ++c) vals[c] = comps[c].is_zero() ? 0.0 : comps[c].eval_generators(gens);
    std::vector<double> out(tuples.size(), 0.0);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      for (std::size_t k = 0; k < tuples.size(); ++k) {
        if (vals[k] == 0.0) continue;
        double w = vals[k];
        for (int s = 0; s < r; ++s) w *= mm(tuples[i][s], tuples[k][s]);
        out[i] += w;
      }
    return out;
  };

  auto fp = composite(delta), fm = composite(-delta);
  SymField exact = sym_lie(nabla, x, phi);
  double res = 0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    double numeric = (fp[i] - fm[i]) / (2 * delta);
    res = std::max(res, std::abs(numeric - exact.component(tuples[i]).eval(m)));
  }
  return res;
}

}  // namespace symcartan

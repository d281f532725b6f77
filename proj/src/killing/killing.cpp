#include "symcartan/killing/killing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "symcartan/errors.hpp"

namespace symcartan {

namespace {

SymField combine(const std::vector<SymField>& elements, const DenseVec& coeffs, const ChartPtr& chart, int degree) {
  SymField out(chart, degree);
  for (std::size_t c = 0; c < elements.size(); ++c)
    if (sgn(coeffs[c]) != 0) out += elements[c].scaled(coeffs[c]);
  return out;
}

std::vector<ScalarField> flatten_vec(const VecSymField& v) {
  std::vector<ScalarField> out;
  for (int m = 0; m < v.dim(); ++m) {
    auto part = flatten(v.comp(m));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

struct VectorAnsatz {
  std::vector<VecSymField> elements;
  std::vector<std::string> labels;
};

VectorAnsatz vector_ansatz(const ChartPtr& chart, const AnsatzSpec& spec) {
  VectorAnsatz out;
  auto basis = coefficient_basis(chart, spec);
  for (int i = 0; i < chart->dim(); ++i)
    for (const auto& f : basis) {
      std::vector<ScalarField> comps(chart->dim(), ScalarField(chart));
      comps[i] = f;
      out.elements.push_back(VecSymField::vector_field(chart, comps));
      out.labels.push_back(f.to_string() + " d/d" + chart->coord(i).name);
    }
  return out;
}

FieldSpace solve_fields(const Connection& nabla, const AnsatzSpec& spec,
                        const std::function<std::vector<ScalarField>(const VecSymField&)>& residual) {
  const ChartPtr& c = nabla.chart();
  VectorAnsatz a = vector_ansatz(c, spec);
  std::vector<std::vector<ScalarField>> res;
  for (const auto& x : a.elements) res.push_back(residual(x));
  FieldSpace out;
  out.problem = assemble(res, a.labels);
  for (const auto& k : out.problem.kernel()) {
    VecSymField x(c, 0);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (sgn(k[i]) != 0) x += a.elements[i].scaled(k[i]);
    out.basis.push_back(x);
  }
  return out;
}

void require_torsion_free(const Connection& nabla, const char* what) {
  if (!nabla.is_torsion_free()) throw ComputationError(std::string(what) + " requires a torsion-free connection");
}

}  // namespace

KillingResult killing_solve(const Connection& nabla, const AnsatzSpec& ansatz) {
  const ChartPtr& c = nabla.chart();
  SymAnsatz a = sym_ansatz(c, ansatz);
  std::vector<std::vector<ScalarField>> res;
  res.reserve(a.elements.size());
  for (const auto& e : a.elements) res.push_back(flatten(sym_derivative(nabla, e)));
  KillingResult out;
  out.ansatz = ansatz;
  out.problem = assemble(res, a.labels);
  for (const auto& k : out.problem.kernel()) {
    SymField kf = combine(a.elements, k, c, ansatz.degree);
    if (!sym_derivative_components(nabla, kf).is_zero())
      throw ComputationError("kernel element fails the component recheck: " + kf.to_string());
    out.basis.push_back(std::move(kf));
  }
  return out;
}

AnsatzSpec default_ansatz(int r) {
  AnsatzSpec s;
  s.degree = r;
  s.coef_degree = r + 2;
  return s;
}

AnsatzSpec potential_ansatz(const AnsatzSpec& kill) {
  AnsatzSpec p = raised(kill, 1);
  p.degree = kill.degree - 1;
  return p;
}

namespace {

CohomologyReport cohomology_once(const Connection& nabla, const AnsatzSpec& kill, const std::optional<AnsatzSpec>& pot) {
  CohomologyReport rep;
  rep.degree = kill.degree;
  rep.kill_ansatz = kill;
  rep.potential = pot;
  KillingResult kr = killing_solve(nabla, kill);
  rep.rows = kr.problem.rows();
  rep.cols = kr.problem.cols();
  rep.kill_basis = kr.basis;
  rep.dim_kill = static_cast<int>(kr.basis.size());
  if (kill.degree == 0 || !pot || rep.kill_basis.empty()) {
    rep.representatives = rep.kill_basis;
    rep.dim_h = rep.dim_kill;
    return rep;
  }
  if (pot->degree != kill.degree - 1) throw ComputationError("potential ansatz must have degree r - 1");
  SymAnsatz p = sym_ansatz(nabla.chart(), *pot);
  std::vector<std::vector<ScalarField>> vecs;
  for (const auto& e : p.elements) vecs.push_back(flatten(sym_derivative(nabla, e)));
  for (const auto& k : rep.kill_basis) vecs.push_back(flatten(k));
  Vectorized v = vectorize(vecs);
  Echelon ech(static_cast<int>(v.keys.size()));
  for (std::size_t i = 0; i < p.elements.size(); ++i) ech.insert(v.vectors[i]);
  for (std::size_t i = 0; i < rep.kill_basis.size(); ++i)
    if (ech.insert(v.vectors[p.elements.size() + i])) rep.representatives.push_back(rep.kill_basis[i]);
  rep.dim_h = static_cast<int>(rep.representatives.size());
  rep.dim_exact_in_kill = rep.dim_kill - rep.dim_h;
  return rep;
}

bool same_dims(const CohomologyReport& a, const CohomologyReport& b) {
  return a.dim_kill == b.dim_kill && a.dim_h == b.dim_h;
}

}  // namespace

CohomologyReport cohomology(const Connection& nabla, const AnsatzSpec& kill, const std::optional<AnsatzSpec>& potential,
                            bool check_stability) {
  CohomologyReport rep = cohomology_once(nabla, kill, potential);
  if (check_stability) {
    std::optional<AnsatzSpec> p2;
    if (potential) p2 = raised(*potential, 2);
    rep.stable = same_dims(rep, cohomology_once(nabla, raised(kill, 2), p2));
  }
  return rep;
}

CohomologyReport cohomology_auto(const Connection& nabla, int r, const std::string& denominator, int max_degree) {
  AnsatzSpec kill = default_ansatz(r);
  kill.denominator = denominator;
  auto pot = [&](const AnsatzSpec& k) -> std::optional<AnsatzSpec> {
    if (r == 0) return std::nullopt;
    return potential_ansatz(k);
  };
  CohomologyReport prev = cohomology_once(nabla, kill, pot(kill));
  while (kill.coef_degree + 2 <= max_degree) {
    kill = raised(kill, 2);
    CohomologyReport next = cohomology_once(nabla, kill, pot(kill));
    if (same_dims(prev, next)) {
      prev.stable = true;
      return prev;
    }
    prev = std::move(next);
  }
  prev.stable = false;
  return prev;
}

std::vector<double> halton_point(const Chart& chart, unsigned index) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<double> out;
  for (int i = 0; i < chart.dim(); ++i) {
    unsigned b = primes[i], n = index;
    double f = 1.0, r = 0.0;
    while (n > 0) {
      f /= b;
      r += f * (n % b);
      n /= b;
    }
    out.push_back(chart.is_angle(i) ? 2 * std::numbers::pi * r : 2 * r - 1);
  }
  return out;
}

namespace {

// Values and gradients of the components of a closed-form tensor.
struct TensorSample {
  std::map<std::vector<int>, Dual> comps;
  double value(std::vector<int> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = comps.find(idx);
    return it == comps.end() ? 0.0 : it->second.v;
  }
  double grad(std::vector<int> idx, int i) const {
    std::sort(idx.begin(), idx.end());
    auto it = comps.find(idx);
    return it == comps.end() ? 0.0 : it->second.d[i];
  }
};

bool finite(const Dual& d, int n) {
  if (!std::isfinite(d.v)) return false;
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(d.d[i])) return false;
  return true;
}

// Returns false at a pole.
bool sample_tensor(const ClosedFormTensor& k, const std::vector<double>& x, TensorSample& out) {
  out.comps.clear();
  try {
    for (const auto& [idx, e] : k.components) {
      Dual d = e.eval_dual(x);
      if (!finite(d, static_cast<int>(x.size()))) return false;
      out.comps.emplace(idx, d);
    }
  } catch (const PoleError&) {
    return false;
  }
  return true;
}

bool sample_gamma(const Connection& nabla, const std::vector<double>& x, std::vector<double>& g) {
  int n = nabla.dim();
  NumericPoint p{nabla.chart(), x};
  g.assign(n * n * n, 0.0);
  try {
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const ScalarField& f = nabla.gamma(k, i, j);
          if (!f.is_zero()) g[(k * n + i) * n + j] = eval_numeric(f, p);
        }
  } catch (const PoleError&) {
    return false;
  }
  return true;
}

// Largest component of nabla^s K at one point.
double residual_at(int n, int r, const TensorSample& s, const std::vector<double>& g) {
  double worst = 0;
  for (const auto& idx : sorted_tuples(n, r + 1)) {
    double total = 0;
    for (int t = 0; t <= r; ++t) {
      int i = idx[t];
      std::vector<int> rest;
      for (int u = 0; u <= r; ++u)
        if (u != t) rest.push_back(idx[u]);
      total += s.grad(rest, i);
      for (int a = 0; a < r; ++a)
        for (int m = 0; m < n; ++m) {
          double gm = g[(m * n + i) * n + rest[a]];
          if (gm == 0.0) continue;
          std::vector<int> sub = rest;
          sub[a] = m;
          total -= gm * s.value(sub);
        }
    }
    worst = std::max(worst, std::abs(total));
  }
  return worst;
}

}  // namespace

VerifyResult killing_verify(const Connection& nabla, const ClosedFormTensor& k, const VerifyOptions& opts) {
  VerifyResult out;
  int n = nabla.dim();
  TensorSample s;
  std::vector<double> g;
  // Skipped points are replaced by further points of the sequence.
  for (unsigned idx = opts.seed + 1; out.evaluated < opts.samples && out.skipped < 10 * opts.samples; ++idx) {
    auto x = halton_point(*nabla.chart(), idx);
    if (!sample_tensor(k, x, s) || !sample_gamma(nabla, x, g)) {
      ++out.skipped;
      continue;
    }
    out.max_residual = std::max(out.max_residual, residual_at(n, k.degree, s, g));
    ++out.evaluated;
  }
  out.passed = out.evaluated == opts.samples && out.max_residual < opts.tol;
  return out;
}

ClosedFormReport closed_form_h1(const Connection& nabla, const std::vector<ClosedFormTensor>& family,
                                const VerifyOptions& opts) {
  const Chart& chart = *nabla.chart();
  for (int i = 0; i < chart.dim(); ++i)
    if (chart.is_angle(i)) throw ComputationError("closed_form_h1 needs an affine chart");
  for (const auto& k : family)
    if (k.degree != 1) throw ComputationError("closed_form_h1 takes 1-forms");
  ClosedFormReport out;
  out.all_killing = true;
  for (const auto& k : family) {
    VerifyResult v = killing_verify(nabla, k, opts);
    out.all_killing = out.all_killing && v.passed;
    out.max_residual = std::max(out.max_residual, v.max_residual);
  }
  int n = chart.dim();
  std::vector<std::vector<double>> values, curls;
  std::vector<TensorSample> s(family.size());
  int taken = 0;
  for (unsigned idx = opts.seed + 1; taken < opts.samples && idx < opts.seed + 1 + 10u * opts.samples; ++idx) {
    auto x = halton_point(chart, idx);
    bool ok = true;
    for (std::size_t f = 0; f < family.size() && ok; ++f) ok = sample_tensor(family[f], x, s[f]);
    if (!ok) continue;
    ++taken;
    for (int i = 0; i < n; ++i) {
      std::vector<double> row;
      for (const auto& sf : s) row.push_back(sf.value({i}));
      values.push_back(std::move(row));
      for (int j = i + 1; j < n; ++j) {
        std::vector<double> c;
        for (const auto& sf : s) c.push_back(sf.grad({j}, i) - sf.grad({i}, j));
        curls.push_back(std::move(c));
      }
    }
  }
  out.dim_kill = numeric_rank(values);
  out.dim_h = numeric_rank(curls);
  out.dim_closed = out.dim_kill - out.dim_h;
  return out;
}

CircleReport circle_classify(const ScalarField& f) {
  const Chart& chart = *f.chart();
  if (chart.dim() != 1 || !chart.is_angle(0)) throw ComputationError("circle_classify needs a one-angle chart");
  CircleReport out;
  if (f.is_polynomial()) {
    // Mean of cos^a sin^b over a period: zero for b = 1, binom(a, a/2) / 2^a for even a.
    Rational mean(0);
    int cg = chart.generator(0);
    for (const auto& t : f.num().terms()) {
      int a = t.mono.exponent(cg), b = t.mono.exponent(cg + 1);
      if (b != 0 || a % 2 != 0) continue;
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), a, a / 2);
      mpz_class pow2 = mpz_class(1) << a;
      mean += t.coeff * Rational(binom, pow2);
    }
    mean.canonicalize();
    out.exact = true;
    out.integral = 2 * std::numbers::pi * mean.get_d();
    out.is_levi_civita = sgn(mean) == 0;
  } else {
    // Trapezoidal rule converges spectrally for smooth periodic integrands.
    const int n = 4096;
    double sum = 0;
    for (int k = 0; k < n; ++k) sum += eval_numeric(f, NumericPoint{f.chart(), {2 * std::numbers::pi * k / n}});
    out.integral = 2 * std::numbers::pi * sum / n;
    out.is_levi_civita = std::abs(out.integral) < 1e-10;
  }
  out.dim_kill = out.dim_h = out.is_levi_civita ? 1 : 0;
  return out;
}

FieldSpace affine_fields(const Connection& nabla, const AnsatzSpec& ansatz) {
  require_torsion_free(nabla, "affine_fields");
  CurvatureField r = riemann(nabla);
  return solve_fields(nabla, ansatz, [&](const VecSymField& x) {
    return flatten_vec(sym_iota_curvature(r, x) + sym_curvature(nabla, x));
  });
}

FieldSpace parallel_fields(const Connection& nabla, const AnsatzSpec& ansatz) {
  require_torsion_free(nabla, "parallel_fields");
  CurvatureField r = riemann(nabla);
  return solve_fields(nabla, ansatz, [&](const VecSymField& x) {
    auto out = flatten_vec(sym_iota_curvature(r, x));
    VecSymField nx = nabla_endomorphism(nabla, x);
    for (int m = 0; m < x.dim(); ++m)
      for (int j = 0; j < x.dim(); ++j) out.push_back(nx.endo(m, j));
    return out;
  });
}

BivectorSpace parallel_bivectors(const Connection& nabla, const AnsatzSpec& ansatz) {
  require_torsion_free(nabla, "parallel_bivectors");
  const ChartPtr& c = nabla.chart();
  int n = c->dim();
  CurvatureField r = riemann(nabla);
  auto basis = coefficient_basis(c, ansatz);
  std::vector<FieldMatrix> elements;
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (const auto& f : basis) {
        FieldMatrix pi = zero_matrix(c, n, n);
        pi[a][b] = f;
        pi[b][a] = -f;
        elements.push_back(std::move(pi));
        labels.push_back(f.to_string() + " d/d" + c->coord(a).name + "^d/d" + c->coord(b).name);
      }
  // S^l_ijk = R^l_ijk + R^l_jik with R^l_ijk = dx^l(R(d_j, d_k) d_i).
  auto s = [&](int l, int i, int j, int k) { return r.appendix(l, i, j, k) + r.appendix(l, j, i, k); };
  std::vector<std::vector<ScalarField>> res;
  for (const auto& pi : elements) {
    std::vector<ScalarField> out;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          ScalarField v = partial(pi[j][k], i);
          for (int l = 0; l < n; ++l) v += nabla.gamma(k, l, i) * pi[j][l] + nabla.gamma(j, l, i) * pi[l][k];
          out.push_back(v);
        }
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int l = 0; l < n; ++l)
          for (int m = l; m < n; ++m) {
            ScalarField v(c);
            for (int k = 0; k < n; ++k) v += pi[m][k] * s(l, i, j, k) + pi[l][k] * s(m, i, j, k);
            out.push_back(v);
          }
    res.push_back(std::move(out));
  }
  BivectorSpace out;
  out.problem = assemble(res, labels);
  for (const auto& k : out.problem.kernel()) {
    FieldMatrix pi = zero_matrix(c, n, n);
    for (std::size_t e = 0; e < k.size(); ++e)
      if (sgn(k[e]) != 0)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) pi[a][b] += elements[e][a][b].scaled(k[e]);
    out.basis.push_back(std::move(pi));
  }
  return out;
}

PwLiftReport pw_cohomology_lift(const Connection& nabla, const AnsatzSpec& fields, const AnsatzSpec& kill) {
  require_torsion_free(nabla, "pw_cohomology_lift");
  PwLiftReport out;
  out.bivectors = static_cast<int>(parallel_bivectors(nabla, fields).basis.size());
  out.aff = static_cast<int>(affine_fields(nabla, fields).basis.size());
  out.aff0 = static_cast<int>(parallel_fields(nabla, fields).basis.size());
  out.h1 = cohomology(nabla, kill, potential_ansatz(kill), false).dim_h;
  return out;
}

namespace {

std::vector<int> shifted(int n, int offset) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i + offset;
  return m;
}

SymField pull(const SymField& phi, const ChartPtr& product, int offset) {
  auto map = shifted(phi.dim(), offset);
  std::map<std::vector<int>, ScalarField> comps;
  for (const auto& [idx, f] : phi.components()) {
    std::vector<int> j;
    for (int i : idx) j.push_back(i + offset);
    comps.emplace(std::move(j), transfer(f, product, map));
  }
  return SymField::from_components(product, phi.degree(), comps);
}

}  // namespace

Connection product_connection(const Connection& a, const Connection& b) {
  ChartPtr p = product_chart(*a.chart(), *b.chart());
  int n1 = a.dim(), n2 = b.dim();
  Tensor3 g(p);
  auto m1 = shifted(n1, 0), m2 = shifted(n2, n1);
  for (int k = 0; k < n1; ++k)
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) g(k, i, j) = transfer(a.gamma(k, i, j), p, m1);
  for (int k = 0; k < n2; ++k)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) g(k + n1, i + n1, j + n1) = transfer(b.gamma(k, i, j), p, m2);
  return Connection(std::move(g));
}

SymField pull_first(const SymField& phi, const ChartPtr& product) { return pull(phi, product, 0); }

SymField pull_second(const SymField& phi, const ChartPtr& product) {
  return pull(phi, product, product->dim() - phi.dim());
}

KunnethReport kunneth_subspace(const Connection& a, const std::vector<CohomologyReport>& h1, const Connection& b,
                               const std::vector<CohomologyReport>& h2, int r) {
  if (static_cast<int>(h1.size()) <= r || static_cast<int>(h2.size()) <= r)
    throw ComputationError("kunneth_subspace needs reports for degrees 0..r");
  KunnethReport out;
  out.product = product_connection(a, b);
  const ChartPtr& p = out.product.chart();
  for (int i = 0; i <= r; ++i) {
    const auto& x = h1[i];
    const auto& y = h2[r - i];
    if (x.degree != i || y.degree != r - i) throw ComputationError("kunneth_subspace: report degrees out of order");
    out.dimension += x.dim_h * y.dim_h;
    for (const auto& u : x.representatives)
      for (const auto& v : y.representatives) out.basis.push_back(pull_first(u, p) * pull_second(v, p));
  }
  out.all_killing = std::all_of(out.basis.begin(), out.basis.end(),
                                [&](const SymField& k) { return sym_derivative(out.product, k).is_zero(); });
  return out;
}

}  // namespace symcartan

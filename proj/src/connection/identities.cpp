#include "symcartan/connection/identities.hpp"

#include "symcartan/errors.hpp"

namespace symcartan {

bool IdentityReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void IdentityReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

std::string residual(const SymField& lhs, const SymField& rhs) {
  SymField d = lhs - rhs;
  return d.is_zero() ? std::string() : "residual " + d.to_string();
}

std::string residual(const VecSymField& lhs, const VecSymField& rhs) {
  VecSymField d = lhs - rhs;
  return d.is_zero() ? std::string() : "residual " + d.to_string();
}

}  // namespace

VecSymField variation_sigma(const Connection& nabla, const Connection& nabla2) {
  require_same_chart(nabla.chart(), nabla2.chart());
  int n = nabla.dim();
  std::vector<SymField> comps;
  for (int k = 0; k < n; ++k) {
    std::map<std::vector<int>, ScalarField> full;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        full.emplace(std::vector<int>{i, j}, nabla.gamma(k, i, j) - nabla2.gamma(k, i, j) + nabla.gamma(k, j, i) -
                                                 nabla2.gamma(k, j, i));
    comps.push_back(sym_projection(nabla.chart(), 2, full));
  }
  return VecSymField(nabla.chart(), 2, std::move(comps));
}

IdentityReport variation_check(const Connection& nabla, const Connection& nabla2, const std::vector<SymField>& forms,
                               const std::vector<VecSymField>& vectors) {
  IdentityReport rep;
  VecSymField sigma = variation_sigma(nabla, nabla2);
  for (std::size_t f = 0; f < forms.size(); ++f) {
    const SymField& phi = forms[f];
    SymField lhs = sym_derivative(nabla2, phi);
    SymField rhs = sym_derivative(nabla, phi) + sym_contract(sigma, phi);
    rep.add("sym_derivative form " + std::to_string(f), lhs == rhs, residual(lhs, rhs));
    for (std::size_t v = 0; v < vectors.size(); ++v) {
      const VecSymField& x = vectors[v];
      SymField l2 = sym_lie(nabla2, x, phi);
      SymField r2 = sym_lie(nabla, x, phi) + sym_contract(insert_first(sigma, x), phi);
      rep.add("sym_lie form " + std::to_string(f) + " field " + std::to_string(v), l2 == r2, residual(l2, r2));
    }
  }
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      VecSymField lhs = sym_bracket(nabla2, vectors[a], vectors[b]);
      VecSymField rhs = sym_bracket(nabla, vectors[a], vectors[b]) - evaluate(sigma, {vectors[a], vectors[b]});
      rep.add("sym_bracket fields " + std::to_string(a) + "," + std::to_string(b), lhs == rhs, residual(lhs, rhs));
    }
  return rep;
}

VecSymField commutator_endomorphism(const Connection& nabla, const VecSymField& x, const VecSymField& y) {
  int n = nabla.dim();
  const ChartPtr& chart = nabla.chart();
  CurvatureField r = riemann(nabla);
  FieldMatrix a = zero_matrix(chart, n, n);
  for (int j = 0; j < n; ++j) {
    VecSymField z = VecSymField::coordinate_vector(chart, j);
    VecSymField zx = covariant_derivative(nabla, z, x);
    VecSymField zy = covariant_derivative(nabla, z, y);
    VecSymField col = covariant_derivative(nabla, zx, y) - covariant_derivative(nabla, zy, x) - r.apply(x, y, z);
    for (int m = 0; m < n; ++m) a[m][j] = col.scalar(m).scaled(2);
  }
  return VecSymField::endomorphism(chart, a);
}

IdentityReport commutator_identities(const Connection& nabla, const VecSymField& x, const VecSymField& y,
                                     const std::vector<SymField>& forms) {
  if (!nabla.is_torsion_free()) throw ComputationError("commutator identities need a torsion-free connection");
  IdentityReport rep;
  VecSymField bx = nabla_endomorphism(nabla, x);
  VecSymField bracket_s = sym_bracket(nabla, x, y);
  VecSymField com1 = commutator_endomorphism(nabla, x, y);
  VecSymField lie_xy = lie_bracket(x, y);
  VecSymField com2 = sym_iota_curvature(riemann(nabla), x) + sym_curvature(nabla, x);
  for (std::size_t f = 0; f < forms.size(); ++f) {
    const SymField& phi = forms[f];
    std::string tag = " form " + std::to_string(f);
    int r = phi.degree();
    if (r >= 2) {
      SymField l = contract(x, contract(y, phi)) - contract(y, contract(x, phi));
      rep.add("[iota_X,iota_Y]=0" + tag, l.is_zero(), l.is_zero() ? "" : "residual " + l.to_string());
    }
    {
      SymField d = sym_derivative(nabla, phi);
      SymField l = sym_derivative(nabla, d) - sym_derivative(nabla, d);
      rep.add("[nabla^s,nabla^s]=0" + tag, l.is_zero());
    }
    if (r >= 1) {
      // Independent side: nabla_X phi - iota^s_{nabla X} phi.
      SymField lhs = contract(x, sym_derivative(nabla, phi)) - sym_derivative(nabla, contract(x, phi));
      SymField rhs = covariant_derivative(nabla, x, phi) - sym_contract(bx, phi);
      rep.add("[iota_X,nabla^s]=L^s_X" + tag, lhs == rhs, residual(lhs, rhs));

      SymField l2 = sym_lie(nabla, x, contract(y, phi)) - contract(y, sym_lie(nabla, x, phi));
      SymField r2 = contract(bracket_s, phi);
      rep.add("[L^s_X,iota_Y]=iota_[X,Y]_s" + tag, l2 == r2, residual(l2, r2));
    }
    {
      SymField lhs = sym_lie(nabla, x, sym_lie(nabla, y, phi)) - sym_lie(nabla, y, sym_lie(nabla, x, phi));
      SymField rhs = sym_lie(nabla, lie_xy, phi) + sym_contract(com1, phi);
      rep.add("[L^s_X,L^s_Y]" + tag, lhs == rhs, residual(lhs, rhs));
    }
    {
      SymField lhs = sym_derivative(nabla, sym_lie(nabla, x, phi)) - sym_lie(nabla, x, sym_derivative(nabla, phi));
      SymField rhs = a_sym_derivative(nabla, bx, phi).scaled(Rational(2)) + sym_contract(com2, phi);
      rep.add("[nabla^s,L^s_X]" + tag, lhs == rhs, residual(lhs, rhs));
    }
  }
  return rep;
}

std::vector<SymField> spanning_family(const ChartPtr& chart) {
  int n = chart->dim();
  std::vector<ScalarField> fs;
  for (int i = 0; i < n; ++i) {
    if (chart->is_angle(i)) {
      fs.push_back(ScalarField::cos_of(chart, i));
      fs.push_back(ScalarField::sin_of(chart, i));
    } else {
      fs.push_back(ScalarField::coordinate(chart, i));
    }
  }
  std::vector<SymField> out;
  for (const auto& f : fs) out.push_back(SymField::scalar(f));
  for (int i = 0; i < n; ++i) {
    SymField di = SymField::dx(chart, i);
    out.push_back(di);
    for (const auto& f : fs) out.push_back(di.scaled(f));
    for (int j = i; j < n; ++j) {
      SymField dij = di * SymField::dx(chart, j);
      out.push_back(dij);
      for (int k = j; k < n; ++k) out.push_back(dij * SymField::dx(chart, k));
    }
  }
  return out;
}

bool sym_lie_commutes(const Connection& nabla, const VecSymField& x, const std::vector<SymField>& forms) {
  for (const auto& phi : forms)
    if (sym_derivative(nabla, sym_lie(nabla, x, phi)) != sym_lie(nabla, x, sym_derivative(nabla, phi))) return false;
  return true;
}

VecSymField raise_index(const SymField& g, const SymField& alpha) {
  if (g.degree() != 2 || alpha.degree() != 1) throw ComputationError("raise_index needs a 2-form and a 1-form");
  int n = g.dim();
  FieldMatrix m = zero_matrix(g.chart(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g.component({i, j});
  if (determinant(m).is_zero()) throw ComputationError("metric is degenerate");
  FieldMatrix inv = inverse(m);
  std::vector<ScalarField> x(n, ScalarField(g.chart()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ScalarField aj = alpha.component({j});
      if (!aj.is_zero() && !inv[i][j].is_zero()) x[i] += inv[i][j] * aj;
    }
  return VecSymField::vector_field(g.chart(), x);
}

bool levi_civita_check(const Connection& nabla, const SymField& g, const std::vector<SymField>& forms) {
  require_same_chart(nabla.chart(), g.chart());
  if (g.degree() != 2) throw ComputationError("metric must have degree 2");
  int n = g.dim();
  FieldMatrix m = zero_matrix(g.chart(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g.component({i, j});
  if (determinant(m).is_zero()) throw ComputationError("metric is degenerate");
  if (!nabla.is_torsion_free() || !is_parallel(nabla, g)) return false;
  for (const auto& alpha : forms) {
    SymField lhs = sym_derivative(nabla, alpha);
    SymField rhs = lie_derivative(raise_index(g, alpha), g);
    if (lhs != rhs) throw ComputationError("symmetric derivative of the metric connection disagrees with L_{g^-1 alpha} g");
  }
  return true;
}

}  // namespace symcartan

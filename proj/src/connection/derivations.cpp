#include "symcartan/connection/derivations.hpp"

#include <random>

#include "symcartan/errors.hpp"
#include "symcartan/killing/ansatz.hpp"

namespace symcartan {

ScalarField tilde_at(const SymField& phi, const std::vector<ScalarField>& x) {
  if (static_cast<int>(x.size()) != phi.dim()) throw ComputationError("argument has wrong dimension");
  ScalarField out(phi.chart());
  for (const auto& [m, c] : phi.fiber()) {
    ScalarField t = c;
    for (int i = 0; i < phi.dim(); ++i)
      if (m.exponent(i) > 0) t *= x[i].pow(m.exponent(i));
    out += t;
  }
  return out;
}

namespace {

std::vector<ScalarField> quad(const VecSymField& sigma, const std::vector<ScalarField>& x) {
  std::vector<ScalarField> out;
  for (int m = 0; m < sigma.dim(); ++m) out.push_back(tilde_at(sigma.comp(m), x).scaled(Rational(2)));
  return out;
}

std::vector<ScalarField> add(std::vector<ScalarField> a, const std::vector<ScalarField>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

std::vector<ScalarField> sigma_at(const VecSymField& sigma, const std::vector<ScalarField>& x,
                                  const std::vector<ScalarField>& y) {
  if (sigma.degree() != 2) throw ComputationError("sigma must have degree 2");
  auto s = quad(sigma, add(x, y)), sx = quad(sigma, x), sy = quad(sigma, y);
  for (std::size_t m = 0; m < s.size(); ++m) s[m] = (s[m] - sx[m] - sy[m]).scaled(Rational(1, 2));
  return s;
}

namespace {

std::vector<ScalarField> generator_functions(const ChartPtr& chart) {
  std::vector<ScalarField> out;
  for (int i = 0; i < chart->dim(); ++i) {
    if (chart->is_angle(i)) {
      out.push_back(ScalarField::cos_of(chart, i));
      out.push_back(ScalarField::sin_of(chart, i));
    } else {
      out.push_back(ScalarField::coordinate(chart, i));
    }
  }
  return out;
}

std::vector<ScalarField> constant_vector(const ChartPtr& chart, const std::vector<long>& v) {
  std::vector<ScalarField> out;
  for (long a : v) out.emplace_back(chart, a);
  return out;
}

// e_i and e_i + e_j; their squares span Sym^2.
std::vector<std::vector<ScalarField>> spanning_vectors(const ChartPtr& chart) {
  int n = chart->dim();
  std::vector<std::vector<ScalarField>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<long> v(n, 0);
      v[i] += 1;
      if (j != i) v[j] += 1;
      out.push_back(constant_vector(chart, v));
    }
  return out;
}

// Components delta_ij; dx.dx has component 2.
SymField euclidean(const ChartPtr& chart) {
  SymField c(chart, 2);
  for (int i = 0; i < chart->dim(); ++i) c += SymField::dx(chart, i) * SymField::dx(chart, i);
  return c.scaled(Rational(1, 2));
}

struct Basis {
  std::vector<VecSymField> a;
  std::vector<VecSymField> sigma;
};

Basis derivation_basis(const ChartPtr& chart, int coef_degree) {
  int n = chart->dim();
  AnsatzSpec spec;
  spec.degree = 0;
  spec.coef_degree = coef_degree;
  auto coeffs = coefficient_basis(chart, spec);
  Basis b;
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (const auto& f : coeffs) {
        std::vector<std::vector<ScalarField>> a(n, std::vector<ScalarField>(n, ScalarField(chart)));
        a[m][j] = f;
        b.a.push_back(VecSymField::endomorphism(chart, a));
      }
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (const auto& f : coeffs) {
          std::vector<SymField> comps(n, SymField(chart, 2));
          comps[m] = (SymField::dx(chart, j) * SymField::dx(chart, k)).scaled(f);
          b.sigma.push_back(VecSymField(chart, 2, std::move(comps)));
        }
  return b;
}

bool identities_at(const GeneralDerivation& d, const ChartPtr& chart) {
  int n = chart->dim();
  auto gens = generator_functions(chart);
  std::vector<ScalarField> fs = gens;
  fs.push_back(gens[0] * gens.back() + gens[0]);
  for (const auto& f : fs) {
    SymField sf = SymField::scalar(f);
    SymField df = d(sf);
    SymField lhs = d(d(SymField::scalar(f * f))) - d(df).scaled(f).scaled(Rational(2));
    if (lhs != (df * df).scaled(Rational(2))) return false;
  }
  // Residuals of the sigma part alone.
  GeneralDerivation s{VecSymField(chart, 1), d.sigma, d.aux};
  SymField c = euclidean(chart);
  SymField ddc = s(s(c));
  std::vector<std::vector<ScalarField>> xs = spanning_vectors(chart);
  std::vector<long> odd(n);
  for (int i = 0; i < n; ++i) odd[i] = 2 * i - 1;
  xs.push_back(constant_vector(chart, odd));
  for (const auto& x : xs) {
    auto sxx = sigma_at(d.sigma, x, x);
    auto nested = sigma_at(d.sigma, sxx, x);
    ScalarField rhs(chart);
    for (int k = 0; k < n; ++k) {
      SymField ddk = s(s(SymField::dx(chart, k)));
      if (tilde_at(ddk, x).scaled(Rational(6)) != nested[k].scaled(Rational(3))) return false;
      rhs += (nested[k] * x[k]).scaled(Rational(12)) + (sxx[k] * sxx[k]).scaled(Rational(6));
    }
    if (tilde_at(ddc, x).scaled(Rational(24)) != rhs) return false;
  }
  return true;
}

bool squares_to_zero_on_family(const GeneralDerivation& d, const ChartPtr& chart) {
  std::vector<SymField> family{euclidean(chart)};
  for (const auto& f : generator_functions(chart)) family.push_back(SymField::scalar(f * f));
  for (int k = 0; k < chart->dim(); ++k) family.push_back(SymField::dx(chart, k));
  for (const auto& phi : family)
    if (!d(d(phi)).is_zero()) return false;
  return true;
}

}  // namespace

SquareZeroReport square_zero_derivations(const ChartPtr& chart, int coef_degree, int samples, unsigned seed) {
  if (coef_degree < 0) throw ComputationError("negative coefficient degree");
  Connection flat(chart);
  Basis basis = derivation_basis(chart, coef_degree);
  SquareZeroReport rep;
  rep.a_unknowns = static_cast<int>(basis.a.size());
  rep.sigma_unknowns = static_cast<int>(basis.sigma.size());
  auto gens = generator_functions(chart);
  auto xs = spanning_vectors(chart);

  // Residual columns: D f on the generators, then sigma(X, X) on the spanning family.
  auto function_part = [&](const GeneralDerivation& d) {
    std::vector<ScalarField> out;
    for (const auto& f : gens) {
      auto comps = flatten(d(SymField::scalar(f)));
      out.insert(out.end(), comps.begin(), comps.end());
    }
    return out;
  };
  auto sigma_part = [&](const VecSymField& sigma) {
    std::vector<ScalarField> out;
    for (const auto& x : xs) {
      auto v = sigma_at(sigma, x, x);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  };
  VecSymField zero_a(chart, 1), zero_sigma(chart, 2);
  std::vector<std::vector<ScalarField>> joint, a_only, sigma_only;
  std::vector<std::string> labels, a_labels, s_labels;
  for (std::size_t u = 0; u < basis.a.size(); ++u) {
    auto fp = function_part(general_derivation(basis.a[u], zero_sigma, flat));
    auto sp = sigma_part(zero_sigma);
    a_only.push_back(fp);
    fp.insert(fp.end(), sp.begin(), sp.end());
    joint.push_back(std::move(fp));
    labels.push_back("A" + std::to_string(u));
    a_labels.push_back(labels.back());
  }
  for (std::size_t u = 0; u < basis.sigma.size(); ++u) {
    auto fp = function_part(general_derivation(zero_a, basis.sigma[u], flat));
    auto sp = sigma_part(basis.sigma[u]);
    sigma_only.push_back(sp);
    fp.insert(fp.end(), sp.begin(), sp.end());
    joint.push_back(std::move(fp));
    labels.push_back("sigma" + std::to_string(u));
    s_labels.push_back(labels.back());
  }
  rep.a_kernel = assemble(a_only, a_labels).nullity();
  rep.sigma_kernel = assemble(sigma_only, s_labels).nullity();
  rep.joint_nullity = assemble(joint, labels).nullity();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  rep.identities_hold = true;
  rep.samples_square_nonzero = true;
  for (int s = 0; s < samples; ++s) {
    VecSymField a(chart, 1), sigma(chart, 2);
    for (const auto& b : basis.a) {
      int c = coef(rng);
      if (c == 0) continue;
      a += b.scaled(Rational(c));
    }
    for (const auto& b : basis.sigma) {
      int c = coef(rng);
      if (c == 0) continue;
      sigma += b.scaled(Rational(c));
    }
    // Every other sample is a pure sigma derivation.
    if (s % 2 == 1) a = VecSymField(chart, 1);
    GeneralDerivation d = general_derivation(a, sigma, flat);
    if (!identities_at(d, chart)) rep.identities_hold = false;
    if (!(a.is_zero() && sigma.is_zero()) && squares_to_zero_on_family(d, chart))
      rep.samples_square_nonzero = false;
    ++rep.samples;
  }
  return rep;
}

}  // namespace symcartan

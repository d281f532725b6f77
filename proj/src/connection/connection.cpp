#include "symcartan/connection/connection.hpp"

#include "symcartan/errors.hpp"

namespace symcartan {

FieldMatrix zero_matrix(const ChartPtr& chart, int rows, int cols) {
  return FieldMatrix(rows, std::vector<ScalarField>(cols, ScalarField(chart)));
}

FieldMatrix inverse(const FieldMatrix& a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return {};
  const ChartPtr& chart = a[0][0].chart();
  FieldMatrix m = a;
  FieldMatrix inv = zero_matrix(chart, n, n);
  for (int i = 0; i < n; ++i) inv[i][i] = ScalarField(chart, 1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw ComputationError("matrix is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    ScalarField p = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      ScalarField f = m[r][col];
      for (int j = 0; j < n; ++j) {
        if (!m[col][j].is_zero()) m[r][j] -= f * m[col][j];
        if (!inv[col][j].is_zero()) inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

ScalarField determinant(const FieldMatrix& a) {
  int n = static_cast<int>(a.size());
  const ChartPtr& chart = a.at(0).at(0).chart();
  FieldMatrix m = a;
  ScalarField det(chart, 1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return ScalarField(chart);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      ScalarField f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j)
        if (!m[col][j].is_zero()) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

Tensor3::Tensor3(ChartPtr chart) : chart_(std::move(chart)), n_(chart_->dim()) {
  data_.assign(n_ * n_ * n_, ScalarField(chart_));
}

bool Tensor3::is_zero() const {
  for (const auto& f : data_)
    if (!f.is_zero()) return false;
  return true;
}

bool operator==(const Tensor3& a, const Tensor3& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (a.data_[i] != b.data_[i]) return false;
  return true;
}

Connection::Connection(ChartPtr chart) : gamma_(std::move(chart)) {}

Connection::Connection(Tensor3 gamma) : gamma_(std::move(gamma)) {}

void Connection::set_gamma(int k, int i, int j, const ScalarField& f) {
  require_same_chart(chart(), f.chart());
  gamma_(k, i, j) = f;
}

bool Connection::is_torsion_free() const { return torsion(*this).is_zero(); }

CurvatureField::CurvatureField(ChartPtr chart) : chart_(std::move(chart)), n_(chart_->dim()) {
  data_.assign(n_ * n_ * n_ * n_, ScalarField(chart_));
}

bool CurvatureField::is_zero() const {
  for (const auto& f : data_)
    if (!f.is_zero()) return false;
  return true;
}

VecSymField CurvatureField::apply(const VecSymField& x, const VecSymField& y, const VecSymField& z) const {
  std::vector<ScalarField> out(n_, ScalarField(chart_));
  for (int i = 0; i < n_; ++i) {
    ScalarField xi = x.scalar(i);
    if (xi.is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      ScalarField xy = xi * y.scalar(j);
      if (xy.is_zero()) continue;
      for (int k = 0; k < n_; ++k) {
        ScalarField xyz = xy * z.scalar(k);
        if (xyz.is_zero()) continue;
        for (int l = 0; l < n_; ++l)
          if (!op(l, i, j, k).is_zero()) out[l] += xyz * op(l, i, j, k);
      }
    }
  }
  return VecSymField::vector_field(chart_, out);
}

Tensor3 torsion(const Connection& nabla) {
  Tensor3 t(nabla.chart());
  int n = nabla.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(k, i, j) = nabla.gamma(k, i, j) - nabla.gamma(k, j, i);
  return t;
}

Connection torsion_free_part(const Connection& nabla) {
  Tensor3 g(nabla.chart());
  int n = nabla.dim();
  Rational half(1, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(k, i, j) = (nabla.gamma(k, i, j) + nabla.gamma(k, j, i)).scaled(half);
  return Connection(std::move(g));
}

VecSymField lie_bracket(const VecSymField& x, const VecSymField& y) {
  require_same_chart(x.chart(), y.chart());
  int n = x.dim();
  std::vector<ScalarField> out;
  for (int k = 0; k < n; ++k) out.push_back(apply(x, y.scalar(k)) - apply(y, x.scalar(k)));
  return VecSymField::vector_field(x.chart(), out);
}

VecSymField covariant_derivative(const Connection& nabla, const VecSymField& x, const VecSymField& y) {
  require_same_chart(nabla.chart(), x.chart());
  int n = nabla.dim();
  std::vector<ScalarField> out;
  for (int k = 0; k < n; ++k) {
    ScalarField v = apply(x, y.scalar(k));
    for (int i = 0; i < n; ++i) {
      ScalarField xi = x.scalar(i);
      if (xi.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!nabla.gamma(k, i, j).is_zero()) v += xi * y.scalar(j) * nabla.gamma(k, i, j);
    }
    out.push_back(std::move(v));
  }
  return VecSymField::vector_field(x.chart(), out);
}

VecSymField nabla_endomorphism(const Connection& nabla, const VecSymField& x) {
  int n = nabla.dim();
  FieldMatrix a = zero_matrix(nabla.chart(), n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      ScalarField v = x.scalar(k).partial(j);
      for (int m = 0; m < n; ++m)
        if (!nabla.gamma(k, j, m).is_zero()) v += nabla.gamma(k, j, m) * x.scalar(m);
      a[k][j] = std::move(v);
    }
  return VecSymField::endomorphism(nabla.chart(), a);
}

VecSymField sym_bracket(const Connection& nabla, const VecSymField& x, const VecSymField& y) {
  return covariant_derivative(nabla, x, y) + covariant_derivative(nabla, y, x);
}

VecSymField evaluate(const VecSymField& sigma, const std::vector<VecSymField>& args) {
  int k = sigma.degree();
  if (static_cast<int>(args.size()) != k) throw ComputationError("wrong number of arguments");
  int n = sigma.dim();
  std::vector<ScalarField> out(n, ScalarField(sigma.chart()));
  std::vector<int> idx(k, 0);
  for (;;) {
    ScalarField w(sigma.chart(), 1);
    for (int s = 0; s < k && !w.is_zero(); ++s) w *= args[s].scalar(idx[s]);
    if (!w.is_zero())
      for (int m = 0; m < n; ++m) {
        ScalarField c = sigma.comp(m).component(idx);
        if (!c.is_zero()) out[m] += w * c;
      }
    int s = 0;
    while (s < k && ++idx[s] == n) idx[s++] = 0;
    if (s == k) break;
  }
  return VecSymField::vector_field(sigma.chart(), out);
}

VecSymField insert_first(const VecSymField& sigma, const VecSymField& x) {
  if (sigma.degree() != 2) throw ComputationError("insert_first needs a degree-2 field");
  int n = sigma.dim();
  FieldMatrix a = zero_matrix(sigma.chart(), n, n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        ScalarField xi = x.scalar(i);
        if (!xi.is_zero()) a[m][j] += xi * sigma.comp(m).component({i, j});
      }
  return VecSymField::endomorphism(sigma.chart(), a);
}

SymField covariant_derivative(const Connection& nabla, const VecSymField& x, const SymField& phi) {
  require_same_chart(nabla.chart(), phi.chart());
  int n = nabla.dim();
  SymField out(phi.chart(), phi.degree());
  for (int m = 0; m < n; ++m) {
    ScalarField xm = x.scalar(m);
    if (xm.is_zero()) continue;
    SymField term = phi.partial_x(m);
    if (phi.degree() > 0)
      for (int l = 0; l < n; ++l) {
        SymField dv = phi.partial_v(l);
        if (dv.is_zero()) continue;
        for (int j = 0; j < n; ++j)
          if (!nabla.gamma(l, m, j).is_zero()) term -= dv.times_v(j).scaled(nabla.gamma(l, m, j));
      }
    out += term.scaled(xm);
  }
  return out;
}

SymField sym_derivative(const Connection& nabla, const SymField& phi) {
  require_same_chart(nabla.chart(), phi.chart());
  int n = nabla.dim();
  const ChartPtr& chart = phi.chart();
  SymField out(chart, phi.degree() + 1);
  for (int i = 0; i < n; ++i) out += phi.partial_x(i).times_v(i);
  if (phi.degree() == 0) return out;
  for (int k = 0; k < n; ++k) {
    SymField dv = phi.partial_v(k);
    if (dv.is_zero()) continue;
    // v^i v^j Gamma^k_ij as a quadratic in the velocities.
    FiberPoly q;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ScalarField& g = nabla.gamma(k, i, j);
        if (g.is_zero()) continue;
        Monomial m = Monomial::var(i) * Monomial::var(j);
        auto it = q.find(m);
        if (it == q.end())
          q.emplace(m, g);
        else
          it->second += g;
      }
    if (q.empty()) continue;
    out -= sym_product(SymField::from_fiber(chart, 2, std::move(q)), dv);
  }
  return out;
}

SymField sym_derivative_components(const Connection& nabla, const SymField& phi) {
  require_same_chart(nabla.chart(), phi.chart());
  int n = nabla.dim();
  int r = phi.degree();
  const ChartPtr& chart = phi.chart();
  // (nabla_i phi)_J = d_i phi_J - sum_s Gamma^l_{i j_s} phi_{J[s -> l]}
  auto nabla_comp = [&](int i, const std::vector<int>& J) {
    ScalarField v = phi.component(J).partial(i);
    for (int s = 0; s < r; ++s)
      for (int l = 0; l < n; ++l) {
        const ScalarField& g = nabla.gamma(l, i, J[s]);
        if (g.is_zero()) continue;
        std::vector<int> K = J;
        K[s] = l;
        ScalarField c = phi.component(K);
        if (!c.is_zero()) v -= g * c;
      }
    return v;
  };
  std::map<std::vector<int>, ScalarField> comps;
  for (const auto& I : sorted_tuples(n, r + 1)) {
    ScalarField v(chart);
    for (int t = 0; t <= r; ++t) {
      std::vector<int> J;
      for (int s = 0; s <= r; ++s)
        if (s != t) J.push_back(I[s]);
      v += nabla_comp(I[t], J);
    }
    if (!v.is_zero()) comps.emplace(I, v);
  }
  return SymField::from_components(chart, r + 1, comps);
}

SymField sym_lie(const Connection& nabla, const VecSymField& x, const SymField& phi) {
  if (phi.degree() == 0) return SymField::scalar(apply(x, phi.as_scalar()));
  return contract(x, sym_derivative(nabla, phi)) - sym_derivative(nabla, contract(x, phi));
}

SymField lie_derivative(const VecSymField& x, const SymField& phi) {
  require_same_chart(x.chart(), phi.chart());
  int n = phi.dim();
  int r = phi.degree();
  std::map<std::vector<int>, ScalarField> comps;
  for (const auto& I : sorted_tuples(n, r)) {
    ScalarField v = apply(x, phi.component(I));
    for (int t = 0; t < r; ++t)
      for (int m = 0; m < n; ++m) {
        ScalarField dx = x.scalar(m).partial(I[t]);
        if (dx.is_zero()) continue;
        std::vector<int> K = I;
        K[t] = m;
        v += phi.component(K) * dx;
      }
    if (!v.is_zero()) comps.emplace(I, v);
  }
  return SymField::from_components(phi.chart(), r, comps);
}

SymField a_sym_derivative(const Connection& nabla, const VecSymField& a, const SymField& phi) {
  if (a.degree() != 1) throw ComputationError("a_sym_derivative needs an endomorphism field");
  return sym_contract(a, sym_derivative(nabla, phi)) - sym_derivative(nabla, sym_contract(a, phi));
}

CurvatureField riemann(const Connection& nabla) {
  int n = nabla.dim();
  CurvatureField r(nabla.chart());
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j) continue;
          ScalarField v = nabla.gamma(l, j, k).partial(i) - nabla.gamma(l, i, k).partial(j);
          for (int m = 0; m < n; ++m) {
            if (!nabla.gamma(l, i, m).is_zero() && !nabla.gamma(m, j, k).is_zero())
              v += nabla.gamma(l, i, m) * nabla.gamma(m, j, k);
            if (!nabla.gamma(l, j, m).is_zero() && !nabla.gamma(m, i, k).is_zero())
              v -= nabla.gamma(l, j, m) * nabla.gamma(m, i, k);
          }
          r.op(l, i, j, k) = std::move(v);
        }
  return r;
}

Tensor3 second_cov(const Connection& nabla, const VecSymField& x) {
  int n = nabla.dim();
  // b[l][j] = (nabla_j X)^l
  VecSymField b = nabla_endomorphism(nabla, x);
  auto B = [&](int l, int j) { return b.endo(l, j); };
  Tensor3 s(nabla.chart());
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ScalarField v = B(l, j).partial(i);
        for (int m = 0; m < n; ++m) {
          if (!nabla.gamma(l, i, m).is_zero()) v += nabla.gamma(l, i, m) * B(m, j);
          if (!nabla.gamma(m, i, j).is_zero()) v -= nabla.gamma(m, i, j) * B(l, m);
        }
        s(l, i, j) = std::move(v);
      }
  return s;
}

VecSymField sym_curvature(const Connection& nabla, const VecSymField& x) {
  int n = nabla.dim();
  Tensor3 s = second_cov(nabla, x);
  std::vector<SymField> comps;
  for (int l = 0; l < n; ++l) {
    std::map<std::vector<int>, ScalarField> full;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) full.emplace(std::vector<int>{i, j}, s(l, i, j) + s(l, j, i));
    comps.push_back(sym_projection(nabla.chart(), 2, full));
  }
  return VecSymField(nabla.chart(), 2, std::move(comps));
}

VecSymField sym_iota_curvature(const CurvatureField& r, const VecSymField& x) {
  int n = r.dim();
  std::vector<SymField> comps;
  for (int l = 0; l < n; ++l) {
    std::map<std::vector<int>, ScalarField> full;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ScalarField v(r.chart());
        for (int a = 0; a < n; ++a) {
          ScalarField xa = x.scalar(a);
          if (xa.is_zero()) continue;
          ScalarField t = r.op(l, a, i, j) + r.op(l, a, j, i);
          if (!t.is_zero()) v += xa * t;
        }
        full.emplace(std::vector<int>{i, j}, v);
      }
    comps.push_back(sym_projection(r.chart(), 2, full));
  }
  return VecSymField(r.chart(), 2, std::move(comps));
}

bool is_parallel(const Connection& nabla, const SymField& g) {
  for (int i = 0; i < nabla.dim(); ++i)
    if (!covariant_derivative(nabla, VecSymField::coordinate_vector(nabla.chart(), i), g).is_zero()) return false;
  return true;
}

GeneralDerivation general_derivation(const VecSymField& a, const VecSymField& sigma, const Connection& aux) {
  require_same_chart(aux.chart(), a.chart());
  require_same_chart(aux.chart(), sigma.chart());
  if (a.degree() != 1 || sigma.degree() != 2) throw ComputationError("general derivation needs (A, sigma) of degrees 1 and 2");
  return GeneralDerivation{a, sigma, aux};
}

SymField GeneralDerivation::operator()(const SymField& phi) const {
  return a_sym_derivative(aux, a, phi) + sym_contract(sigma, phi);
}

}  // namespace symcartan

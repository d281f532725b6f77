#include "symcartan/symtensor/vec_sym_field.hpp"

#include "symcartan/errors.hpp"

namespace symcartan {

VecSymField::VecSymField(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  for (int m = 0; m < chart_->dim(); ++m) comps_.emplace_back(chart_, degree);
}

VecSymField::VecSymField(ChartPtr chart, int degree, std::vector<SymField> comps)
    : chart_(std::move(chart)), degree_(degree), comps_(std::move(comps)) {
  if (static_cast<int>(comps_.size()) != chart_->dim()) throw ComputationError("wrong number of components");
  for (const auto& c : comps_) {
    require_same_chart(chart_, c.chart());
    if (c.degree() != degree_) throw ComputationError("component degree mismatch");
  }
}

VecSymField VecSymField::vector_field(ChartPtr chart, const std::vector<ScalarField>& comps) {
  if (static_cast<int>(comps.size()) != chart->dim()) throw ComputationError("wrong number of components");
  std::vector<SymField> c;
  for (const auto& f : comps) {
    require_same_chart(chart, f.chart());
    c.push_back(SymField::scalar(f));
  }
  return VecSymField(chart, 0, std::move(c));
}

VecSymField VecSymField::coordinate_vector(ChartPtr chart, int i) {
  std::vector<ScalarField> c;
  for (int m = 0; m < chart->dim(); ++m) c.emplace_back(chart, m == i ? 1 : 0);
  return vector_field(chart, c);
}

VecSymField VecSymField::endomorphism(ChartPtr chart, const std::vector<std::vector<ScalarField>>& a) {
  int n = chart->dim();
  if (static_cast<int>(a.size()) != n) throw ComputationError("endomorphism has wrong shape");
  std::vector<SymField> comps;
  for (int m = 0; m < n; ++m) {
    if (static_cast<int>(a[m].size()) != n) throw ComputationError("endomorphism has wrong shape");
    SymField row(chart, 1);
    for (int j = 0; j < n; ++j) row += SymField::dx(chart, j).scaled(a[m][j]);
    comps.push_back(std::move(row));
  }
  return VecSymField(chart, 1, std::move(comps));
}

VecSymField VecSymField::identity(ChartPtr chart) {
  std::vector<SymField> comps;
  for (int m = 0; m < chart->dim(); ++m) comps.push_back(SymField::dx(chart, m));
  return VecSymField(chart, 1, std::move(comps));
}

std::vector<ScalarField> VecSymField::scalars() const {
  std::vector<ScalarField> out;
  for (int m = 0; m < dim(); ++m) out.push_back(scalar(m));
  return out;
}

ScalarField VecSymField::endo(int m, int j) const {
  if (degree_ != 1) throw ComputationError("not an endomorphism field");
  return comps_.at(m).component({j});
}

bool VecSymField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

VecSymField VecSymField::operator-() const {
  VecSymField r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

VecSymField& VecSymField::operator+=(const VecSymField& o) {
  require_same_chart(chart_, o.chart_);
  if (degree_ != o.degree_) throw ComputationError("adding fields of different degree");
  for (int m = 0; m < dim(); ++m) comps_[m] += o.comps_[m];
  return *this;
}

VecSymField& VecSymField::operator-=(const VecSymField& o) { return *this += -o; }

bool operator==(const VecSymField& a, const VecSymField& b) {
  if (a.degree_ != b.degree_) return false;
  for (int m = 0; m < a.dim(); ++m)
    if (a.comps_[m] != b.comps_[m]) return false;
  return true;
}

VecSymField VecSymField::scaled(const ScalarField& f) const {
  VecSymField r = *this;
  for (auto& c : r.comps_) c = c.scaled(f);
  return r;
}

VecSymField VecSymField::scaled(const Rational& q) const {
  VecSymField r = *this;
  for (auto& c : r.comps_) c = c.scaled(q);
  return r;
}

std::string VecSymField::to_string() const {
  std::string out;
  for (int m = 0; m < dim(); ++m) {
    if (m) out += "; ";
    out += "d" + chart_->coord(m).name + ": " + comps_[m].to_string();
  }
  return out;
}

SymField contract(const VecSymField& x, const SymField& phi) {
  require_same_chart(x.chart(), phi.chart());
  if (x.degree() != 0) throw ComputationError("contraction needs a vector field");
  if (phi.degree() == 0) throw ComputationError("contraction of a degree-0 field");
  SymField out(phi.chart(), phi.degree() - 1);
  for (int i = 0; i < phi.dim(); ++i) {
    ScalarField xi = x.scalar(i);
    if (xi.is_zero()) continue;
    out += phi.partial_v(i).scaled(xi);
  }
  return out;
}

SymField sym_contract(const VecSymField& sigma, const SymField& phi) {
  require_same_chart(sigma.chart(), phi.chart());
  int deg = phi.degree() + sigma.degree() - 1;
  if (deg < 0) throw ComputationError("symmetric contraction of a degree-0 field");
  SymField out(phi.chart(), deg);
  if (phi.degree() == 0) return out;
  for (int m = 0; m < phi.dim(); ++m) {
    const SymField& s = sigma.comp(m);
    if (s.is_zero()) continue;
    out += sym_product(s, phi.partial_v(m));
  }
  return out;
}

ScalarField apply(const VecSymField& x, const ScalarField& f) {
  require_same_chart(x.chart(), f.chart());
  ScalarField out(f.chart());
  for (int i = 0; i < x.dim(); ++i) {
    ScalarField xi = x.scalar(i);
    if (!xi.is_zero()) out += xi * f.partial(i);
  }
  return out;
}

}  // namespace symcartan

#include "symcartan/symtensor/sym_field.hpp"

#include <algorithm>

#include "symcartan/errors.hpp"

namespace symcartan {

Rational multiplicity(const Monomial& m) {
  mpz_class r = 1;
  for (int i = 0; i < kMaxVars; ++i) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), m.exponent(i));
    r *= f;
  }
  return Rational(r);
}

Monomial velocity_monomial(const std::vector<int>& indices) {
  Monomial m;
  for (int i : indices) m = m * Monomial::var(i);
  return m;
}

std::vector<int> velocity_indices(const Monomial& m) {
  std::vector<int> out;
  for (int i = 0; i < kMaxVars; ++i)
    for (int e = 0; e < m.exponent(i); ++e) out.push_back(i);
  return out;
}

std::vector<std::vector<int>> sorted_tuples(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

SymField::SymField(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0) throw ComputationError("negative tensor degree");
  if (chart_->dim() > kMaxVars) throw ComputationError("too many velocity variables");
}

SymField SymField::scalar(const ScalarField& f) {
  SymField s(f.chart(), 0);
  s.add_term(Monomial(), f);
  return s;
}

SymField SymField::from_fiber(ChartPtr chart, int degree, FiberPoly poly) {
  SymField s(std::move(chart), degree);
  for (auto& [m, c] : poly) {
    if (m.degree() != degree) throw ComputationError("fiber polynomial is not homogeneous");
    for (int i = s.dim(); i < kMaxVars; ++i)
      if (m.exponent(i)) throw ComputationError("velocity index out of range");
    require_same_chart(s.chart_, c.chart());
    if (!c.is_zero()) s.poly_.emplace(m, c);
  }
  return s;
}

SymField SymField::dx(ChartPtr chart, int i) {
  if (i < 0 || i >= chart->dim()) throw ComputationError("coordinate index out of range");
  SymField s(chart, 1);
  s.add_term(Monomial::var(i), ScalarField(chart, 1));
  return s;
}

SymField SymField::from_components(ChartPtr chart, int degree,
                                   const std::map<std::vector<int>, ScalarField>& comps) {
  SymField s(chart, degree);
  for (const auto& [idx, val] : comps) {
    if (static_cast<int>(idx.size()) != degree) throw ComputationError("index arity mismatch");
    if (!std::is_sorted(idx.begin(), idx.end())) throw ComputationError("component index tuple not sorted");
    for (int i : idx)
      if (i < 0 || i >= chart->dim()) throw ComputationError("component index out of range");
    Monomial m = velocity_monomial(idx);
    s.add_term(m, val.scaled(1 / multiplicity(m)));
  }
  return s;
}

void SymField::add_term(const Monomial& m, const ScalarField& c) {
  if (c.is_zero()) return;
  require_same_chart(chart_, c.chart());
  auto it = poly_.find(m);
  if (it == poly_.end()) {
    poly_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) poly_.erase(it);
}

ScalarField SymField::coefficient(const Monomial& m) const {
  auto it = poly_.find(m);
  return it == poly_.end() ? ScalarField(chart_) : it->second;
}

ScalarField SymField::component(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw ComputationError("index arity mismatch");
  Monomial m = velocity_monomial(indices);
  return coefficient(m).scaled(multiplicity(m));
}

std::map<std::vector<int>, ScalarField> SymField::components() const {
  std::map<std::vector<int>, ScalarField> out;
  for (const auto& [m, c] : poly_) out.emplace(velocity_indices(m), c.scaled(multiplicity(m)));
  return out;
}

ScalarField SymField::as_scalar() const {
  if (degree_ != 0) throw ComputationError("field is not of degree 0");
  return coefficient(Monomial());
}

SymField SymField::operator-() const {
  SymField s = *this;
  for (auto& [m, c] : s.poly_) c = -c;
  return s;
}

SymField& SymField::operator+=(const SymField& o) {
  require_same_chart(chart_, o.chart_);
  if (degree_ != o.degree_) throw ComputationError("adding fields of different degree");
  for (const auto& [m, c] : o.poly_) add_term(m, c);
  return *this;
}

SymField& SymField::operator-=(const SymField& o) { return *this += -o; }

bool operator==(const SymField& a, const SymField& b) {
  require_same_chart(a.chart_, b.chart_);
  if (a.degree_ != b.degree_) return false;
  if (a.poly_.size() != b.poly_.size()) return false;
  auto it = b.poly_.begin();
  for (const auto& [m, c] : a.poly_) {
    if (it->first != m || it->second != c) return false;
    ++it;
  }
  return true;
}

SymField SymField::scaled(const ScalarField& f) const {
  SymField s(chart_, degree_);
  if (f.is_zero()) return s;
  for (const auto& [m, c] : poly_) s.add_term(m, c * f);
  return s;
}

SymField SymField::scaled(const Rational& q) const {
  SymField s(chart_, degree_);
  if (sgn(q) == 0) return s;
  for (const auto& [m, c] : poly_) s.poly_.emplace(m, c.scaled(q));
  return s;
}

SymField SymField::partial_x(int i) const {
  SymField s(chart_, degree_);
  for (const auto& [m, c] : poly_) s.add_term(m, c.partial(i));
  return s;
}

SymField SymField::partial_v(int i) const {
  if (degree_ == 0) throw ComputationError("velocity derivative of a degree-0 field");
  SymField s(chart_, degree_ - 1);
  for (const auto& [m, c] : poly_) {
    int e = m.exponent(i);
    if (e == 0) continue;
    s.add_term(m.with_exponent(i, e - 1), c.scaled(e));
  }
  return s;
}

SymField SymField::times_v(int i) const {
  SymField s(chart_, degree_ + 1);
  Monomial vi = Monomial::var(i);
  for (const auto& [m, c] : poly_) s.poly_.emplace(m * vi, c);
  return s;
}

double SymField::eval_tilde(const NumericPoint& p, const std::vector<double>& velocity) const {
  if (static_cast<int>(velocity.size()) != dim()) throw ComputationError("velocity has wrong dimension");
  std::vector<double> gens = generator_values(p);
  double sum = 0;
  for (const auto& [m, c] : poly_) {
    double v = c.eval_generators(gens);
    for (int i = 0; i < dim(); ++i)
      for (int e = 0; e < m.exponent(i); ++e) v *= velocity[i];
    sum += v;
  }
  return sum;
}

std::string SymField::to_string() const {
  if (poly_.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : components()) {
    if (!out.empty()) out += ", ";
    std::string key;
    for (int i : idx) key += (key.empty() ? "" : ",") + std::to_string(i + 1);
    out += "[" + key + "]: " + c.to_string();
  }
  return out;
}

SymField sym_product(const SymField& a, const SymField& b) {
  require_same_chart(a.chart(), b.chart());
  FiberPoly out;
  for (const auto& [ma, ca] : a.fiber())
    for (const auto& [mb, cb] : b.fiber()) {
      Monomial m = ma * mb;
      ScalarField c = ca * cb;
      auto it = out.find(m);
      if (it == out.end())
        out.emplace(m, std::move(c));
      else
        it->second += c;
    }
  return SymField::from_fiber(a.chart(), a.degree() + b.degree(), std::move(out));
}

SymField operator*(const SymField& a, const SymField& b) { return sym_product(a, b); }

SymField operator*(const ScalarField& f, const SymField& a) { return a.scaled(f); }

SymField sym_projection(ChartPtr chart, int degree, const std::map<std::vector<int>, ScalarField>& full) {
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), degree);
  Rational inv(1, fact);
  inv.canonicalize();
  FiberPoly out;
  for (const auto& [idx, val] : full) {
    if (static_cast<int>(idx.size()) != degree) throw ComputationError("index arity mismatch");
    for (int i : idx)
      if (i < 0 || i >= chart->dim()) throw ComputationError("component index out of range");
    Monomial m = velocity_monomial(idx);
    ScalarField c = val.scaled(inv);
    auto it = out.find(m);
    if (it == out.end())
      out.emplace(m, std::move(c));
    else
      it->second += c;
  }
  return SymField::from_fiber(std::move(chart), degree, std::move(out));
}

}  // namespace symcartan

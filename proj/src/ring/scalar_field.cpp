#include "symcartan/ring/scalar_field.hpp"

#include <cmath>

#include "symcartan/errors.hpp"

namespace symcartan {

std::vector<double> generator_values(const NumericPoint& p) {
  const Chart& c = *p.chart;
  if (static_cast<int>(p.values.size()) != c.dim()) throw ComputationError("point has wrong dimension");
  std::vector<double> gens(kMaxVars, 0.0);
  for (int i = 0; i < c.dim(); ++i) {
    int g = c.generator(i);
    if (c.is_angle(i)) {
      gens[g] = std::cos(p.values[i]);
      gens[g + 1] = std::sin(p.values[i]);
    } else {
      gens[g] = p.values[i];
    }
  }
  return gens;
}

Poly angle_normal_form(const Chart& chart, const Poly& p) {
  if (!chart.has_angles()) return p;
  Poly cur = p;
  for (auto [ci, si] : chart.angle_pairs()) {
    if (cur.degree_in(si) < 2) continue;
    Poly one_minus_c2 = Poly(1) - Poly::monomial(Monomial::var(ci, 2));
    std::vector<Term> keep;
    Poly extra;
    for (const auto& t : cur.terms()) {
      int b = t.mono.exponent(si);
      if (b < 2) {
        keep.push_back(t);
        continue;
      }
      Monomial rest = t.mono.with_exponent(si, b % 2);
      extra += one_minus_c2.pow(b / 2).times_monomial(rest, t.coeff);
    }
    cur = Poly::from_terms(std::move(keep)) + extra;
  }
  return cur;
}

ScalarField ScalarField::from_polys(ChartPtr chart, Poly num, Poly den) {
  ScalarField f(std::move(chart));
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.normalize();
  return f;
}

ScalarField ScalarField::coordinate(ChartPtr chart, int i) {
  if (i < 0 || i >= chart->dim()) throw ComputationError("coordinate index out of range");
  if (chart->is_angle(i))
    throw ComputationError("angle coordinate '" + chart->coord(i).name + "' is not a function");
  int g = chart->generator(i);
  return from_polys(chart, Poly::var(g));
}

ScalarField ScalarField::cos_of(ChartPtr chart, int i) {
  if (i < 0 || i >= chart->dim() || !chart->is_angle(i)) throw ComputationError("cos needs an angle coordinate");
  int g = chart->generator(i);
  return from_polys(chart, Poly::var(g));
}

ScalarField ScalarField::sin_of(ChartPtr chart, int i) {
  if (i < 0 || i >= chart->dim() || !chart->is_angle(i)) throw ComputationError("sin needs an angle coordinate");
  int g = chart->generator(i);
  return from_polys(chart, Poly::var(g + 1));
}

void ScalarField::normalize() {
  if (!chart_) throw ComputationError("scalar field without chart");
  const Chart& c = *chart_;
  num_ = angle_normal_form(c, num_);
  den_ = angle_normal_form(c, den_);
  if (den_.is_zero()) throw ComputationError("division by the zero polynomial");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) num_ = num_.scaled(1 / den_.constant_value());
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = angle_normal_form(c, exact_divide(num_, g));
    den_ = angle_normal_form(c, exact_divide(den_, g));
    if (den_.is_constant()) {
      num_ = num_.scaled(1 / den_.constant_value());
      den_ = Poly(1);
      return;
    }
  }
  Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Rational ScalarField::constant_value() const {
  if (!is_constant()) throw ComputationError("scalar field is not constant");
  return num_.constant_value() / den_.constant_value();
}

ScalarField ScalarField::operator-() const {
  ScalarField f = *this;
  f.num_ = -f.num_;
  return f;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (!chart_) {
    *this = o;
    return *this;
  }
  if (!o.chart_) return *this;
  require_same_chart(chart_, o.chart_);
  if (o.is_zero()) return *this;
  if (is_zero()) {
    num_ = o.num_;
    den_ = o.den_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly d2g = exact_divide(o.den_, g);
  Poly d1g = exact_divide(den_, g);
  num_ = num_ * d2g + o.num_ * d1g;
  den_ = den_ * d2g;
  normalize();
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) { return *this += -o; }

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  if (!chart_ || !o.chart_) throw ComputationError("scalar field without chart");
  require_same_chart(chart_, o.chart_);
  if (is_zero()) return *this;
  if (o.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ = angle_normal_form(*chart_, num_ * o.num_);
    return *this;
  }
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  num_ = exact_divide(num_, g1) * exact_divide(o.num_, g2);
  den_ = exact_divide(den_, g2) * exact_divide(o.den_, g1);
  if (chart_->has_angles()) {
    normalize();
  } else if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_value());
    den_ = Poly(1);
  } else {
    Rational lc = den_.leading().coeff;
    if (lc != 1) {
      num_ = num_.scaled(1 / lc);
      den_ = den_.scaled(1 / lc);
    }
  }
  return *this;
}

ScalarField& ScalarField::operator/=(const ScalarField& o) {
  if (o.is_zero()) throw ComputationError("division by the zero field");
  ScalarField inv(o.chart_);
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.normalize();
  return *this *= inv;
}

bool operator==(const ScalarField& a, const ScalarField& b) {
  if (a.chart_ && b.chart_) require_same_chart(a.chart_, b.chart_);
  if (a.den_ == b.den_) return a.num_ == b.num_;
  if (!a.chart_ || !a.chart_->has_angles()) return false;
  Poly diff = a.num_ * b.den_ - b.num_ * a.den_;
  return angle_normal_form(*a.chart_, diff).is_zero();
}

ScalarField ScalarField::scaled(const Rational& c) const {
  ScalarField f = *this;
  f.num_ = num_.scaled(c);
  if (f.num_.is_zero()) f.den_ = Poly(1);
  return f;
}

ScalarField ScalarField::pow(int e) const {
  if (e < 0) {
    ScalarField one(chart_, 1);
    return (one / *this).pow(-e);
  }
  ScalarField result(chart_, 1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {

Poly poly_partial(const Chart& c, const Poly& p, int i) {
  int g = c.generator(i);
  if (!c.is_angle(i)) return p.partial(g);
  // d/dt cos = -sin, d/dt sin = cos
  Poly cs = Poly::var(g), sn = Poly::var(g + 1);
  return angle_normal_form(c, cs * p.partial(g + 1) - sn * p.partial(g));
}

}  // namespace

ScalarField ScalarField::partial(int i) const {
  if (!chart_) throw ComputationError("scalar field without chart");
  if (i < 0 || i >= chart_->dim()) throw ComputationError("coordinate index out of range");
  const Chart& c = *chart_;
  Poly dn = poly_partial(c, num_, i);
  if (den_.is_one()) return from_polys(chart_, std::move(dn));
  Poly dd = poly_partial(c, den_, i);
  if (dd.is_zero()) return from_polys(chart_, std::move(dn), den_);
  return from_polys(chart_, dn * den_ - num_ * dd, den_ * den_);
}

double ScalarField::eval_generators(const std::vector<double>& gens) const {
  double d = den_.eval(gens.data());
  if (std::abs(d) < 1e-12) throw PoleError("denominator vanishes at evaluation point");
  return num_.eval(gens.data()) / d;
}

double ScalarField::eval(const NumericPoint& p) const {
  require_same_chart(chart_, p.chart);
  return eval_generators(generator_values(p));
}

ScalarField partial(const ScalarField& f, int i) { return f.partial(i); }

double eval_numeric(const ScalarField& f, const NumericPoint& p) { return f.eval(p); }

namespace {

std::string generator_name(const Chart& c, int g) {
  for (int i = 0; i < c.dim(); ++i) {
    if (c.generator(i) == g) return c.is_angle(i) ? "cos(" + c.coord(i).name + ")" : c.coord(i).name;
    if (c.is_angle(i) && c.generator(i) + 1 == g) return "sin(" + c.coord(i).name + ")";
  }
  throw ComputationError("generator outside chart");
}

}  // namespace

std::string poly_to_string(const Chart& chart, const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational a = abs(t.coeff);
    bool neg = sgn(t.coeff) < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (int g = 0; g < kMaxVars; ++g) {
      int e = t.mono.exponent(g);
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += generator_name(chart, g);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

std::string ScalarField::to_string() const {
  if (!chart_) return "0";
  std::string n = poly_to_string(*chart_, num_);
  if (den_.is_one()) return n;
  if (num_.size() > 1) n = "(" + n + ")";
  return n + "/(" + poly_to_string(*chart_, den_) + ")";
}

ScalarField transfer(const ScalarField& f, ChartPtr target, const std::vector<int>& coord_map) {
  const Chart& src = *f.chart();
  if (static_cast<int>(coord_map.size()) != src.dim()) throw ComputationError("coordinate map has wrong size");
  std::vector<Poly> subs(src.num_generators(), Poly());
  for (int i = 0; i < src.dim(); ++i) {
    int j = coord_map[i];
    if (j < 0 || j >= target->dim() || target->is_angle(j) != src.is_angle(i))
      throw ComputationError("coordinate map does not preserve coordinate kinds");
    subs[src.generator(i)] = Poly::var(target->generator(j));
    if (src.is_angle(i)) subs[src.generator(i) + 1] = Poly::var(target->generator(j) + 1);
  }
  return ScalarField::from_polys(std::move(target), f.num().substitute(subs), f.den().substitute(subs));
}

}  // namespace symcartan

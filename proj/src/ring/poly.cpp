#include "symcartan/ring/poly.hpp"

#include <algorithm>
#include <cmath>

#include "symcartan/errors.hpp"

namespace symcartan {

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, subtract ? Rational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw ComputationError("polynomial is not constant");
  return terms_[0].coeff;
}

Rational Poly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return 0;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
  return d;
}

std::uint32_t Poly::var_mask() const {
  std::uint32_t mask = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.exponent(i) > 0) mask |= 1u << i;
  return mask;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Poly::from_terms(std::move(prod));
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grlex order.
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw ComputationError("negative polynomial power");
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::partial(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = t.mono.exponent(var);
    if (e == 0) continue;
    out.push_back({t.mono.with_exponent(var, e - 1), t.coeff * e});
  }
  return from_terms(std::move(out));
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return scaled(inv);
}

Poly Poly::coeff_in(int var, int d) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.mono.exponent(var) == d) out.push_back({t.mono.with_exponent(var, 0), t.coeff});
  return from_terms(std::move(out));
}

std::vector<Poly> Poly::coeffs_in(int var) const {
  int deg = degree_in(var);
  std::vector<std::vector<Term>> buckets(deg < 0 ? 0 : deg + 1);
  for (const auto& t : terms_) {
    int e = t.mono.exponent(var);
    buckets[e].push_back({t.mono.with_exponent(var, 0), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::substitute(const std::vector<Poly>& subs) const {
  Poly result;
  for (const auto& t : terms_) {
    Poly term(t.coeff);
    Monomial rest;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.mono.exponent(i);
      if (e == 0) continue;
      if (i < static_cast<int>(subs.size()))
        term *= subs[i].pow(e);
      else
        rest = rest.with_exponent(i, e);
    }
    result += term.times_monomial(rest);
  }
  return result;
}

double Poly::eval(const double* gens) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.mono.exponent(i);
      if (e) v *= std::pow(gens[i], e);
    }
    sum += v;
  }
  return sum;
}

bool try_divide(const Poly& a, const Poly& b, Poly& quotient) {
  if (b.is_zero()) throw ComputationError("division by the zero polynomial");
  quotient = Poly();
  if (b.is_constant()) {
    quotient = a.scaled(1 / b.constant_value());
    return true;
  }
  Poly rem = a;
  const Term& lb = b.leading();
  std::vector<Term> q;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (!lb.mono.divides(lr.mono)) return false;
    Monomial m = lr.mono / lb.mono;
    Rational c = lr.coeff / lb.coeff;
    q.push_back({m, c});
    rem -= b.times_monomial(m, c);
  }
  quotient = Poly::from_terms(std::move(q));
  return true;
}

Poly exact_divide(const Poly& a, const Poly& b) {
  Poly q;
  if (!try_divide(a, b, q)) throw ComputationError("inexact polynomial division");
  return q;
}

namespace {

Poly content_in(const Poly& a, int var) {
  Poly g;
  for (const auto& c : a.coeffs_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_in(const Poly& a, int var) {
  if (a.is_zero()) return a;
  Poly c = content_in(a, var);
  return exact_divide(a, c).monic();
}

// Pseudo-remainder of a by b as polynomials in var (scaled, not exact).
Poly prem(Poly a, const Poly& b, int var) {
  int db = b.degree_in(var);
  Poly lcb = b.coeff_in(var, db);
  while (!a.is_zero()) {
    int da = a.degree_in(var);
    if (da < db) break;
    Poly lca = a.coeff_in(var, da);
    a = lcb * a - (lca * b).times_monomial(Monomial::var(var, da - db));
  }
  return a;
}

// Upper bound for the v-degree of gcd(a, b), from a specialization of the
// other variables at small integers that keeps both leading coefficients.
// Returns -1 if no admissible point was found.
int specialized_degree(const Poly& a, const Poly& b, int v) {
  static const int values[] = {3, -2, 5, 7, -4, 11, -9, 13};
  int da = a.degree_in(v), db = b.degree_in(v);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<Poly> subs;
    for (int u = 0; u < kMaxVars; ++u)
      subs.push_back(u == v ? Poly::var(v) : Poly(values[(u + 3 * attempt) % 8] + attempt));
    Poly as = a.substitute(subs), bs = b.substitute(subs);
    if (as.degree_in(v) != da || bs.degree_in(v) != db) continue;
    return gcd(as, bs).degree_in(v);
  }
  return -1;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  std::uint32_t ma = a.var_mask(), mb = b.var_mask();
  std::uint32_t only = ma ^ mb;
  if (only) {
    int v = 0;
    while (!(only & (1u << v))) ++v;
    if (ma & (1u << v)) return gcd(content_in(a, v), b);
    return gcd(a, content_in(b, v));
  }
  if (a == b) return a.monic();
  int v = kMaxVars - 1;
  while (!(ma & (1u << v))) --v;
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly g0 = gcd(ca, cb);
  Poly pa = exact_divide(a, ca).monic(), pb = exact_divide(b, cb).monic();
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  if (a.var_mask() != (1u << v)) {
    // Coprimality is the common case and is where the remainder sequence
    // grows worst, so rule it out cheaply first.
    int bound = specialized_degree(pa, pb, v);
    if (bound == 0) return g0.monic();
    Poly q;
    if (bound == pb.degree_in(v) && try_divide(pa, pb, q)) return (g0 * pb).monic();
  }
  Poly g;
  for (;;) {
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) <= 0) {
      g = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  return (g0 * g).monic();
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

}  // namespace symcartan

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "symcartan/ring/monomial.hpp"

namespace symcartan {

using Rational = mpq_class;

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q.  Terms are kept sorted in
/// decreasing grlex order with no zero coefficients, so structural equality
/// is polynomial equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  explicit Poly(long c) : Poly(Rational(c)) {}
  static Poly monomial(const Monomial& m, const Rational& c = 1);
  static Poly var(int i) { return monomial(Monomial::var(i)); }
  // Builds from unsorted terms, merging duplicates.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  Rational constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }
  Rational coefficient(const Monomial& m) const;

  int total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }
  int degree_in(int var) const;
  std::uint32_t var_mask() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m, const Rational& c = 1) const;
  Poly pow(int e) const;
  Poly partial(int var) const;
  // Scales so that the leading coefficient is 1.
  Poly monic() const;

  // Coefficient of var^d, with var removed.
  Poly coeff_in(int var, int d) const;
  std::vector<Poly> coeffs_in(int var) const;

  // Substitutes poly values for variables; subs[i] replaces variable i.
  Poly substitute(const std::vector<Poly>& subs) const;

  double eval(const double* gens) const;

 private:
  std::vector<Term> terms_;
};

// a / b when b divides a exactly; throws ComputationError otherwise.
Poly exact_divide(const Poly& a, const Poly& b);
// Returns false if b does not divide a.
bool try_divide(const Poly& a, const Poly& b, Poly& quotient);
// Monic gcd over Q (1 if either argument is a nonzero constant).
Poly gcd(const Poly& a, const Poly& b);

std::string rational_to_string(const Rational& q);

}  // namespace symcartan

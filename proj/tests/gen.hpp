#pragma once

// Hand-rolled generators for property tests.

#include <random>
#include <vector>

#include "symcartan/ring/scalar_field.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline symcartan::Rational small_rational(Rng& rng, int range = 4) {
  int num = uniform(rng, -range, range);
  int den = uniform(rng, 1, 3);
  symcartan::Rational q(num, den);
  q.canonicalize();
  return q;
}

// Random polynomial in the chart generators with total degree <= max_deg.
inline symcartan::Poly poly(const symcartan::Chart& chart, Rng& rng, int max_deg, int max_terms = 4) {
  std::vector<symcartan::Term> terms;
  int n = uniform(rng, 0, max_terms);
  for (int t = 0; t < n; ++t) {
    symcartan::Monomial m;
    int deg = uniform(rng, 0, max_deg);
    for (int k = 0; k < deg; ++k) {
      int g = uniform(rng, 0, chart.num_generators() - 1);
      m = m * symcartan::Monomial::var(g);
    }
    terms.push_back({m, small_rational(rng)});
  }
  return symcartan::Poly::from_terms(std::move(terms));
}

inline symcartan::ScalarField field(const symcartan::ChartPtr& chart, Rng& rng, int max_deg = 2,
                                    bool with_den = false) {
  symcartan::Poly num = poly(*chart, rng, max_deg);
  symcartan::Poly den(1);
  if (with_den) {
    // 1 + square keeps the denominator pole-free on the real domain.
    symcartan::Poly q = poly(*chart, rng, 1, 2);
    den = symcartan::Poly(1) + q * q;
  }
  return symcartan::ScalarField::from_polys(chart, num, den);
}

inline std::vector<double> point(const symcartan::Chart& chart, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> p;
  for (int i = 0; i < chart.dim(); ++i) p.push_back(chart.is_angle(i) ? 3.0 * u(rng) : u(rng));
  return p;
}

}  // namespace gen

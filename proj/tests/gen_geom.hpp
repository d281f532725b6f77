#pragma once

#include "gen.hpp"
#include "symcartan/connection/connection.hpp"

namespace gen {

inline symcartan::SymField sym_field(const symcartan::ChartPtr& chart, Rng& rng, int degree, int coef_deg = 2,
                                     int max_terms = 3) {
  using namespace symcartan;
  std::map<std::vector<int>, ScalarField> comps;
  auto tuples = sorted_tuples(chart->dim(), degree);
  int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    const auto& idx = tuples[uniform(rng, 0, static_cast<int>(tuples.size()) - 1)];
    comps.insert_or_assign(idx, field(chart, rng, coef_deg));
  }
  return SymField::from_components(chart, degree, comps);
}

inline symcartan::VecSymField vector_field(const symcartan::ChartPtr& chart, Rng& rng, int coef_deg = 2) {
  std::vector<symcartan::ScalarField> c;
  for (int i = 0; i < chart->dim(); ++i) c.push_back(field(chart, rng, coef_deg));
  return symcartan::VecSymField::vector_field(chart, c);
}

inline symcartan::VecSymField vec_sym_field(const symcartan::ChartPtr& chart, Rng& rng, int degree, int coef_deg = 1) {
  std::vector<symcartan::SymField> c;
  for (int i = 0; i < chart->dim(); ++i) c.push_back(sym_field(chart, rng, degree, coef_deg, 2));
  return symcartan::VecSymField(chart, degree, std::move(c));
}

// Sparse random connection; symmetric in the lower indices when torsion_free.
inline symcartan::Connection connection(const symcartan::ChartPtr& chart, Rng& rng, bool torsion_free,
                                        int coef_deg = 1, int entries = 3) {
  using namespace symcartan;
  int n = chart->dim();
  Tensor3 g(chart);
  for (int e = 0; e < entries; ++e) {
    int k = uniform(rng, 0, n - 1), i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
    ScalarField f = field(chart, rng, coef_deg, false);
    g(k, i, j) = f;
    if (torsion_free) g(k, j, i) = f;
  }
  return Connection(std::move(g));
}

}  // namespace gen

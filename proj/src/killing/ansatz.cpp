#include "symcartan/killing/ansatz.hpp"

#include <algorithm>
#include <map>

#include "symcartan/errors.hpp"
#include "symcartan/ring/parser.hpp"

namespace symcartan {

AnsatzSpec raised(const AnsatzSpec& spec, int by) {
  AnsatzSpec out = spec;
  out.coef_degree += by;
  for (int& c : out.per_coord)
    if (c >= 0) c += by;
  return out;
}

namespace {

void enumerate(const Chart& chart, const AnsatzSpec& spec, int coord, int budget, Monomial acc,
               std::vector<Monomial>& out) {
  if (coord == chart.dim()) {
    out.push_back(acc);
    return;
  }
  int cap = budget;
  if (coord < static_cast<int>(spec.per_coord.size()) && spec.per_coord[coord] >= 0)
    cap = std::min(cap, spec.per_coord[coord]);
  int g = chart.generator(coord);
  for (int d = 0; d <= cap; ++d) {
    if (chart.is_angle(coord)) {
      enumerate(chart, spec, coord + 1, budget - d, acc * Monomial::var(g, d), out);
      if (d > 0) enumerate(chart, spec, coord + 1, budget - d, acc * Monomial::var(g, d - 1) * Monomial::var(g + 1), out);
    } else {
      enumerate(chart, spec, coord + 1, budget - d, acc * Monomial::var(g, d), out);
    }
  }
}

std::string index_label(const Chart& chart, const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "d" : " d") + chart.coord(i).name;
  return s;
}

Poly lcm(const Poly& a, const Poly& b) { return exact_divide(a * b, gcd(a, b)); }

}  // namespace

std::vector<ScalarField> coefficient_basis(const ChartPtr& chart, const AnsatzSpec& spec) {
  if (spec.coef_degree < 0) throw ComputationError("negative ansatz degree");
  std::vector<Monomial> monos;
  enumerate(*chart, spec, 0, spec.coef_degree, Monomial(), monos);
  std::sort(monos.begin(), monos.end(), GrlexLess());
  Poly den(1);
  if (!spec.denominator.empty()) {
    ScalarField d = parse_expr(chart, spec.denominator);
    if (d.is_zero()) throw ComputationError("zero ansatz denominator");
    if (!d.is_polynomial()) throw ComputationError("ansatz denominator must be a polynomial");
    den = d.num();
  }
  std::vector<ScalarField> out;
  for (const auto& m : monos) out.push_back(ScalarField::from_polys(chart, Poly::monomial(m), den));
  return out;
}

SymAnsatz sym_ansatz(const ChartPtr& chart, const AnsatzSpec& spec) {
  if (spec.degree < 0) throw ComputationError("negative tensor degree");
  SymAnsatz out;
  auto basis = coefficient_basis(chart, spec);
  for (const auto& idx : sorted_tuples(chart->dim(), spec.degree)) {
    for (const auto& f : basis) {
      out.elements.push_back(SymField::from_components(chart, spec.degree, {{idx, f}}));
      std::string lbl = f.to_string();
      if (!idx.empty()) lbl += " " + index_label(*chart, idx);
      out.labels.push_back(lbl);
    }
  }
  if (out.elements.empty()) throw ComputationError("empty ansatz");
  return out;
}

std::vector<ScalarField> flatten(const SymField& phi) {
  std::vector<ScalarField> out;
  for (const auto& idx : sorted_tuples(phi.dim(), phi.degree())) out.push_back(phi.component(idx));
  return out;
}

Vectorized vectorize(const std::vector<std::vector<ScalarField>>& inputs) {
  Vectorized out;
  out.vectors.resize(inputs.size());
  if (inputs.empty()) return out;
  std::size_t entries = inputs.front().size();
  for (const auto& v : inputs)
    if (v.size() != entries) throw ComputationError("vectorize: ragged input");
  // Keys are (entry, monomial) pairs numbered in grlex order within each
  // entry, so the layout does not depend on the order of the inputs.
  std::vector<std::vector<Poly>> polys(inputs.size(), std::vector<Poly>(entries));
  std::vector<std::map<Monomial, int, GrlexGreater>> key_of(entries);
  ChartPtr chart;
  for (std::size_t e = 0; e < entries; ++e) {
    Poly l(1);
    for (const auto& v : inputs)
      if (!v[e].is_zero()) {
        chart = v[e].chart();
        l = lcm(l, v[e].den());
      }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const ScalarField& f = inputs[k][e];
      if (f.is_zero()) continue;
      polys[k][e] = angle_normal_form(*f.chart(), f.num() * exact_divide(l, f.den()));
      for (const auto& t : polys[k][e].terms()) key_of[e].emplace(t.mono, 0);
    }
  }
  std::vector<int> offset(entries + 1, 0);
  for (std::size_t e = 0; e < entries; ++e) {
    int i = 0;
    for (auto& [m, idx] : key_of[e]) {
      idx = offset[e] + i++;
      out.keys.push_back(std::to_string(e) + ":" + (chart ? poly_to_string(*chart, Poly::monomial(m)) : "1"));
    }
    offset[e + 1] = offset[e] + i;
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    SparseVec v;
    for (std::size_t e = 0; e < entries; ++e)
      for (const auto& t : polys[k][e].terms()) v.emplace_back(key_of[e].at(t.mono), t.coeff);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.vectors[k] = std::move(v);
  }
  return out;
}

LinearProblem assemble(const std::vector<std::vector<ScalarField>>& residuals, std::vector<std::string> col_labels) {
  Vectorized v = vectorize(residuals);
  std::vector<SparseVec> rows(v.keys.size());
  for (int c = 0; c < static_cast<int>(v.vectors.size()); ++c)
    for (const auto& [r, a] : v.vectors[c]) rows[r].emplace_back(c, a);
  LinearProblem lp(std::move(col_labels));
  for (std::size_t r = 0; r < rows.size(); ++r) lp.add_row(std::move(rows[r]), v.keys[r]);
  return lp;
}

}  // namespace symcartan

#include "symcartan/liealg/liealg.hpp"

#include <algorithm>
#include <map>

#include "symcartan/errors.hpp"
#include "symcartan/symtensor/sym_field.hpp"

namespace symcartan {

std::vector<Rational> StructureConstants::product(int i, int j) const {
  std::vector<Rational> out(n_);
  for (int k = 0; k < n_; ++k) out[k] = (*this)(k, i, j);
  return out;
}

StructureConstants StructureConstants::skew() const {
  StructureConstants b(n_);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) b(k, i, j) = (*this)(k, i, j) - (*this)(k, j, i);
  return b;
}

namespace {

// [[u_i, u_j], u_l] coordinates.
std::vector<Rational> nested(const StructureConstants& b, int i, int j, int l) {
  int n = b.dim();
  std::vector<Rational> out(n, Rational(0));
  for (int m = 0; m < n; ++m) {
    if (sgn(b(m, i, j)) == 0) continue;
    for (int k = 0; k < n; ++k) out[k] += b(m, i, j) * b(k, m, l);
  }
  return out;
}

// (u_i . u_j) . u_l - u_i . (u_j . u_l)
std::vector<Rational> associator(const StructureConstants& c, int i, int j, int l) {
  int n = c.dim();
  std::vector<Rational> out(n, Rational(0));
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) out[k] += c(m, i, j) * c(k, m, l) - c(m, j, l) * c(k, i, m);
  return out;
}

}  // namespace

bool satisfies_jacobi(const StructureConstants& b) {
  int n = b.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        auto a = nested(b, i, j, l), c = nested(b, j, l, i), d = nested(b, l, i, j);
        for (int k = 0; k < n; ++k)
          if (sgn(a[k] + c[k] + d[k]) != 0) return false;
      }
  return true;
}

bool is_lie_admissible(const StructureConstants& c) { return satisfies_jacobi(c.skew()); }

Algebra::Algebra(StructureConstants c) : c_(std::move(c)) {
  if (dim() < 1 || dim() > kMaxVars) throw ComputationError("algebra dimension must be between 1 and 8");
  if (!is_lie_admissible(c_)) throw ComputationError("algebra is not Lie-admissible");
}

bool is_left_symmetric(const Algebra& a) {
  int n = a.dim();
  const auto& c = a.constants();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        auto x = associator(c, i, j, l), y = associator(c, j, i, l);
        for (int k = 0; k < n; ++k)
          if (x[k] != y[k]) return false;
      }
  return true;
}

std::optional<Rational> skew_scale(const Algebra& a, const StructureConstants& bracket) {
  if (bracket.dim() != a.dim()) throw ComputationError("bracket dimension mismatch");
  StructureConstants s = a.constants().skew();
  int n = a.dim();
  std::optional<Rational> lambda;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rational& b = bracket(k, i, j);
        if (sgn(b) == 0) {
          if (sgn(s(k, i, j)) != 0) return std::nullopt;
          continue;
        }
        Rational q = s(k, i, j) / b;
        if (lambda && *lambda != q) return std::nullopt;
        lambda = q;
      }
  if (!lambda) return s == bracket ? std::optional<Rational>(Rational(1)) : std::nullopt;
  return lambda;
}

namespace {

std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m) {
  int n = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int p = col;
    while (p < n && sgn(m[p][col]) == 0) ++p;
    if (p == n) throw ComputationError("metric is degenerate");
    std::swap(m[p], m[col]);
    std::swap(inv[p], inv[col]);
    Rational piv = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= piv;
      inv[col][j] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

Algebra algebra_from_metric(const StructureConstants& bracket, const std::vector<std::vector<Rational>>& metric) {
  int n = bracket.dim();
  if (static_cast<int>(metric.size()) != n) throw ComputationError("metric size mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(metric[i].size()) != n) throw ComputationError("metric size mismatch");
    for (int j = 0; j < n; ++j)
      if (metric[i][j] != metric[j][i]) throw ComputationError("metric is not symmetric");
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (bracket(k, i, j) != -bracket(k, j, i)) throw ComputationError("bracket is not skew-symmetric");
  if (!satisfies_jacobi(bracket)) throw ComputationError("bracket fails the Jacobi identity");
  auto ginv = invert(metric);
  // <[u_a, u_b], u_c>
  auto pair = [&](int a, int b, int c) {
    Rational s(0);
    for (int m = 0; m < n; ++m) s += bracket(m, a, b) * metric[m][c];
    return s;
  };
  StructureConstants c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int w = 0; w < n; ++w) {
        Rational rhs = (pair(i, j, w) - pair(j, w, i) - pair(i, w, j)) / 2;
        if (sgn(rhs) == 0) continue;
        for (int k = 0; k < n; ++k) c(k, i, j) += rhs * ginv[w][k];
      }
  return Algebra(std::move(c));
}

Poly d_sym(const Algebra& a, const Poly& zeta) {
  int n = a.dim();
  const auto& c = a.constants();
  Poly out;
  for (int k = 0; k < n; ++k) {
    Poly dz = zeta.partial(k);
    if (dz.is_zero()) continue;
    Poly q;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sgn(c(k, i, j)) != 0) q += Poly::monomial(Monomial::var(i) * Monomial::var(j), c(k, i, j));
    out -= q * dz;
  }
  return out;
}

Rational sym_component(const Poly& zeta, const std::vector<int>& indices) {
  Monomial m = velocity_monomial(indices);
  return zeta.coefficient(m) * multiplicity(m);
}

Poly sym_basis_element(const std::vector<int>& sorted_indices) {
  Monomial m = velocity_monomial(sorted_indices);
  Rational inv = 1 / multiplicity(m);
  return Poly::monomial(m, inv);
}

namespace {

struct SymBasis {
  std::vector<Poly> elements;
  std::map<Monomial, int, GrlexGreater> index;
};

SymBasis sym_basis(int n, int r) {
  SymBasis b;
  for (const auto& t : sorted_tuples(n, r)) {
    b.index.emplace(velocity_monomial(t), static_cast<int>(b.elements.size()));
    b.elements.push_back(sym_basis_element(t));
  }
  return b;
}

SparseVec coords(const SymBasis& b, const Poly& p) {
  SparseVec v;
  for (const auto& t : p.terms()) {
    auto it = b.index.find(t.mono);
    if (it == b.index.end()) throw ComputationError("polynomial outside the expected degree");
    // Coordinates relative to the dual basis elements.
    v.emplace_back(it->second, t.coeff * multiplicity(t.mono));
  }
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

}  // namespace

AlgebraCohomology cohomology(const Algebra& a, int r) {
  if (r < 0) throw ComputationError("negative degree");
  int n = a.dim();
  AlgebraCohomology out;
  out.degree = r;
  SymBasis src = sym_basis(n, r), dst = sym_basis(n, r + 1);
  std::vector<std::string> labels(src.elements.size(), "");
  LinearProblem lp(labels);
  std::vector<SparseVec> rows(dst.elements.size());
  for (int col = 0; col < static_cast<int>(src.elements.size()); ++col)
    for (const auto& [row, v] : coords(dst, d_sym(a, src.elements[col]))) rows[row].emplace_back(col, v);
  for (auto& row : rows) lp.add_row(std::move(row), "");
  for (const auto& k : lp.kernel()) {
    Poly p;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (sgn(k[i]) != 0) p += src.elements[i].scaled(k[i]);
    out.kernel.push_back(std::move(p));
  }
  out.dim_ker = static_cast<int>(out.kernel.size());
  Echelon ech(static_cast<int>(src.elements.size()));
  if (r > 0) {
    SymBasis below = sym_basis(n, r - 1);
    for (const auto& e : below.elements) ech.insert(coords(src, d_sym(a, e)));
  }
  for (const auto& k : out.kernel)
    if (ech.insert(coords(src, k))) out.representatives.push_back(k);
  out.dim_h = static_cast<int>(out.representatives.size());
  out.dim_ker_im = out.dim_ker - out.dim_h;
  return out;
}

}  // namespace symcartan

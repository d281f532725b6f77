#include "symcartan/killing/linear.hpp"

#include <Eigen/SVD>
#include <algorithm>

#include "symcartan/errors.hpp"

namespace symcartan {

SparseVec to_sparse(const DenseVec& v) {
  SparseVec out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

DenseVec to_dense(const SparseVec& v, int size) {
  DenseVec out(size, Rational(0));
  for (const auto& [i, a] : v) out.at(i) = a;
  return out;
}

namespace {

// a - c * b
SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, -c * ib->second);
      ++ib;
    } else {
      Rational v = ia->second - c * ib->second;
      if (sgn(v) != 0) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

SparseVec Echelon::reduce(SparseVec v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Rational c = v[pos].second;
    v = axpy(v, c, it->second);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational lead = v.front().second;
  for (auto& [i, a] : v) a /= lead;
  int p = v.front().first;
  rows_.emplace(p, std::move(v));
  return true;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<SparseVec> Echelon::rref() const {
  std::map<int, SparseVec> rows = rows_;
  // Clear the entries above each pivot, last pivot first.
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    int p = it->first;
    for (auto jt = rows.begin(); jt != rows.end() && jt->first < p; ++jt) {
      const SparseVec& r = jt->second;
      auto e = std::lower_bound(r.begin(), r.end(), p, [](const auto& a, int k) { return a.first < k; });
      if (e == r.end() || e->first != p) continue;
      Rational c = e->second;
      jt->second = axpy(r, c, it->second);
    }
  }
  std::vector<SparseVec> out;
  for (auto& [p, row] : rows) out.push_back(std::move(row));
  return out;
}

LinearProblem::LinearProblem(std::vector<std::string> col_labels) : col_labels_(std::move(col_labels)) {}

void LinearProblem::add_row(SparseVec row, std::string label) {
  if (!row.empty() && row.back().first >= cols()) throw ComputationError("row index out of range");
  rows_.push_back(std::move(row));
  row_labels_.push_back(std::move(label));
}

int LinearProblem::rank() const {
  Echelon e(cols());
  for (const auto& r : rows_) e.insert(r);
  return e.rank();
}

std::vector<DenseVec> LinearProblem::kernel() const {
  Echelon e(cols());
  for (const auto& r : rows_) e.insert(r);
  std::vector<SparseVec> rr = e.rref();
  std::vector<bool> is_pivot(cols(), false);
  for (const auto& r : rr) is_pivot[r.front().first] = true;
  Echelon k(cols());
  for (int f = 0; f < cols(); ++f) {
    if (is_pivot[f]) continue;
    DenseVec v(cols(), Rational(0));
    v[f] = 1;
    for (const auto& r : rr) {
      auto it = std::lower_bound(r.begin(), r.end(), f, [](const auto& a, int c) { return a.first < c; });
      if (it != r.end() && it->first == f) v[r.front().first] = -it->second;
    }
    k.insert(to_sparse(v));
  }
  std::vector<DenseVec> out;
  for (const auto& r : k.rref()) out.push_back(to_dense(r, cols()));
  return out;
}

std::vector<std::vector<double>> LinearProblem::to_double() const {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows_) {
    std::vector<double> d(cols(), 0.0);
    for (const auto& [i, a] : r) d[i] = a.get_d();
    out.push_back(std::move(d));
  }
  return out;
}

int rank_of(const std::vector<DenseVec>& vectors) {
  if (vectors.empty()) return 0;
  Echelon e(static_cast<int>(vectors.front().size()));
  for (const auto& v : vectors) e.insert(to_sparse(v));
  return e.rank();
}

int numeric_rank(const std::vector<std::vector<double>>& rows, double tol) {
  if (rows.empty() || rows.front().empty()) return 0;
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

}  // namespace symcartan

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symcartan/ring/poly.hpp"

namespace symcartan {

// Sparse rational vector as (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;
using DenseVec = std::vector<Rational>;

SparseVec to_sparse(const DenseVec& v);
DenseVec to_dense(const SparseVec& v, int size);

/// Incremental row echelon form over Q.
class Echelon {
 public:
  explicit Echelon(int cols) : cols_(cols) {}

  // Returns true when v was independent of the rows inserted so far.
  bool insert(SparseVec v);
  // Reduces v against the current rows; empty iff v lies in their span.
  SparseVec reduce(SparseVec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  // Rows of the reduced row echelon form, ordered by pivot column.
  std::vector<SparseVec> rref() const;
  std::vector<int> pivots() const;

 private:
  int cols_;
  std::map<int, SparseVec> rows_;  // keyed by pivot column, pivot entry 1
};

/// Exact homogeneous linear system M u = 0 with labelled rows and columns.
class LinearProblem {
 public:
  LinearProblem() = default;
  explicit LinearProblem(std::vector<std::string> col_labels);

  void add_row(SparseVec row, std::string label);
  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return static_cast<int>(col_labels_.size()); }
  const std::vector<SparseVec>& row_data() const { return rows_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  int rank() const;
  int nullity() const { return cols() - rank(); }
  // Kernel basis in reduced row echelon form.
  std::vector<DenseVec> kernel() const;
  // Nonzero entries; used by the numeric rank oracle.
  std::vector<std::vector<double>> to_double() const;

 private:
  std::vector<std::string> col_labels_;
  std::vector<std::string> row_labels_;
  std::vector<SparseVec> rows_;
};

// Rank of a list of dense vectors of equal length.
int rank_of(const std::vector<DenseVec>& vectors);
// Rank by singular values above tol * largest singular value.
int numeric_rank(const std::vector<std::vector<double>>& rows, double tol = 1e-8);

}  // namespace symcartan

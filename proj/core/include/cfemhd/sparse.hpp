// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cfemhd/errors.hpp"

namespace cfemhd {

// Row-compressed matrix. Column indices are sorted within each row and unique.
class SparseMatrix {
 public:
  struct Triplet {
    int row;
    int col;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_index,
               std::vector<double> values);

  // Duplicate (row, col) pairs are summed in the order given.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(int n);
  static SparseMatrix diagonal(std::span<const double> d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_index() const { return col_index_; }
  const std::vector<double>& values() const { return values_; }

  // y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  // y += alpha A x
  void multiply_add(std::span<const double> x, std::span<double> y, double alpha = 1.0) const;
  std::vector<double> operator*(std::span<const double> x) const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double s) const;
  std::vector<double> diagonal_entries() const;
  double max_abs() const;
  double at(int i, int j) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_index_;
  std::vector<double> values_;
};

// C = A B. Entries that cancel are kept as explicit zeros.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

// Kronecker product on a tensor index with x fastest: row (ix, iy, iz) maps to
// ix + nx (iy + ny iz). Equal to Z ⊗ Y ⊗ X in the usual notation.
SparseMatrix kron3(const SparseMatrix& x, const SparseMatrix& y, const SparseMatrix& z);

// Assemble a block matrix; null blocks are empty. Block sizes are taken from
// the non-null entries of each block row/column.
SparseMatrix block_matrix(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<std::vector<double>>& scale);

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

// Preconditioned conjugate gradients on x (used as the initial guess).
// Throws SolverError when max_iter is exhausted.
CgReport cg(const LinearOperator& apply_a, const LinearOperator& apply_preconditioner,
            std::span<const double> b, std::span<double> x, double rel_tol, int max_iter);

// Jacobi-preconditioned CG from a zero initial guess. max_iter <= 0 means 10 n.
std::pair<std::vector<double>, CgReport> cg_solve(const SparseMatrix& a, std::span<const double> b,
                                                  double rel_tol = 1e-12, int max_iter = 0);

LinearOperator jacobi_preconditioner(const SparseMatrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace cfemhd

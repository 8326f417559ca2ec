// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cfemhd/parallel.hpp"

namespace cfemhd {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_index,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_index_(std::move(col_index)),
      values_(std::move(values))
{
  if (static_cast<int>(row_ptr_.size()) != rows_ + 1 || col_index_.size() != values_.size() ||
      row_ptr_.back() != static_cast<int>(values_.size()))
    throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> t)
{
  if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
  for (const auto& e : t)
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::invalid_argument("SparseMatrix: triplet index out of range");
  std::stable_sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> ptr(rows + 1, 0);
  std::vector<int> idx;
  std::vector<double> val;
  idx.reserve(t.size());
  val.reserve(t.size());
  for (size_t k = 0; k < t.size();) {
    size_t m = k;
    double s = 0.0;
    while (m < t.size() && t[m].row == t[k].row && t[m].col == t[k].col) s += t[m++].value;
    idx.push_back(t[k].col);
    val.push_back(s);
    ++ptr[t[k].row + 1];
    k = m;
  }
  for (int i = 0; i < rows; ++i) ptr[i + 1] += ptr[i];
  return SparseMatrix(rows, cols, std::move(ptr), std::move(idx), std::move(val));
}

SparseMatrix SparseMatrix::identity(int n)
{
  std::vector<double> d(n, 1.0);
  return diagonal(d);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d)
{
  const int n = static_cast<int>(d.size());
  std::vector<int> ptr(n + 1), idx(n);
  for (int i = 0; i < n; ++i) {
    ptr[i + 1] = i + 1;
    idx[i] = i;
  }
  return SparseMatrix(n, n, std::move(ptr), std::move(idx), std::vector<double>(d.begin(), d.end()));
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
  if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
    throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
  parallel_for(rows_, [&](int b, int e) {
    for (int i = b; i < e; ++i) {
      double s = 0.0;
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_index_[k]];
      y[i] = s;
    }
  });
}

void SparseMatrix::multiply_add(std::span<const double> x, std::span<double> y, double alpha) const
{
  if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
    throw std::invalid_argument("SparseMatrix::multiply_add: dimension mismatch");
  parallel_for(rows_, [&](int b, int e) {
    for (int i = b; i < e; ++i) {
      double s = 0.0;
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_index_[k]];
      y[i] += alpha * s;
    }
  });
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const
{
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const
{
  std::vector<int> ptr(cols_ + 1, 0);
  for (int c : col_index_) ++ptr[c + 1];
  for (int j = 0; j < cols_; ++j) ptr[j + 1] += ptr[j];
  std::vector<int> idx(values_.size());
  std::vector<double> val(values_.size());
  std::vector<int> next(ptr.begin(), ptr.end() - 1);
  for (int i = 0; i < rows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const int dst = next[col_index_[k]]++;
      idx[dst] = i;
      val[dst] = values_[k];
    }
  return SparseMatrix(cols_, rows_, std::move(ptr), std::move(idx), std::move(val));
}

SparseMatrix SparseMatrix::scaled(double s) const
{
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

std::vector<double> SparseMatrix::diagonal_entries() const
{
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (int i = 0; i < static_cast<int>(d.size()); ++i) d[i] = at(i, i);
  return d;
}

double SparseMatrix::max_abs() const
{
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SparseMatrix::at(int i, int j) const
{
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("SparseMatrix::at");
  auto b = col_index_.begin() + row_ptr_[i], e = col_index_.begin() + row_ptr_[i + 1];
  auto it = std::lower_bound(b, e, j);
  return (it != e && *it == j) ? values_[it - col_index_.begin()] : 0.0;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  const auto& ap = a.row_ptr();
  const auto& ai = a.col_index();
  const auto& av = a.values();
  const auto& bp = b.row_ptr();
  const auto& bi = b.col_index();
  const auto& bv = b.values();
  std::vector<int> ptr(a.rows() + 1, 0), idx;
  std::vector<double> val;
  std::vector<int> marker(b.cols(), -1);
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<int> cols;
  for (int i = 0; i < a.rows(); ++i) {
    cols.clear();
    for (int k = ap[i]; k < ap[i + 1]; ++k) {
      const int m = ai[k];
      for (int l = bp[m]; l < bp[m + 1]; ++l) {
        const int j = bi[l];
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = 0.0;
          cols.push_back(j);
        }
        acc[j] += av[k] * bv[l];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (int j : cols) {
      idx.push_back(j);
      val.push_back(acc[j]);
    }
    ptr[i + 1] = static_cast<int>(idx.size());
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(ptr), std::move(idx), std::move(val));
}

SparseMatrix kron3(const SparseMatrix& x, const SparseMatrix& y, const SparseMatrix& z)
{
  const int rx = x.rows(), ry = y.rows(), rz = z.rows();
  const int cx = x.cols(), cy = y.cols();
  const int rows = rx * ry * rz, cols = cx * cy * z.cols();
  std::vector<int> ptr(rows + 1, 0), idx;
  std::vector<double> val;
  idx.reserve(static_cast<size_t>(x.nnz()) * y.nnz() * z.nnz());
  val.reserve(idx.capacity());
  std::vector<std::pair<int, double>> row;
  for (int iz = 0; iz < rz; ++iz)
    for (int iy = 0; iy < ry; ++iy)
      for (int ix = 0; ix < rx; ++ix) {
        row.clear();
        for (int kz = z.row_ptr()[iz]; kz < z.row_ptr()[iz + 1]; ++kz)
          for (int ky = y.row_ptr()[iy]; ky < y.row_ptr()[iy + 1]; ++ky)
            for (int kx = x.row_ptr()[ix]; kx < x.row_ptr()[ix + 1]; ++kx) {
              const int c = x.col_index()[kx] + cx * (y.col_index()[ky] + cy * z.col_index()[kz]);
              row.emplace_back(c, x.values()[kx] * y.values()[ky] * z.values()[kz]);
            }
        std::sort(row.begin(), row.end(), [](auto& p, auto& q) { return p.first < q.first; });
        for (auto& [c, v] : row) {
          idx.push_back(c);
          val.push_back(v);
        }
        ptr[ix + rx * (iy + ry * iz) + 1] = static_cast<int>(idx.size());
      }
  return SparseMatrix(rows, cols, std::move(ptr), std::move(idx), std::move(val));
}

SparseMatrix block_matrix(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<std::vector<double>>& scale)
{
  const size_t nr = blocks.size(), nc = nr ? blocks[0].size() : 0;
  std::vector<int> row_size(nr, -1), col_size(nc, -1);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j)
      if (blocks[i][j]) {
        row_size[i] = blocks[i][j]->rows();
        col_size[j] = blocks[i][j]->cols();
      }
  std::vector<int> row_off(nr + 1, 0), col_off(nc + 1, 0);
  for (size_t i = 0; i < nr; ++i) {
    if (row_size[i] < 0) throw std::invalid_argument("block_matrix: empty block row");
    row_off[i + 1] = row_off[i] + row_size[i];
  }
  for (size_t j = 0; j < nc; ++j) {
    if (col_size[j] < 0) throw std::invalid_argument("block_matrix: empty block column");
    col_off[j + 1] = col_off[j] + col_size[j];
  }
  std::vector<SparseMatrix::Triplet> t;
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) {
      const SparseMatrix* b = blocks[i][j];
      if (!b) continue;
      for (int r = 0; r < b->rows(); ++r)
        for (int k = b->row_ptr()[r]; k < b->row_ptr()[r + 1]; ++k)
          t.push_back({row_off[i] + r, col_off[j] + b->col_index()[k], scale[i][j] * b->values()[k]});
    }
  return SparseMatrix::from_triplets(row_off[nr], col_off[nc], std::move(t));
}

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a)
{
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

CgReport cg(const LinearOperator& apply_a, const LinearOperator& apply_m, std::span<const double> b,
            std::span<double> x, double rel_tol, int max_iter)
{
  const size_t n = b.size();
  CgReport rep;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    return rep;
  }
  std::vector<double> r(n), z(n), p(n), ap(n);
  apply_a(x, ap);
  for (size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  rep.relative_residual = norm2(r) / bnorm;
  if (rep.relative_residual <= rel_tol) {
    rep.converged = true;
    return rep;
  }
  apply_m(r, z);
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iter; ++it) {
    apply_a(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      rep.iterations = it;
      throw SolverError("cg: operator is not positive definite", rep);
    }
    const double alpha = rz / pap;
    for (size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    rep.iterations = it;
    rep.relative_residual = norm2(r) / bnorm;
    if (rep.relative_residual <= rel_tol) {
      rep.converged = true;
      return rep;
    }
    apply_m(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverError("cg: no convergence after " + std::to_string(max_iter) + " iterations (relative residual " +
                        std::to_string(rep.relative_residual) + ")",
                    rep);
}

LinearOperator jacobi_preconditioner(const SparseMatrix& a)
{
  std::vector<double> inv = a.diagonal_entries();
  for (double& d : inv) {
    if (!(d > 0.0)) throw std::invalid_argument("jacobi_preconditioner: nonpositive diagonal");
    d = 1.0 / d;
  }
  return [inv = std::move(inv)](std::span<const double> r, std::span<double> z) {
    for (size_t i = 0; i < r.size(); ++i) z[i] = inv[i] * r[i];
  };
}

std::pair<std::vector<double>, CgReport> cg_solve(const SparseMatrix& a, std::span<const double> b, double rel_tol,
                                                  int max_iter)
{
  if (a.rows() != a.cols() || a.rows() != static_cast<int>(b.size()))
    throw std::invalid_argument("cg_solve: dimension mismatch");
  if (max_iter <= 0) max_iter = 10 * std::max(1, a.rows());
  std::vector<double> x(b.size(), 0.0);
  auto op = [&a](std::span<const double> in, std::span<double> out) { a.multiply(in, out); };
  CgReport rep = cg(op, jacobi_preconditioner(a), b, x, rel_tol, max_iter);
  return {std::move(x), rep};
}

}  // namespace cfemhd

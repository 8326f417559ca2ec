// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cfemhd/mesh.hpp"
#include "cfemhd/parallel.hpp"
#include "cfemhd/quadrature.hpp"
#include "cfemhd/sparse.hpp"
#include "cfemhd/spaces.hpp"
#include "cfemhd/tensor.hpp"

namespace cfemhd {

// A space tabulated at the cell quadrature points of a rule.
class CellBasis {
 public:
  CellBasis(std::shared_ptr<const Space> space, const QuadratureRule& rule);

  const Space& space() const { return *space_; }
  const std::shared_ptr<const Space>& space_ptr() const { return space_; }
  const SpaceTables& tables() const { return tables_; }
  const QuadratureRule& rule() const { return rule_; }
  int num_points() const { return tables_.num_points(); }
  // Quadrature weight times cell volume.
  const std::vector<double>& weights() const { return weights_; }
  // Physical coordinates of quadrature point q in the cell.
  Vec3 point(int cell, int q) const;

  // vals [c][q]; grads [c][j][q].
  void values(const Field& f, int cell, double* vals) const;
  void values_and_gradients(const Field& f, int cell, double* vals, double* grads) const;

 private:
  std::shared_ptr<const Space> space_;
  QuadratureRule rule_;
  SpaceTables tables_;
  std::vector<double> weights_;
};

// A space tabulated at the facet quadrature points of each of the six local
// faces (local face 2a: x_a = 0, 2a+1: x_a = 1). Facet points of the two
// sides of an interior facet are listed in the same order.
class FaceBasis {
 public:
  FaceBasis(std::shared_ptr<const Space> space, const QuadratureRule& rule);

  const Space& space() const { return *space_; }
  const SpaceTables& tables(int local_face) const { return tables_[local_face]; }
  int num_points() const { return tables_[0].num_points(); }
  // Reference facet weights (sum 1); multiply by the facet area.
  const std::vector<double>& weights() const { return weights_; }

  void values(const Field& f, int cell, int local_face, double* vals) const;
  void values_and_gradients(const Field& f, int cell, int local_face, double* vals, double* grads) const;

 private:
  std::shared_ptr<const Space> space_;
  std::vector<SpaceTables> tables_;
  std::vector<double> weights_;
};

// r_i = sum_cells sum_q w_q (a[c][q] psi_i,c + b[c][j][q] d_j psi_i,c).
// integrand(cell, a, b) fills the pointwise coefficients of every quadrature
// point (b only when with_gradient is set; both arrays are zeroed first).
// Cell contributions may be computed in parallel; they are added to r in
// cell order, so the result is independent of the worker count.
template <class Integrand>
std::vector<double> cell_functional(const CellBasis& test, bool with_gradient, Integrand&& integrand)
{
  const Space& s = test.space();
  const int ncell = s.mesh().num_cells();
  const int nq = test.num_points();
  const int nc = s.num_components();
  const int ls = s.local_size();
  std::vector<double> local(static_cast<size_t>(ncell) * ls, 0.0);
  const auto& w = test.weights();
  parallel_for(ncell, [&](int begin, int end) {
    std::vector<double> a(nc * nq), b(with_gradient ? nc * 3 * nq : 0);
    for (int cell = begin; cell < end; ++cell) {
      std::fill(a.begin(), a.end(), 0.0);
      std::fill(b.begin(), b.end(), 0.0);
      integrand(cell, a.data(), with_gradient ? b.data() : nullptr);
      for (int c = 0; c < nc; ++c)
        for (int q = 0; q < nq; ++q) {
          a[c * nq + q] *= w[q];
          if (with_gradient)
            for (int j = 0; j < 3; ++j) b[(c * 3 + j) * nq + q] *= w[q];
        }
      test.tables().integrate(a.data(), with_gradient ? b.data() : nullptr, &local[static_cast<size_t>(cell) * ls]);
    }
  });
  std::vector<double> r(s.size(), 0.0);
  for (int cell = 0; cell < ncell; ++cell) {
    const double* l = &local[static_cast<size_t>(cell) * ls];
    const auto dofs = s.cell_dofs(cell);
    for (int i = 0; i < ls; ++i) r[dofs[i]] += l[i];
  }
  return r;
}

// Facet analogue: integrand(facet, a_plus, b_plus, a_minus, b_minus) fills
// pointwise coefficients pairing with the plus- and minus-side traces of the
// test functions; weights (including the facet area) are applied here.
template <class Integrand>
std::vector<double> facet_functional(const FaceBasis& test, bool with_gradient, Integrand&& integrand)
{
  const Space& s = test.space();
  const auto& facets = s.mesh().facets();
  const int nf = static_cast<int>(facets.size());
  const int nq = test.num_points();
  const int nc = s.num_components();
  const int ls = s.local_size();
  std::vector<double> local(static_cast<size_t>(nf) * 2 * ls, 0.0);
  const auto& w = test.weights();
  parallel_for(nf, [&](int begin, int end) {
    const int na = nc * nq, nb = with_gradient ? nc * 3 * nq : 0;
    std::vector<double> ap(na), am(na), bp(nb), bm(nb);
    for (int fi = begin; fi < end; ++fi) {
      const FacetRecord& f = facets[fi];
      std::fill(ap.begin(), ap.end(), 0.0);
      std::fill(am.begin(), am.end(), 0.0);
      std::fill(bp.begin(), bp.end(), 0.0);
      std::fill(bm.begin(), bm.end(), 0.0);
      integrand(f, ap.data(), with_gradient ? bp.data() : nullptr, am.data(), with_gradient ? bm.data() : nullptr);
      for (int c = 0; c < nc; ++c)
        for (int q = 0; q < nq; ++q) {
          const double wq = w[q] * f.area;
          ap[c * nq + q] *= wq;
          am[c * nq + q] *= wq;
          if (with_gradient)
            for (int j = 0; j < 3; ++j) {
              bp[(c * 3 + j) * nq + q] *= wq;
              bm[(c * 3 + j) * nq + q] *= wq;
            }
        }
      double* lp = &local[static_cast<size_t>(fi) * 2 * ls];
      test.tables(f.plus_local_face).integrate(ap.data(), with_gradient ? bp.data() : nullptr, lp);
      test.tables(f.minus_local_face).integrate(am.data(), with_gradient ? bm.data() : nullptr, lp + ls);
    }
  });
  std::vector<double> r(s.size(), 0.0);
  for (int fi = 0; fi < nf; ++fi) {
    const double* l = &local[static_cast<size_t>(fi) * 2 * ls];
    const auto dp = s.cell_dofs(facets[fi].plus_cell);
    const auto dm = s.cell_dofs(facets[fi].minus_cell);
    for (int i = 0; i < ls; ++i) r[dp[i]] += l[i];
    for (int i = 0; i < ls; ++i) r[dm[i]] += l[ls + i];
  }
  return r;
}

// Assembled mass matrix, optionally weighted by a scalar field.
SparseMatrix mass_matrix(const CellBasis& basis, const Field* weight = nullptr);

// Unweighted mass matrix built from 1D factors; equal to mass_matrix(basis)
// without the element loop.
SparseMatrix tensor_mass_matrix(const Space& space);

// Exact inverse of the unweighted tensor mass matrix through 1D
// factorizations along each axis.
class KroneckerMassInverse {
 public:
  explicit KroneckerMassInverse(const Space& space);
  ~KroneckerMassInverse();
  KroneckerMassInverse(KroneckerMassInverse&&) noexcept;
  KroneckerMassInverse& operator=(KroneckerMassInverse&&) noexcept;

  // z = scale * M^{-1} r
  void apply(std::span<const double> r, std::span<double> z, double scale = 1.0) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class Preconditioner { Kronecker, Jacobi };

struct SolverOptions {
  double rel_tol = 1e-12;
  int max_iter = 0;  // 0: 10 n
  Preconditioner preconditioner = Preconditioner::Kronecker;
};

// Unweighted mass matrix of a space with its CG solver.
class MassSolver {
 public:
  MassSolver(const CellBasis& basis, SolverOptions options);

  const SparseMatrix& matrix() const { return m_; }
  std::vector<double> solve(std::span<const double> rhs, CgReport* report = nullptr) const;
  void apply_preconditioner(std::span<const double> r, std::span<double> z, double scale = 1.0) const;
  const SolverOptions& options() const { return options_; }

 private:
  SparseMatrix m_;
  KroneckerMassInverse kron_;
  LinearOperator jacobi_;
  SolverOptions options_;
};

// Matrix-free mass operator weighted by pointwise values at the cell
// quadrature points ([cell][q]).
class WeightedMassOperator {
 public:
  WeightedMassOperator(const CellBasis& basis, std::vector<double> weights);
  void apply(std::span<const double> x, std::span<double> y) const;
  double mean_weight() const { return mean_; }

 private:
  const CellBasis* basis_;
  std::vector<double> w_;
  double mean_ = 0.0;
};

// Solves the weighted mass system preconditioned by the unweighted inverse
// scaled with the mean weight. Throws DegenerateWeightError if any weight is
// not strictly positive.
std::vector<double> solve_weighted_mass(const CellBasis& basis, const MassSolver& unweighted,
                                        std::vector<double> weights, std::span<const double> rhs,
                                        CgReport* report = nullptr);

// Pointwise target values at the cell quadrature points, [c][q].
using PointwiseEvaluator = std::function<void(int cell, double* vals)>;

// L2 projection <w phi, u> = <w phi, target>; weight is an optional scalar field.
Field l2_project(const CellBasis& basis, const MassSolver& unweighted, const PointwiseEvaluator& target,
                 const Field* weight = nullptr);

}  // namespace cfemhd

// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfemhd {

namespace {

std::array<std::vector<double>, 3> cell_points(const QuadratureRule& rule)
{
  return {rule.points1d, rule.points1d, rule.points1d};
}

std::array<std::vector<double>, 3> face_points(const QuadratureRule& rule, int local_face)
{
  auto p = cell_points(rule);
  p[local_face / 2] = {static_cast<double>(local_face % 2)};
  return p;
}

}  // namespace

CellBasis::CellBasis(std::shared_ptr<const Space> space, const QuadratureRule& rule)
    : space_(std::move(space)), rule_(rule), tables_(*space_, cell_points(rule))
{
  const double vol = space_->mesh().cell_volume();
  weights_.resize(rule.weights.size());
  for (size_t q = 0; q < weights_.size(); ++q) weights_[q] = rule.weights[q] * vol;
}

Vec3 CellBasis::point(int cell, int q) const
{
  const Vec3 o = space_->mesh().cell_origin(cell);
  const auto& h = space_->mesh().spacing();
  const Vec3& r = rule_.points[q];
  return {o[0] + h[0] * r[0], o[1] + h[1] * r[1], o[2] + h[2] * r[2]};
}

void CellBasis::values(const Field& f, int cell, double* vals) const
{
  double local[64];
  f.gather(cell, local);
  tables_.values(local, vals);
}

void CellBasis::values_and_gradients(const Field& f, int cell, double* vals, double* grads) const
{
  double local[64];
  f.gather(cell, local);
  tables_.values(local, vals);
  tables_.gradients(local, grads);
}

FaceBasis::FaceBasis(std::shared_ptr<const Space> space, const QuadratureRule& rule)
    : space_(std::move(space)), weights_(rule.facet_weights)
{
  for (int lf = 0; lf < 6; ++lf) tables_.emplace_back(*space_, face_points(rule, lf));
}

void FaceBasis::values(const Field& f, int cell, int local_face, double* vals) const
{
  double local[64];
  f.gather(cell, local);
  tables_[local_face].values(local, vals);
}

void FaceBasis::values_and_gradients(const Field& f, int cell, int local_face, double* vals, double* grads) const
{
  double local[64];
  f.gather(cell, local);
  tables_[local_face].values(local, vals);
  tables_[local_face].gradients(local, grads);
}

SparseMatrix mass_matrix(const CellBasis& basis, const Field* weight)
{
  const Space& s = basis.space();
  const int ncell = s.mesh().num_cells();
  const int nq = basis.num_points();
  const int nc = s.num_components();
  const int ls = s.local_size();
  std::unique_ptr<CellBasis> wbasis;
  if (weight) {
    if (weight->space().num_components() != 1) throw std::invalid_argument("mass_matrix: weight must be scalar");
    wbasis = std::make_unique<CellBasis>(weight->space_ptr(), basis.rule());
  }
  // phi[l][c][q] for unit local vectors
  std::vector<double> phi(static_cast<size_t>(ls) * nc * nq);
  std::vector<double> unit(ls, 0.0);
  for (int l = 0; l < ls; ++l) {
    unit[l] = 1.0;
    basis.tables().values(unit.data(), &phi[static_cast<size_t>(l) * nc * nq]);
    unit[l] = 0.0;
  }
  std::vector<SparseMatrix::Triplet> t;
  t.reserve(static_cast<size_t>(ncell) * ls * ls);
  std::vector<double> wq(nq);
  for (int cell = 0; cell < ncell; ++cell) {
    for (int q = 0; q < nq; ++q) wq[q] = basis.weights()[q];
    if (wbasis) {
      std::vector<double> wv(nq);
      wbasis->values(*weight, cell, wv.data());
      for (int q = 0; q < nq; ++q) {
        if (!(wv[q] > 0.0))
          throw DegenerateWeightError("mass_matrix: nonpositive weight in cell " + std::to_string(cell));
        wq[q] *= wv[q];
      }
    }
    const auto dofs = s.cell_dofs(cell);
    for (int l = 0; l < ls; ++l)
      for (int m = 0; m < ls; ++m) {
        double v = 0.0;
        const double* pl = &phi[static_cast<size_t>(l) * nc * nq];
        const double* pm = &phi[static_cast<size_t>(m) * nc * nq];
        for (int i = 0; i < nc * nq; ++i) v += wq[i % nq] * pl[i] * pm[i];
        if (v != 0.0) t.push_back({dofs[l], dofs[m], v});
      }
  }
  return SparseMatrix::from_triplets(s.size(), s.size(), std::move(t));
}

MassSolver::MassSolver(const CellBasis& basis, SolverOptions options)
    : m_(tensor_mass_matrix(basis.space())), kron_(basis.space()), jacobi_(jacobi_preconditioner(m_)), options_(options)
{
}

void MassSolver::apply_preconditioner(std::span<const double> r, std::span<double> z, double scale) const
{
  if (options_.preconditioner == Preconditioner::Kronecker) {
    kron_.apply(r, z, scale);
  } else {
    jacobi_(r, z);
    if (scale != 1.0)
      for (double& v : z) v *= scale;
  }
}

std::vector<double> MassSolver::solve(std::span<const double> rhs, CgReport* report) const
{
  std::vector<double> x(rhs.size(), 0.0);
  const int max_iter = options_.max_iter > 0 ? options_.max_iter : 10 * m_.rows();
  auto op = [this](std::span<const double> in, std::span<double> out) { m_.multiply(in, out); };
  auto pc = [this](std::span<const double> in, std::span<double> out) { apply_preconditioner(in, out); };
  CgReport rep = cg(op, pc, rhs, x, options_.rel_tol, max_iter);
  if (report) *report = rep;
  return x;
}

WeightedMassOperator::WeightedMassOperator(const CellBasis& basis, std::vector<double> weights)
    : basis_(&basis), w_(std::move(weights))
{
  const int nq = basis.num_points();
  if (static_cast<int>(w_.size()) != basis.space().mesh().num_cells() * nq)
    throw std::invalid_argument("WeightedMassOperator: weight array size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0.0)) throw DegenerateWeightError("weighted mass: nonpositive weight at a quadrature point");
    s += w_[i];
  }
  mean_ = s / static_cast<double>(w_.size());
  for (size_t i = 0; i < w_.size(); ++i) w_[i] *= basis.weights()[i % nq];
}

void WeightedMassOperator::apply(std::span<const double> x, std::span<double> y) const
{
  const Space& s = basis_->space();
  const int ncell = s.mesh().num_cells();
  const int nq = basis_->num_points();
  const int nc = s.num_components();
  const int ls = s.local_size();
  std::vector<double> local(static_cast<size_t>(ncell) * ls, 0.0);
  parallel_for(ncell, [&](int begin, int end) {
    double in[64], v[3 * 64];
    for (int cell = begin; cell < end; ++cell) {
      const auto dofs = s.cell_dofs(cell);
      for (int i = 0; i < ls; ++i) in[i] = x[dofs[i]];
      basis_->tables().values(in, v);
      const double* w = &w_[static_cast<size_t>(cell) * nq];
      for (int c = 0; c < nc; ++c)
        for (int q = 0; q < nq; ++q) v[c * nq + q] *= w[q];
      basis_->tables().integrate(v, nullptr, &local[static_cast<size_t>(cell) * ls]);
    }
  });
  std::fill(y.begin(), y.end(), 0.0);
  for (int cell = 0; cell < ncell; ++cell) {
    const auto dofs = s.cell_dofs(cell);
    const double* l = &local[static_cast<size_t>(cell) * ls];
    for (int i = 0; i < ls; ++i) y[dofs[i]] += l[i];
  }
}

std::vector<double> solve_weighted_mass(const CellBasis& basis, const MassSolver& unweighted,
                                        std::vector<double> weights, std::span<const double> rhs, CgReport* report)
{
  WeightedMassOperator op(basis, std::move(weights));
  const double scale = 1.0 / op.mean_weight();
  std::vector<double> x(rhs.size(), 0.0);
  const auto& opts = unweighted.options();
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * static_cast<int>(rhs.size());
  CgReport rep = cg([&op](std::span<const double> in, std::span<double> out) { op.apply(in, out); },
                    [&](std::span<const double> in, std::span<double> out) {
                      unweighted.apply_preconditioner(in, out, scale);
                    },
                    rhs, x, opts.rel_tol, max_iter);
  if (report) *report = rep;
  return x;
}

Field l2_project(const CellBasis& basis, const MassSolver& unweighted, const PointwiseEvaluator& target,
                 const Field* weight)
{
  const int nq = basis.num_points();
  const int ncell = basis.space().mesh().num_cells();
  std::vector<double> wq;
  std::unique_ptr<CellBasis> wbasis;
  if (weight) {
    wbasis = std::make_unique<CellBasis>(weight->space_ptr(), basis.rule());
    wq.resize(static_cast<size_t>(ncell) * nq);
    for (int cell = 0; cell < ncell; ++cell) wbasis->values(*weight, cell, &wq[static_cast<size_t>(cell) * nq]);
    for (double v : wq)
      if (!(v > 0.0)) throw DegenerateWeightError("l2_project: nonpositive weight at a quadrature point");
  }
  const int nc = basis.space().num_components();
  auto rhs = cell_functional(basis, false, [&](int cell, double* a, double*) {
    target(cell, a);
    if (weight)
      for (int c = 0; c < nc; ++c)
        for (int q = 0; q < nq; ++q) a[c * nq + q] *= wq[static_cast<size_t>(cell) * nq + q];
  });
  if (weight) return Field(basis.space_ptr(), solve_weighted_mass(basis, unweighted, std::move(wq), rhs));
  return Field(basis.space_ptr(), unweighted.solve(rhs));
}

}  // namespace cfemhd

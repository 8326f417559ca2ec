// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "cfemhd/assembly.hpp"

namespace cfemhd {

namespace {

using Factorization = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;

// Periodic 1D mass matrix of one factor along one axis.
Eigen::SparseMatrix<double> mass_1d(const LagrangeBasis1D& b, int degree, int cells, double h)
{
  std::vector<double> p, w;
  gauss_legendre(degree + 2, p, w);
  const int n = degree * cells;
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < cells; ++i)
    for (int l = 0; l < b.size(); ++l)
      for (int m = 0; m < b.size(); ++m) {
        double v = 0.0;
        for (size_t q = 0; q < p.size(); ++q) v += w[q] * h * b.value(l, p[q]) * b.value(m, p[q]);
        t.emplace_back((degree * i + l) % n, (degree * i + m) % n, v);
      }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

SparseMatrix tensor_mass_matrix(const Space& space)
{
  const auto& mesh = space.mesh();
  SparseMatrix m1[2][3];
  for (int f = 0; f < 2; ++f)
    for (int a = 0; a < 3; ++a) {
      auto e = mass_1d(space.basis(static_cast<Factor>(f)), space.degree(), mesh.cells()[a], mesh.spacing()[a]);
      std::vector<SparseMatrix::Triplet> t;
      for (int k = 0; k < e.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(e, k); it; ++it)
          t.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
      m1[f][a] = SparseMatrix::from_triplets(static_cast<int>(e.rows()), static_cast<int>(e.cols()), std::move(t));
    }
  const int nc = space.num_components();
  std::vector<SparseMatrix> blocks;
  for (int c = 0; c < nc; ++c) {
    auto fa = [&](int a) { return static_cast<int>(space.factor(c, a)); };
    blocks.push_back(kron3(m1[fa(0)][0], m1[fa(1)][1], m1[fa(2)][2]));
  }
  if (nc == 1) return std::move(blocks[0]);
  std::vector<std::vector<const SparseMatrix*>> grid(3, std::vector<const SparseMatrix*>(3, nullptr));
  std::vector<std::vector<double>> scale(3, std::vector<double>(3, 1.0));
  for (int c = 0; c < 3; ++c) grid[c][c] = &blocks[c];
  return block_matrix(grid, scale);
}

struct KroneckerMassInverse::Impl {
  std::array<int, 3> shape{};
  int nc = 1;
  std::array<std::array<int, 3>, 3> factor{};
  // [factor][axis]
  std::unique_ptr<Factorization> solver[2][3];
};

KroneckerMassInverse::KroneckerMassInverse(const Space& space) : impl_(std::make_unique<Impl>())
{
  const auto& mesh = space.mesh();
  impl_->shape = space.global_shape();
  impl_->nc = space.num_components();
  for (int c = 0; c < impl_->nc; ++c)
    for (int a = 0; a < 3; ++a) impl_->factor[c][a] = static_cast<int>(space.factor(c, a));
  for (int f = 0; f < 2; ++f)
    for (int a = 0; a < 3; ++a) {
      auto m = mass_1d(space.basis(static_cast<Factor>(f)), space.degree(), mesh.cells()[a], mesh.spacing()[a]);
      impl_->solver[f][a] = std::make_unique<Factorization>(m);
      if (impl_->solver[f][a]->info() != Eigen::Success)
        throw std::runtime_error("KroneckerMassInverse: 1D factorization failed");
    }
}

KroneckerMassInverse::~KroneckerMassInverse() = default;
KroneckerMassInverse::KroneckerMassInverse(KroneckerMassInverse&&) noexcept = default;
KroneckerMassInverse& KroneckerMassInverse::operator=(KroneckerMassInverse&&) noexcept = default;

void KroneckerMassInverse::apply(std::span<const double> r, std::span<double> z, double scale) const
{
  const auto& sh = impl_->shape;
  const int block = sh[0] * sh[1] * sh[2];
  const int stride[3] = {1, sh[0], sh[0] * sh[1]};
  for (size_t i = 0; i < r.size(); ++i) z[i] = scale * r[i];
  for (int c = 0; c < impl_->nc; ++c) {
    double* zc = z.data() + static_cast<size_t>(c) * block;
    for (int a = 0; a < 3; ++a) {
      const Factorization& s = *impl_->solver[impl_->factor[c][a]][a];
      const int n = sh[a];
      const int b = (a + 1) % 3, d = (a + 2) % 3;
      Eigen::VectorXd line(n), out(n);
      for (int i = 0; i < sh[b]; ++i)
        for (int j = 0; j < sh[d]; ++j) {
          double* base = zc + static_cast<size_t>(i) * stride[b] + static_cast<size_t>(j) * stride[d];
          for (int m = 0; m < n; ++m) line[m] = base[static_cast<size_t>(m) * stride[a]];
          out = s.solve(line);
          for (int m = 0; m < n; ++m) base[static_cast<size_t>(m) * stride[a]] = out[m];
        }
    }
  }
}

}  // namespace cfemhd

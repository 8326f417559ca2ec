// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "cfemhd/basis.hpp"
#include "cfemhd/spaces.hpp"

namespace cfemhd {

// Values and derivatives (already divided by the cell spacing) of a 1D basis
// at a set of points, stored [point][basis].
struct AxisTable {
  int nq = 0;
  int nb = 0;
  std::vector<double> val;
  std::vector<double> der;
};

AxisTable make_axis_table(const LagrangeBasis1D& basis, const std::vector<double>& points, double h);

// out[q2][q1][q0] = sum c[m2][m1][m0] T0[q0][m0] T1[q1][m1] T2[q2][m2]
void tensor_contract(const double* c, const int n[3], const double* const t[3], const int q[3], double* out,
                     double* work);
// c[m2][m1][m0] += sum in[q2][q1][q0] T0[q0][m0] T1[q1][m1] T2[q2][m2]
void tensor_contract_adjoint(const double* in, const int n[3], const double* const t[3], const int q[3], double* c,
                             double* work);

// Tabulation of a space on a tensor grid of reference points. Pointwise data
// is stored component-major: values [c][q], gradients [c][j][q].
class SpaceTables {
 public:
  SpaceTables(const Space& space, const std::array<std::vector<double>, 3>& points);

  int num_points() const { return nq_[0] * nq_[1] * nq_[2]; }
  const std::array<int, 3>& shape() const { return nq_; }
  int num_components() const { return nc_; }
  int local_size() const { return local_size_; }

  void values(const double* local, double* vals) const;
  void gradients(const double* local, double* grads) const;
  // local += sum_q a[c][q] psi + b[c][j][q] d_j psi. Either input may be null.
  void integrate(const double* a, const double* b, double* local) const;

 private:
  const AxisTable& table(int comp, int axis) const { return tab_[factor_[comp][axis]][axis]; }

  int nc_;
  int local_size_;
  std::array<int, 3> nq_;
  std::array<std::array<int, 3>, 3> shape_{};
  std::array<int, 4> offset_{};
  std::array<std::array<int, 3>, 3> factor_{};
  AxisTable tab_[2][3];
};

}  // namespace cfemhd

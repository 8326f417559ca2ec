// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/tensor.hpp"

#include <algorithm>

namespace cfemhd {

AxisTable make_axis_table(const LagrangeBasis1D& basis, const std::vector<double>& points, double h)
{
  AxisTable t;
  t.nq = static_cast<int>(points.size());
  t.nb = basis.size();
  t.val.resize(t.nq * t.nb);
  t.der.resize(t.nq * t.nb);
  for (int q = 0; q < t.nq; ++q)
    for (int m = 0; m < t.nb; ++m) {
      t.val[q * t.nb + m] = basis.value(m, points[q]);
      t.der[q * t.nb + m] = basis.derivative(m, points[q]) / h;
    }
  return t;
}

namespace {

// Q0, Q1, Q2 > 0 fix the point counts at compile time; 0 reads them from q.
template <int Q0, int Q1, int Q2>
void contract(const double* c, const int n[3], const double* const t[3], const int q[3], double* out, double* work)
{
  const int n0 = n[0], n1 = n[1], n2 = n[2];
  const int q0 = Q0 ? Q0 : q[0], q1 = Q1 ? Q1 : q[1], q2 = Q2 ? Q2 : q[2];
  double* w1 = work;                 // [m2][m1][q0]
  double* w2 = work + n2 * n1 * q0;  // [m2][q1][q0]
  for (int r = 0; r < n2 * n1; ++r) {
    const double* cc = c + r * n0;
    double* o = w1 + r * q0;
    for (int i = 0; i < q0; ++i) {
      const double* ti = t[0] + i * n0;
      double s = 0.0;
      for (int m = 0; m < n0; ++m) s += cc[m] * ti[m];
      o[i] = s;
    }
  }
  for (int m2 = 0; m2 < n2; ++m2)
    for (int j = 0; j < q1; ++j) {
      const double* tj = t[1] + j * n1;
      double* o = w2 + (m2 * q1 + j) * q0;
      for (int i = 0; i < q0; ++i) o[i] = 0.0;
      for (int m1 = 0; m1 < n1; ++m1) {
        const double f = tj[m1];
        const double* src = w1 + (m2 * n1 + m1) * q0;
        for (int i = 0; i < q0; ++i) o[i] += f * src[i];
      }
    }
  const int plane = q1 * q0;
  for (int k = 0; k < q2; ++k) {
    const double* tk = t[2] + k * n2;
    double* o = out + k * plane;
    for (int p = 0; p < plane; ++p) o[p] = 0.0;
    for (int m2 = 0; m2 < n2; ++m2) {
      const double f = tk[m2];
      const double* src = w2 + m2 * plane;
      for (int p = 0; p < plane; ++p) o[p] += f * src[p];
    }
  }
}

template <int Q0, int Q1, int Q2>
void contract_adjoint(const double* in, const int n[3], const double* const t[3], const int q[3], double* c,
                      double* work)
{
  const int n0 = n[0], n1 = n[1], n2 = n[2];
  const int q0 = Q0 ? Q0 : q[0], q1 = Q1 ? Q1 : q[1], q2 = Q2 ? Q2 : q[2];
  double* w2 = work;                 // [m2][q1][q0]
  double* w1 = work + n2 * q1 * q0;  // [m2][m1][q0]
  const int plane = q1 * q0;
  for (int m2 = 0; m2 < n2; ++m2) {
    double* o = w2 + m2 * plane;
    for (int p = 0; p < plane; ++p) o[p] = 0.0;
    for (int k = 0; k < q2; ++k) {
      const double f = t[2][k * n2 + m2];
      const double* src = in + k * plane;
      for (int p = 0; p < plane; ++p) o[p] += f * src[p];
    }
  }
  for (int m2 = 0; m2 < n2; ++m2)
    for (int m1 = 0; m1 < n1; ++m1) {
      double* o = w1 + (m2 * n1 + m1) * q0;
      for (int i = 0; i < q0; ++i) o[i] = 0.0;
      for (int j = 0; j < q1; ++j) {
        const double f = t[1][j * n1 + m1];
        const double* src = w2 + (m2 * q1 + j) * q0;
        for (int i = 0; i < q0; ++i) o[i] += f * src[i];
      }
    }
  for (int r = 0; r < n2 * n1; ++r) {
    const double* src = w1 + r * q0;
    double* cc = c + r * n0;
    for (int m = 0; m < n0; ++m) {
      double s = 0.0;
      for (int i = 0; i < q0; ++i) s += t[0][i * n0 + m] * src[i];
      cc[m] += s;
    }
  }
}

using ContractFn = void (*)(const double*, const int*, const double* const*, const int*, double*, double*);

template <int Q>
ContractFn pick_forward(const int q[3])
{
  if (q[0] == Q && q[1] == Q && q[2] == Q) return contract<Q, Q, Q>;
  if (q[0] == 1 && q[1] == Q && q[2] == Q) return contract<1, Q, Q>;
  if (q[0] == Q && q[1] == 1 && q[2] == Q) return contract<Q, 1, Q>;
  if (q[0] == Q && q[1] == Q && q[2] == 1) return contract<Q, Q, 1>;
  return nullptr;
}

template <int Q>
ContractFn pick_adjoint(const int q[3])
{
  if (q[0] == Q && q[1] == Q && q[2] == Q) return contract_adjoint<Q, Q, Q>;
  if (q[0] == 1 && q[1] == Q && q[2] == Q) return contract_adjoint<1, Q, Q>;
  if (q[0] == Q && q[1] == 1 && q[2] == Q) return contract_adjoint<Q, 1, Q>;
  if (q[0] == Q && q[1] == Q && q[2] == 1) return contract_adjoint<Q, Q, 1>;
  return nullptr;
}

ContractFn forward_kernel(const int q[3])
{
  switch (std::max({q[0], q[1], q[2]})) {
    case 3: if (auto k = pick_forward<3>(q)) return k; break;
    case 4: if (auto k = pick_forward<4>(q)) return k; break;
    case 5: if (auto k = pick_forward<5>(q)) return k; break;
    default: break;
  }
  return contract<0, 0, 0>;
}

ContractFn adjoint_kernel(const int q[3])
{
  switch (std::max({q[0], q[1], q[2]})) {
    case 3: if (auto k = pick_adjoint<3>(q)) return k; break;
    case 4: if (auto k = pick_adjoint<4>(q)) return k; break;
    case 5: if (auto k = pick_adjoint<5>(q)) return k; break;
    default: break;
  }
  return contract_adjoint<0, 0, 0>;
}

}  // namespace

void tensor_contract(const double* c, const int n[3], const double* const t[3], const int q[3], double* out,
                     double* work)
{
  forward_kernel(q)(c, n, t, q, out, work);
}

void tensor_contract_adjoint(const double* in, const int n[3], const double* const t[3], const int q[3], double* c,
                             double* work)
{
  adjoint_kernel(q)(in, n, t, q, c, work);
}

namespace {
constexpr int kWork = 2 * 8 * 8 * 8;
}

SpaceTables::SpaceTables(const Space& space, const std::array<std::vector<double>, 3>& points)
    : nc_(space.num_components()), local_size_(space.local_size())
{
  const auto h = space.mesh().spacing();
  for (int a = 0; a < 3; ++a) {
    nq_[a] = static_cast<int>(points[a].size());
    if (nq_[a] > 8) throw std::invalid_argument("SpaceTables: at most 8 points per axis");
    tab_[0][a] = make_axis_table(space.basis(Factor::Continuous), points[a], h[a]);
    tab_[1][a] = make_axis_table(space.basis(Factor::Discontinuous), points[a], h[a]);
  }
  for (int c = 0; c < nc_; ++c) {
    shape_[c] = space.local_shape(c);
    offset_[c] = space.local_offset(c);
    for (int a = 0; a < 3; ++a) factor_[c][a] = static_cast<int>(space.factor(c, a));
  }
  offset_[nc_] = space.local_size();
}

void SpaceTables::values(const double* local, double* vals) const
{
  double work[kWork];
  const int np = num_points();
  for (int c = 0; c < nc_; ++c) {
    const double* t[3] = {table(c, 0).val.data(), table(c, 1).val.data(), table(c, 2).val.data()};
    tensor_contract(local + offset_[c], shape_[c].data(), t, nq_.data(), vals + c * np, work);
  }
}

void SpaceTables::gradients(const double* local, double* grads) const
{
  double work[kWork];
  const int np = num_points();
  for (int c = 0; c < nc_; ++c)
    for (int j = 0; j < 3; ++j) {
      const double* t[3];
      for (int a = 0; a < 3; ++a) t[a] = a == j ? table(c, a).der.data() : table(c, a).val.data();
      tensor_contract(local + offset_[c], shape_[c].data(), t, nq_.data(), grads + (c * 3 + j) * np, work);
    }
}

void SpaceTables::integrate(const double* a, const double* b, double* local) const
{
  double work[kWork];
  const int np = num_points();
  for (int c = 0; c < nc_; ++c) {
    if (a) {
      const double* t[3] = {table(c, 0).val.data(), table(c, 1).val.data(), table(c, 2).val.data()};
      tensor_contract_adjoint(a + c * np, shape_[c].data(), t, nq_.data(), local + offset_[c], work);
    }
    if (b)
      for (int j = 0; j < 3; ++j) {
        const double* t[3];
        for (int ax = 0; ax < 3; ++ax) t[ax] = ax == j ? table(c, ax).der.data() : table(c, ax).val.data();
        tensor_contract_adjoint(b + (c * 3 + j) * np, shape_[c].data(), t, nq_.data(), local + offset_[c], work);
      }
  }
}

}  // namespace cfemhd

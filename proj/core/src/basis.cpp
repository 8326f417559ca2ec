// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/basis.hpp"

#include <stdexcept>

#include "cfemhd/quadrature.hpp"

namespace cfemhd {

LagrangeBasis1D::LagrangeBasis1D(std::vector<double> nodes) : nodes_(std::move(nodes)), denom_(nodes_.size(), 1.0)
{
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (j != i) denom_[i] *= nodes_[i] - nodes_[j];
}

double LagrangeBasis1D::value(int i, double x) const
{
  double p = 1.0;
  for (int j = 0; j < size(); ++j)
    if (j != i) p *= x - nodes_[j];
  return p / denom_[i];
}

double LagrangeBasis1D::derivative(int i, double x) const
{
  double s = 0.0;
  for (int m = 0; m < size(); ++m) {
    if (m == i) continue;
    double p = 1.0;
    for (int j = 0; j < size(); ++j)
      if (j != i && j != m) p *= x - nodes_[j];
    s += p;
  }
  return s / denom_[i];
}

LagrangeBasis1D continuous_basis(int k)
{
  switch (k) {
    case 1: return LagrangeBasis1D({0.0, 1.0});
    case 2: return LagrangeBasis1D({0.0, 0.5, 1.0});
    default: throw std::invalid_argument("continuous_basis: degree must be 1 or 2");
  }
}

LagrangeBasis1D discontinuous_basis(int k)
{
  if (k < 1 || k > 2) throw std::invalid_argument("discontinuous_basis: degree must be 1 or 2");
  std::vector<double> p, w;
  gauss_legendre(k, p, w);
  return LagrangeBasis1D(p);
}

}  // namespace cfemhd

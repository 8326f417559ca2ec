// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace cfemhd {

// Lagrange polynomials on [0, 1] through the given nodes.
class LagrangeBasis1D {
 public:
  LagrangeBasis1D() = default;
  explicit LagrangeBasis1D(std::vector<double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  double value(int i, double x) const;
  double derivative(int i, double x) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> denom_;
};

// 1D factor types of the tensor-product complex: the continuous factor of
// degree k at Gauss–Lobatto nodes and the discontinuous factor of degree k-1
// at Gauss–Legendre nodes.
enum class Factor { Continuous = 0, Discontinuous = 1 };

LagrangeBasis1D continuous_basis(int k);
LagrangeBasis1D discontinuous_basis(int k);

}  // namespace cfemhd

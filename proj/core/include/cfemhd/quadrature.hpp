// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cfemhd/vec3.hpp"

namespace cfemhd {

// Gauss–Legendre points and weights on [0, 1].
void gauss_legendre(int q, std::vector<double>& points, std::vector<double>& weights);

// Tensor Gauss–Legendre rule on the reference cell and facet. 3D points are
// ordered with the x index fastest; facet points with the first transverse
// axis fastest.
struct QuadratureRule {
  int q = 0;
  std::vector<double> points1d;
  std::vector<double> weights1d;
  std::vector<Vec3> points;
  std::vector<double> weights;
  std::vector<double> facet_weights;

  int num_points() const { return static_cast<int>(weights.size()); }
  int num_facet_points() const { return static_cast<int>(facet_weights.size()); }
};

QuadratureRule quadrature_rule(int q);

}  // namespace cfemhd

// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfemhd {

void gauss_legendre(int q, std::vector<double>& points, std::vector<double>& weights)
{
  if (q < 1) throw std::invalid_argument("gauss_legendre: q must be at least 1");
  points.assign(q, 0.0);
  weights.assign(q, 0.0);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= q; ++n) {
        const double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      if (q == 1) p0 = 1.0;
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= q; ++n) {
        const double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root on [-1, 1]
    points[q - 1 - i] = 0.5 * (1.0 + x);
    points[i] = 0.5 * (1.0 - x);
    weights[q - 1 - i] = 0.5 * w;
    weights[i] = 0.5 * w;
  }
  if (q % 2 == 1) points[q / 2] = 0.5;
}

QuadratureRule quadrature_rule(int q)
{
  if (q < 1) throw std::invalid_argument("quadrature_rule: q must be at least 1");
  QuadratureRule r;
  r.q = q;
  gauss_legendre(q, r.points1d, r.weights1d);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < q; ++i) {
        r.points.push_back({r.points1d[i], r.points1d[j], r.points1d[k]});
        r.weights.push_back(r.weights1d[i] * r.weights1d[j] * r.weights1d[k]);
      }
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < q; ++i) r.facet_weights.push_back(r.weights1d[i] * r.weights1d[j]);
  return r;
}

}  // namespace cfemhd

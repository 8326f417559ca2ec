// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <random>

#include "cfemhd/mhd.hpp"

namespace cfemhd::testing {

// Smooth periodic function: c0 + sum of a few random Fourier modes.
class RandomSmooth {
 public:
  RandomSmooth(std::mt19937& rng, std::array<double, 3> extents, double c0, double amp) : c0_(c0), L_(extents)
  {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> k(0, 2);
    for (auto& m : modes_) {
      m.a = amp * u(rng);
      for (int i = 0; i < 3; ++i) m.k[i] = k(rng);
      m.phase = 3.0 * u(rng);
    }
  }
  double operator()(const Vec3& x) const
  {
    double s = c0_;
    for (const auto& m : modes_) {
      double arg = m.phase;
      for (int i = 0; i < 3; ++i) arg += 2.0 * M_PI * m.k[i] * x[i] / L_[i];
      s += m.a * std::sin(arg);
    }
    return s;
  }

 private:
  struct Mode {
    double a;
    int k[3];
    double phase;
  };
  double c0_;
  std::array<double, 3> L_;
  Mode modes_[4];
};

// |B| is of order b_scale (the vortex has |B| ~ mu0 = 0.1).
// Div forms: B = curl A, plus a uniform B_z when background is set (then B
// is no longer the curl of A).
inline State random_state(const Discretization& d, const Formulation& f, unsigned seed, double b_scale = 0.1,
                          bool background = true)
{
  std::mt19937 rng(seed);
  const auto L = d.mesh().extents();
  RandomSmooth n(rng, L, 1.0, 0.1), vx(rng, L, 0.1, 0.3), vy(rng, L, -0.1, 0.3), vz(rng, L, 0.0, 0.3),
      th(rng, L, 2.0, 0.3), ax(rng, L, 0.0, 0.1 * b_scale), ay(rng, L, 0.0, 0.1 * b_scale),
      az(rng, L, 0.0, 0.1 * b_scale), c(rng, L, 0.0, 0.5 * b_scale);
  State s;
  s.n = interpolate(d.space(3), ScalarFunction(n));
  s.V = interpolate(d.space(2), VectorFunction([&](const Vec3& x) { return Vec3{vx(x), vy(x), vz(x)}; }));
  s.thermal = interpolate(d.space(thermal_space(f)), ScalarFunction(th));
  auto avec = [&](const Vec3& x) { return Vec3{ax(x), ay(x), az(x)}; };
  s.A = interpolate(d.space(potential_space(f)), VectorFunction(avec));
  if (f.div_form()) {
    // curl A plus a uniform B_z so that |B| stays away from zero
    s.B = Field(d.space(2), d.curl() * s.A.coefficients());
    if (background)
      for (int i = 2 * d.space(2)->component_size(); i < d.space(2)->size(); ++i) s.B[i] += 2.0 * b_scale;
  } else {
    s.B = interpolate(d.space(1), VectorFunction([&](const Vec3& x) {
                        return Vec3{c(x), 10.0 * ay(x), 2.0 * b_scale + 10.0 * az(x)};
                      }));
  }
  return s;
}

}  // namespace cfemhd::testing

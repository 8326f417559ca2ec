// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "cfemhd/mhd.hpp"

namespace cfemhd {

struct VortexParams {
  double x_c = 5.0;
  double y_c = 5.0;
  double V_b = 0.0;
  double n0 = 0.5;
  double V0 = 0.5;
  double p0 = 3.0;
  double mu0 = 0.1;
  double m_i = 1.0;
  std::array<double, 3> extents{10.0, 10.0, 2.0};
};

// (2/pi - 1/2) / 3
double vortex_kappa();

struct VortexProfiles {
  double f_theta1 = 0.0;
  double f_theta2 = 0.0;
  double f_theta3 = 0.0;
  double f_z1 = 0.0;
  double f_z2 = 0.0;
  double f_z2_over_r2 = 0.0;  // finite at r = 0
};

VortexProfiles vortex_profiles(double r);

// Pointwise fields of the vortex centred at (x_c + V_b t mod L_x, y_c).
class VortexBundle {
 public:
  VortexBundle(VortexParams params, double t);

  double n(const Vec3& x) const;
  Vec3 V(const Vec3& x) const;
  double p(const Vec3& x) const;
  double T(const Vec3& x) const;
  Vec3 B(const Vec3& x) const;
  Vec3 A(const Vec3& x) const;

  const VortexParams& params() const { return p_; }

 private:
  // Minimum-image offset from the centre in the xy-plane.
  void offset(const Vec3& x, double& dx, double& dy) const;

  VortexParams p_;
  double xc_;
};

// n, V and the thermal field interpolated; A interpolated into the
// electric-field space. Div forms take B = curl A; the curl form takes the S1
// interpolant of B with its weak divergence removed by a discrete Helmholtz
// correction.
State initialize_vortex(const Discretization& d, const Formulation& f, const VortexParams& params);

// Removes the weak divergence of an S1 field: B - grad phi with
// <grad chi, grad phi> = <grad chi, B>.
std::vector<double> remove_weak_divergence(const Discretization& d, const std::vector<double>& b);

}  // namespace cfemhd

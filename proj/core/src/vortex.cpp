// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/vortex.hpp"

#include <cmath>
#include <numbers>

namespace cfemhd {

double vortex_kappa() { return (2.0 / std::numbers::pi - 0.5) / 3.0; }

VortexProfiles vortex_profiles(double r)
{
  const double pi = std::numbers::pi;
  const double k = vortex_kappa();
  VortexProfiles f;
  const double e = std::exp(1.0 - r * r);
  f.f_theta1 = r * e;
  f.f_theta2 = -0.5 * e;
  f.f_theta3 = -0.25 * e * e;

  double g = 0.0;
  if (r < 0.25) {
    g = std::sin(2.0 * pi * r);
    const double sr = std::sin(pi * r);
    f.f_z2 = sr * sr / (5.0 * pi);
  } else if (r <= 0.75) {
    g = (1.0 + k) * std::sin(2.0 * pi * r) - k;
    f.f_z2 = (1.0 / (2.0 * pi) - (1.0 + k) * std::cos(2.0 * pi * r) / (2.0 * pi) - k * (r - 0.25)) / 5.0;
  } else if (r < 1.0) {
    g = (1.0 + 2.0 * k) * (std::cos(4.0 * pi * r) - 1.0) / 2.0;
    const double z34 = (1.0 / (2.0 * pi) - 0.5 * k) / 5.0;
    f.f_z2 = z34 + (1.0 + 2.0 * k) * (std::sin(4.0 * pi * r) / (4.0 * pi) - r + 0.75) / 10.0;
  }
  if (r < 1e-6) {
    // sin(2 pi r) / (5 r) and (1 - cos 2 pi r) / (10 pi r^2) to second order
    const double a = 2.0 * pi * r;
    f.f_z1 = 2.0 * pi / 5.0 * (1.0 - a * a / 6.0);
    f.f_z2_over_r2 = pi / 5.0 * (1.0 - a * a / 12.0);
  } else {
    f.f_z1 = g / (5.0 * r);
    f.f_z2_over_r2 = f.f_z2 / (r * r);
  }
  return f;
}

VortexBundle::VortexBundle(VortexParams params, double t) : p_(params)
{
  const double L = p_.extents[0];
  xc_ = std::fmod(p_.x_c + p_.V_b * t, L);
  if (xc_ < 0.0) xc_ += L;
}

void VortexBundle::offset(const Vec3& x, double& dx, double& dy) const
{
  const double lx = p_.extents[0], ly = p_.extents[1];
  dx = x[0] - xc_;
  dy = x[1] - p_.y_c;
  dx -= lx * std::round(dx / lx);
  dy -= ly * std::round(dy / ly);
}

double VortexBundle::n(const Vec3&) const { return p_.n0; }

Vec3 VortexBundle::V(const Vec3& x) const
{
  double dx, dy;
  offset(x, dx, dy);
  const double r = std::hypot(dx, dy);
  // f_theta1 e_theta = e^{1-r^2} (-dy, dx)
  const double s = p_.V0 * std::exp(1.0 - r * r);
  return {-s * dy + p_.V_b, s * dx, 0.0};
}

double VortexBundle::p(const Vec3& x) const
{
  double dx, dy;
  offset(x, dx, dy);
  const auto f = vortex_profiles(std::hypot(dx, dy));
  return p_.p0 - p_.mu0 * (0.5 * f.f_theta1 * f.f_theta1 + f.f_theta3 + 0.5 * f.f_z1 * f.f_z1) +
         p_.m_i * p_.n0 * p_.V0 * p_.V0 * f.f_theta3;
}

double VortexBundle::T(const Vec3& x) const { return p(x) / n(x); }

Vec3 VortexBundle::B(const Vec3& x) const
{
  double dx, dy;
  offset(x, dx, dy);
  const double r = std::hypot(dx, dy);
  const auto f = vortex_profiles(r);
  const double s = p_.mu0 * std::exp(1.0 - r * r);
  return {-s * dy, s * dx, p_.mu0 * f.f_z1};
}

Vec3 VortexBundle::A(const Vec3& x) const
{
  double dx, dy;
  offset(x, dx, dy);
  const auto f = vortex_profiles(std::hypot(dx, dy));
  // (f_z2 / r) e_theta = (f_z2 / r^2) (-dy, dx)
  const double s = p_.mu0 * f.f_z2_over_r2;
  return {-s * dy, s * dx, -p_.mu0 * f.f_theta2};
}

std::vector<double> remove_weak_divergence(const Discretization& d, const std::vector<double>& b)
{
  const SparseMatrix& g = d.grad();
  const SparseMatrix gt = g.transpose();
  const SparseMatrix& m1 = d.mass(1).matrix();
  const auto rhs = gt * (m1 * b);
  std::vector<double> tmp(g.rows()), tmp2(g.rows());
  auto lap = [&](std::span<const double> x, std::span<double> y) {
    g.multiply(x, tmp);
    m1.multiply(tmp, tmp2);
    gt.multiply(tmp2, y);
  };
  auto ident = [](std::span<const double> x, std::span<double> y) { std::copy(x.begin(), x.end(), y.begin()); };
  std::vector<double> phi(gt.rows(), 0.0);
  if (norm2(rhs) > 0.0) cg(lap, ident, rhs, phi, 1e-13, 20 * static_cast<int>(phi.size()));
  std::vector<double> out = b;
  g.multiply_add(phi, out, -1.0);
  return out;
}

State initialize_vortex(const Discretization& d, const Formulation& f, const VortexParams& params)
{
  const VortexBundle v(params, 0.0);
  State s;
  s.n = interpolate(d.space(3), ScalarFunction([&](const Vec3& x) { return v.n(x); }));
  s.V = interpolate(d.space(2), VectorFunction([&](const Vec3& x) { return v.V(x); }));
  if (f.thermal == ThermalKind::Temperature)
    s.thermal = interpolate(d.space(0), ScalarFunction([&](const Vec3& x) { return v.T(x); }));
  else
    s.thermal = interpolate(d.space(3), ScalarFunction([&](const Vec3& x) { return v.p(x); }));
  s.A = interpolate(d.space(potential_space(f)), VectorFunction([&](const Vec3& x) { return v.A(x); }));
  if (f.div_form()) {
    s.B = Field(d.space(2), d.curl() * s.A.coefficients());
  } else {
    const Field bi = interpolate(d.space(1), VectorFunction([&](const Vec3& x) { return v.B(x); }));
    s.B = Field(d.space(1), remove_weak_divergence(d, bi.coefficients()));
  }
  s.t = 0.0;
  return s;
}

}  // namespace cfemhd

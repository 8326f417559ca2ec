// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "cfemhd/assembly.hpp"
#include "cfemhd/diagnostics.hpp"
#include "cfemhd/quadrature.hpp"
#include "cfemhd/vortex.hpp"

using namespace cfemhd;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// Composite Gauss quadrature of g over [a, b]; breakpoints of the profiles are
// passed so every panel sees a smooth integrand.
template <class G>
double integrate(G&& g, double a, double b, std::vector<double> breaks = {})
{
  std::vector<double> x, w;
  gauss_legendre(10, x, w);
  breaks.insert(breaks.begin(), a);
  breaks.push_back(b);
  double s = 0.0;
  for (size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = std::max(a, breaks[p]), hi = std::min(b, breaks[p + 1]);
    if (hi <= lo) continue;
    const int panels = 64;
    const double h = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i)
      for (size_t q = 0; q < x.size(); ++q) s += h * w[q] * g(lo + h * (i + x[q]));
  }
  return s;
}

Vec3 fd_curl(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h = 1e-5)
{
  Vec3 g[3];
  for (int a = 0; a < 3; ++a) {
    Vec3 xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    g[a] = (f(xp) - f(xm)) / (2 * h);
  }
  return {g[1][2] - g[2][1], g[2][0] - g[0][2], g[0][1] - g[1][0]};
}

}  // namespace

TEST_CASE("Vortex constant", "[vortex]")
{
  CHECK(vortex_kappa() == Approx((2.0 / pi - 0.5) / 3.0).epsilon(1e-15));
  CHECK(vortex_kappa() == Approx(0.0455399).epsilon(1e-6));
}

TEST_CASE("Profile values", "[vortex]")
{
  CHECK(vortex_profiles(1.0).f_theta1 == Approx(1.0).epsilon(1e-15));
  for (double r : {1.0, 1.2, 3.0, 10.0}) {
    const auto f = vortex_profiles(r);
    CHECK(f.f_z1 == 0.0);
    CHECK(f.f_z2 == 0.0);
  }
  CHECK(vortex_profiles(0.0).f_z1 == Approx(2.0 * pi / 5.0).epsilon(1e-15));
  CHECK(vortex_profiles(1e-7).f_z1 == Approx(2.0 * pi / 5.0).epsilon(1e-12));
  CHECK(vortex_profiles(0.0).f_z2_over_r2 == Approx(pi / 5.0).epsilon(1e-15));
  // the series branch joins the closed form
  CHECK(vortex_profiles(0.999e-6).f_z2_over_r2 == Approx(vortex_profiles(1.001e-6).f_z2_over_r2).epsilon(1e-9));
}

TEST_CASE("Profiles are continuously differentiable", "[vortex]")
{
  for (double r0 : {0.25, 0.75, 1.0}) {
    const double e = 1e-9;
    const auto lo = vortex_profiles(r0 - e), hi = vortex_profiles(r0 + e);
    CHECK(lo.f_z1 == Approx(hi.f_z1).margin(1e-7));
    CHECK(lo.f_z2 == Approx(hi.f_z2).margin(1e-9));
    const double h = 1e-5;
    const double dlo = (vortex_profiles(r0 - e).f_z1 - vortex_profiles(r0 - e - h).f_z1) / h;
    const double dhi = (vortex_profiles(r0 + e + h).f_z1 - vortex_profiles(r0 + e).f_z1) / h;
    CHECK(dlo == Approx(dhi).margin(1e-3));
  }
}

TEST_CASE("Profile antiderivatives match quadrature", "[vortex]")
{
  auto ft1 = [](double s) { return vortex_profiles(s).f_theta1; };
  auto sfz1 = [](double s) { return s * vortex_profiles(s).f_z1; };
  for (double r = 0.0; r <= 3.0; r += 0.125) {
    const auto f = vortex_profiles(r);
    // decay at infinity fixes the constants
    CHECK(f.f_theta2 == Approx(-integrate(ft1, r, r + 8.0)).margin(1e-12));
    CHECK(f.f_theta3 ==
          Approx(-integrate([&](double s) { return ft1(s) * ft1(s) / s; }, std::max(r, 1e-300), r + 8.0)).margin(1e-12));
    CHECK(f.f_z2 == Approx(integrate(sfz1, 0.0, r, {0.25, 0.75, 1.0})).margin(1e-12));
  }
}

TEST_CASE("Analytic bundle", "[vortex]")
{
  VortexParams p;
  const VortexBundle v(p, 0.0);
  SECTION("far field")
  {
    const Vec3 corner{0.0, 0.0, 1.0};
    CHECK(v.p(corner) == Approx(p.p0).margin(1e-9));
    CHECK(norm2(std::vector<double>{v.B(corner)[0], v.B(corner)[1], v.B(corner)[2]}) < 1e-10);
    CHECK(v.V(corner)[0] == Approx(p.V_b).margin(1e-9));
    CHECK(v.T(corner) == Approx(p.p0 / p.n0).margin(1e-8));
  }
  SECTION("centre")
  {
    const Vec3 c{p.x_c, p.y_c, 0.3};
    CHECK(v.B(c)[2] == Approx(p.mu0 * 2.0 * pi / 5.0).epsilon(1e-14));
    CHECK(v.B(c)[2] == Approx(0.1256637).epsilon(1e-6));
    CHECK(v.V(c)[0] == 0.0);
  }
  SECTION("translation wraps around the box")
  {
    VortexParams q = p;
    q.V_b = 0.5;
    const VortexBundle moved(q, 20.0), start(q, 0.0), half(q, 5.0);
    for (const Vec3& x : {Vec3{5.3, 4.9, 0}, Vec3{0.2, 9.9, 1}}) {
      CHECK(moved.B(x)[2] == Approx(start.B(x)[2]).margin(1e-12));
      CHECK(moved.p(x) == Approx(start.p(x)).margin(1e-12));
    }
    CHECK(half.B({7.5, 5.0, 0})[2] == Approx(start.B({5.0, 5.0, 0})[2]).epsilon(1e-14));
    CHECK(half.V({7.5, 5.0, 0})[0] == Approx(0.5).epsilon(1e-14));
    // minimum image across the periodic seam
    VortexParams e = p;
    e.x_c = 9.8;
    const VortexBundle edge(e, 0.0);
    CHECK(edge.B({0.1, 5.2, 0})[2] == Approx(edge.B({9.5, 5.2, 0})[2]).epsilon(1e-12));
  }
  SECTION("the potential generates the field")
  {
    for (const Vec3& x : {Vec3{5.3, 4.9, 0.1}, Vec3{5.05, 5.6, 1.0}, Vec3{4.2, 5.5, 0.5}, Vec3{6.0, 6.0, 1.5}}) {
      const Vec3 c = fd_curl([&](const Vec3& y) { return v.A(y); }, x);
      const Vec3 b = v.B(x);
      for (int a = 0; a < 3; ++a) CHECK(c[a] == Approx(b[a]).margin(1e-9));
    }
  }
  SECTION("steady force balance")
  {
    // m_i n (V.grad)V = -grad p + curl(B) x B / mu0
    for (const Vec3& x : {Vec3{5.3, 4.9, 0.1}, Vec3{5.05, 5.6, 1.0}, Vec3{4.2, 5.5, 0.5}, Vec3{6.5, 5.2, 1.5}}) {
      const double h = 1e-5;
      Vec3 gp{}, adv{};
      const Vec3 V = v.V(x);
      for (int a = 0; a < 3; ++a) {
        Vec3 xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        gp[a] = (v.p(xp) - v.p(xm)) / (2 * h);
        adv = adv + V[a] * (v.V(xp) - v.V(xm)) / (2 * h);
      }
      const Vec3 lorentz = cross(fd_curl([&](const Vec3& y) { return v.B(y); }, x), v.B(x)) / p.mu0;
      const Vec3 res = p.m_i * v.n(x) * adv + gp - lorentz;
      for (int a = 0; a < 3; ++a) CHECK(std::abs(res[a]) < 1e-7);
    }
  }
}

TEST_CASE("Vortex initialization", "[vortex]")
{
  VortexParams p;
  Discretization d(p.extents, {20, 20, 4}, 2);
  const VortexBundle v(p, 0.0);
  const VectorFunction ref = [&](const Vec3& x) { return v.B(x); };
  for (auto m : {MagneticKind::Div, MagneticKind::DivHelicity, MagneticKind::Curl}) {
    Formulation f;
    f.magnetic = m;
    const State s = initialize_vortex(d, f, p);
    const auto r = divergence_report(d, s, f);
    const double bn = b_norm(d, s, f);
    const double e = relative_b_error(d, s, f, ref);
    CHECK(r.weak < 1e-10 * bn);
    if (f.div_form()) {
      CHECK(r.strong <= 1e-14 * bn);
      CHECK(r.normal_jump <= 1e-14 * bn);
      // S2 cannot do better than its L2 best approximation, which is itself
      // above 5% on this mesh
      const auto target = PointwiseEvaluator([&](int cell, double* vals) {
        const int nq = d.num_cell_points();
        for (int q = 0; q < nq; ++q) {
          const Vec3 b = v.B(d.cell(2).point(cell, q));
          for (int c = 0; c < 3; ++c) vals[c * nq + q] = b[c];
        }
      });
      State best = s;
      best.B = l2_project(d.cell(2), d.mass(2), target);
      const double eb = relative_b_error(d, best, f, ref);
      CHECK(e < 1.05 * eb);
      CHECK(e < 0.06);
    } else {
      CHECK(e < 0.05);
    }
  }
}

TEST_CASE("Initial field error converges at second order", "[vortex]")
{
  VortexParams p;
  const VortexBundle v(p, 0.0);
  const VectorFunction ref = [&](const Vec3& x) { return v.B(x); };
  for (auto m : {MagneticKind::Div, MagneticKind::Curl}) {
    Formulation f;
    f.magnetic = m;
    double e[2];
    for (int i = 0; i < 2; ++i) {
      const int n = 20 << i;
      Discretization d(p.extents, {n, n, 1}, 2);
      e[i] = relative_b_error(d, initialize_vortex(d, f, p), f, ref);
    }
    CHECK(std::log2(e[0] / e[1]) > 1.5);
  }
}

TEST_CASE("Initial energies converge to the analytic integrals", "[vortex]")
{
  VortexParams p;
  const VortexBundle v(p, 0.0);
  Formulation f;
  const double gm1 = f.gamma - 1.0;
  double err[2];
  for (int i = 0; i < 2; ++i) {
    const int n = 10 << i;
    Discretization d(p.extents, {n, n, 1}, 2);
    const auto e = energies(d, initialize_vortex(d, f, p), f);
    // analytic integrals with a finer rule on the same cells
    Discretization fine(p.extents, {4 * n, 4 * n, 1}, 2);
    double ke = 0.0, ie = 0.0, me = 0.0;
    for (int cell = 0; cell < fine.mesh().num_cells(); ++cell)
      for (int q = 0; q < fine.num_cell_points(); ++q) {
        const Vec3 x = fine.cell(0).point(cell, q);
        const double w = fine.cell(0).weights()[q];
        const Vec3 V = v.V(x), B = v.B(x);
        ke += w * 0.5 * p.m_i * v.n(x) * dot(V, V);
        ie += w * v.n(x) * v.T(x) / gm1;
        me += w * dot(B, B) / (2 * p.mu0);
      }
    err[i] = std::abs(e.KE - ke) / ke + std::abs(e.IE - ie) / ie + std::abs(e.ME - me) / me;
  }
  CHECK(err[0] < 0.1);
  CHECK(err[1] < err[0] / 3.0);
}

TEST_CASE("Fresh vortex is nearly steady", "[vortex]")
{
  VortexParams p;
  Formulation f;
  double rate[2];
  for (int i = 0; i < 2; ++i) {
    const int n = 10 << i;
    Discretization d(p.extents, {n, n, 2}, 2);
    const auto r = evaluate_rates(d, initialize_vortex(d, f, p), f);
    rate[i] = norm_inf(r.B);
  }
  CHECK(rate[1] < rate[0] / 2.0);
}

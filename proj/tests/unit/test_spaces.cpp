// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "cfemhd/assembly.hpp"
#include "cfemhd/mhd.hpp"
#include "cfemhd/vortex.hpp"

using namespace cfemhd;
using Catch::Approx;

namespace {

std::shared_ptr<const Mesh> box(std::array<double, 3> L, std::array<int, 3> n)
{
  return std::make_shared<const Mesh>(L, n);
}

std::vector<double> random_vector(int n, unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("Space sizes", "[spaces]")
{
  auto m2 = box({2, 2, 2}, {2, 2, 2});
  CHECK(Space(m2, Family::H1, 1).size() == 8);
  CHECK(Space(m2, Family::Hcurl, 1).size() == 24);
  CHECK(Space(m2, Family::Hdiv, 1).size() == 24);
  CHECK(Space(m2, Family::L2, 1).size() == 8);
  CHECK(Space(box({10, 10, 2}, {20, 20, 4}), Family::Hdiv, 2).size() == 38400);
  CHECK_THROWS_AS(Space(m2, Family::H1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Space(m2, Family::H1, 0), std::invalid_argument);

  // local dof counts: k^a (k+1)^b
  const Space s(m2, Family::Hcurl, 2);
  CHECK(s.local_shape(0) == std::array<int, 3>{2, 3, 3});
  CHECK(s.local_shape(1) == std::array<int, 3>{3, 2, 3});
  CHECK(s.local_size() == 3 * 18);
}

TEST_CASE("Cell dofs of neighbours share the interface", "[spaces]")
{
  auto m = box({1, 1, 1}, {3, 2, 2});
  const Space s(m, Family::H1, 2);
  // x-neighbours share the 9 dofs on the common face
  const auto a = s.cell_dofs(m->index(0, 0, 0));
  const auto b = s.cell_dofs(m->index(1, 0, 0));
  int shared = 0;
  for (int i : a)
    for (int j : b) shared += i == j;
  CHECK(shared == 9);
  const Space l2(m, Family::L2, 2);
  const auto c = l2.cell_dofs(0), e = l2.cell_dofs(1);
  for (int i : c)
    for (int j : e) CHECK(i != j);
}

TEST_CASE("Complex exactness", "[spaces]")
{
  for (int k : {1, 2})
    for (auto cells : {std::array<int, 3>{4, 4, 2}, {1, 1, 1}, {3, 2, 5}}) {
      Discretization d({1.0, 2.0, 0.5}, cells, k);
      CHECK(multiply(d.curl(), d.grad()).max_abs() == 0.0);
      CHECK(multiply(d.div(), d.curl()).max_abs() == 0.0);
      const auto c0 = random_vector(d.space(0)->size(), 1);
      const auto c1 = random_vector(d.space(1)->size(), 2);
      // applied in sequence the two factors round differently
      const auto g = d.grad() * c0;
      const auto c = d.curl() * c1;
      CHECK(norm_inf(d.curl() * g) <= 1e-14 * norm_inf(g) / d.mesh().min_spacing());
      CHECK(norm_inf(d.div() * c) <= 1e-14 * norm_inf(c) / d.mesh().min_spacing());
    }
}

TEST_CASE("Derivative operators reject mismatched spaces", "[spaces]")
{
  auto m = box({1, 1, 1}, {2, 2, 2});
  const Space h1(m, Family::H1, 1), hdiv(m, Family::Hdiv, 1), l2b(m, Family::L2, 2);
  CHECK_THROWS_AS(derivative_operator(h1, hdiv), std::invalid_argument);
  CHECK_THROWS_AS(derivative_operator(Space(m, Family::Hdiv, 1), l2b), std::invalid_argument);
}

TEST_CASE("Constants are reproduced", "[spaces]")
{
  auto m = box({1, 2, 3}, {2, 3, 2});
  const std::vector<Vec3> pts{{0.1, 0.2, 0.3}, {0.9, 0.5, 0.0}, {1.0, 1.0, 1.0}};
  for (int k : {1, 2}) {
    const auto h1 = build_space(m, Family::H1, k);
    const Field one = interpolate(h1, ScalarFunction([](const Vec3&) { return 1.0; }));
    for (double c : one.coefficients()) CHECK(c == 1.0);
    for (auto fam : {Family::Hcurl, Family::Hdiv}) {
      const Field z = interpolate(build_space(m, fam, k), VectorFunction([](const Vec3&) { return Vec3{0, 0, 1}; }));
      for (int cell = 0; cell < m->num_cells(); ++cell) {
        const auto pv = evaluate(z, cell, pts);
        for (const auto& v : pv.value) {
          CHECK(v[0] == Approx(0.0).margin(1e-15));
          CHECK(v[1] == Approx(0.0).margin(1e-15));
          CHECK(v[2] == Approx(1.0).epsilon(1e-15));
        }
      }
    }
  }
}

TEST_CASE("Gradient of an interpolated sine converges at second order", "[spaces]")
{
  const double L = 2.0;
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const int n = 8 << r;
    Discretization d({L, 1, 1}, {n, 1, 1}, 2);
    const Field u = interpolate(d.space(0), ScalarFunction([&](const Vec3& x) { return std::sin(2 * M_PI * x[0] / L); }));
    const Field g(d.space(1), d.grad() * u.coefficients());
    double e = 0.0;
    const auto& rule = d.rule();
    for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
      const auto pv = evaluate(g, cell, rule.points);
      const auto gu = evaluate(u, cell, rule.points);
      for (int q = 0; q < rule.num_points(); ++q) {
        const double x = d.cell(1).point(cell, q)[0];
        const double exact = 2 * M_PI / L * std::cos(2 * M_PI * x / L);
        e = std::max(e, std::abs(pv.value[q][0] - exact));
        // the S1 gradient equals the broken gradient of the S0 field
        CHECK(gu.gradient[q][0] == Approx(pv.value[q][0]).margin(1e-12));
        CHECK(std::abs(pv.value[q][1]) < 1e-15);
      }
    }
    err[r] = e;
  }
  CHECK(std::log2(err[0] / err[1]) > 1.8);
}

TEST_CASE("Curl of the interpolated vortex potential approximates B", "[spaces]")
{
  VortexParams p;
  const VortexBundle v(p, 0.0);
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const int n = 10 << r;
    Discretization d(p.extents, {n, n, 2}, 2);
    const Field a = interpolate(d.space(1), VectorFunction([&](const Vec3& x) { return v.A(x); }));
    const Field b(d.space(2), d.curl() * a.coefficients());
    double e2 = 0.0, r2 = 0.0;
    const auto& w = d.cell(2).weights();
    double vals[3 * 64];
    for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
      d.cell(2).values(b, cell, vals);
      const int nq = d.num_cell_points();
      for (int q = 0; q < nq; ++q) {
        const Vec3 ex = v.B(d.cell(2).point(cell, q));
        for (int c = 0; c < 3; ++c) {
          e2 += w[q] * std::pow(vals[c * nq + q] - ex[c], 2);
          r2 += w[q] * ex[c] * ex[c];
        }
      }
    }
    err[r] = std::sqrt(e2 / r2);
  }
  CHECK(err[1] < err[0]);
  CHECK(std::log2(err[0] / err[1]) > 1.5);
}

TEST_CASE("Trace conformity across facets", "[spaces]")
{
  auto m = box({1, 1.5, 2}, {3, 2, 2});
  const std::vector<std::pair<double, double>> tr{{0.2, 0.7}, {0.5, 0.5}, {0.95, 0.05}};
  for (int k : {1, 2})
    for (auto fam : {Family::H1, Family::Hcurl, Family::Hdiv}) {
      const auto s = build_space(m, fam, k);
      const Field f(s, random_vector(s->size(), 7 + k));
      for (const auto& fr : m->facets()) {
        std::vector<Vec3> pp, pm;
        for (auto [u, v] : tr) {
          Vec3 a{}, b{};
          a[fr.axis] = 1.0;
          b[fr.axis] = 0.0;
          a[(fr.axis + 1) % 3] = b[(fr.axis + 1) % 3] = u;
          a[(fr.axis + 2) % 3] = b[(fr.axis + 2) % 3] = v;
          pp.push_back(a);
          pm.push_back(b);
        }
        const auto vp = evaluate(f, fr.plus_cell, pp), vm = evaluate(f, fr.minus_cell, pm);
        for (size_t q = 0; q < tr.size(); ++q) {
          const Vec3 jump = vp.value[q] - vm.value[q];
          if (fam == Family::H1) {
            CHECK(std::abs(jump[0]) < 1e-12);
          } else if (fam == Family::Hdiv) {
            CHECK(std::abs(jump[fr.axis]) < 1e-12);
          } else {
            CHECK(std::abs(jump[(fr.axis + 1) % 3]) < 1e-12);
            CHECK(std::abs(jump[(fr.axis + 2) % 3]) < 1e-12);
          }
        }
      }
    }
}

TEST_CASE("Normal components of Hcurl fields may jump", "[spaces]")
{
  auto m = box({1, 1, 1}, {2, 2, 2});
  const auto s = build_space(m, Family::Hcurl, 1);
  const Field f(s, random_vector(s->size(), 99));
  double max_jump = 0.0;
  for (const auto& fr : m->facets()) {
    Vec3 a{0.5, 0.5, 0.5}, b{0.5, 0.5, 0.5};
    a[fr.axis] = 1.0;
    b[fr.axis] = 0.0;
    const auto vp = evaluate(f, fr.plus_cell, std::vector<Vec3>{a});
    const auto vm = evaluate(f, fr.minus_cell, std::vector<Vec3>{b});
    max_jump = std::max(max_jump, std::abs(vp.value[0][fr.axis] - vm.value[0][fr.axis]));
  }
  CHECK(max_jump > 1e-3);
}

TEST_CASE("Evaluated derivatives agree with the derivative operators", "[spaces]")
{
  Discretization d({1, 2, 1}, {2, 2, 2}, 2);
  const Field a(d.space(1), random_vector(d.space(1)->size(), 3));
  const Field b(d.space(2), d.curl() * a.coefficients());
  const Field div(d.space(3), d.div() * random_vector(d.space(2)->size(), 4));
  const Field bb(d.space(2), random_vector(d.space(2)->size(), 4));
  const auto& pts = d.rule().points;
  for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
    const auto pa = evaluate(a, cell, pts), pb = evaluate(b, cell, pts);
    const auto pdiv = evaluate(div, cell, pts), pbb = evaluate(bb, cell, pts);
    for (size_t q = 0; q < pts.size(); ++q) {
      for (int c = 0; c < 3; ++c) CHECK(pa.curl[q][c] == Approx(pb.value[q][c]).margin(1e-11));
      CHECK(pbb.divergence[q] == Approx(pdiv.value[q][0]).margin(1e-11));
    }
  }
}

TEST_CASE("L2 projection", "[spaces]")
{
  Discretization d({1, 1, 1}, {2, 2, 2}, 2);
  const int nq = d.num_cell_points();

  SECTION("members of the space are fixed points")
  {
    for (int k : {0, 1, 2, 3}) {
      const Field u(d.space(k), random_vector(d.space(k)->size(), 20 + k));
      const Field p = l2_project(d.cell(k), d.mass(k), [&](int cell, double* v) { d.cell(k).values(u, cell, v); });
      const double scale = norm_inf(u.coefficients());
      for (int i = 0; i < u.size(); ++i) CHECK(std::abs(p[i] - u[i]) < 1e-12 * scale);
    }
  }

  SECTION("constant weights pull out")
  {
    const Field V(d.space(2), random_vector(d.space(2)->size(), 31));
    const double n0 = 0.5;
    const Field n = interpolate(d.space(3), ScalarFunction([&](const Vec3&) { return n0; }));
    double nv[64];
    const Field F = l2_project(d.cell(2), d.mass(2), [&](int cell, double* v) {
      d.cell(2).values(V, cell, v);
      d.cell(3).values(n, cell, nv);
      for (int c = 0; c < 3; ++c)
        for (int q = 0; q < nq; ++q) v[c * nq + q] *= nv[q];
    });
    for (int i = 0; i < F.size(); ++i) CHECK(F[i] == Approx(n0 * V[i]).margin(1e-12));
  }

  SECTION("weighted projection matches dense normal equations")
  {
    const auto& s = d.space(2);
    const Field w = interpolate(d.space(3), ScalarFunction([](const Vec3& x) { return 1.0 + 0.5 * std::sin(6 * x[0]) * x[1]; }));
    auto target = [&](const Vec3& x) { return Vec3{std::cos(3 * x[1]), x[0] * x[2], std::exp(x[0] - x[1])}; };
    const Field u = l2_project(
        d.cell(2), d.mass(2),
        [&](int cell, double* v) {
          for (int q = 0; q < nq; ++q) {
            const Vec3 t = target(d.cell(2).point(cell, q));
            for (int c = 0; c < 3; ++c) v[c * nq + q] = t[c];
          }
        },
        &w);
    // oracle: basis values from evaluate() of unit coefficient vectors
    const int n = s->size();
    const int ncell = d.mesh().num_cells();
    const auto& rule = d.rule();
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(ncell * nq * 3, n);
    Eigen::VectorXd wt(ncell * nq * 3), t(ncell * nq * 3);
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(n, 0.0);
      e[i] = 1.0;
      const Field ei(s, e);
      for (int cell = 0; cell < ncell; ++cell) {
        const auto pv = evaluate(ei, cell, rule.points);
        for (int q = 0; q < nq; ++q)
          for (int c = 0; c < 3; ++c) phi((cell * nq + q) * 3 + c, i) = pv.value[q][c];
      }
    }
    for (int cell = 0; cell < ncell; ++cell) {
      const auto pw = evaluate(w, cell, rule.points);
      for (int q = 0; q < nq; ++q) {
        const Vec3 x = d.cell(2).point(cell, q);
        const Vec3 tx = target(x);
        for (int c = 0; c < 3; ++c) {
          wt[(cell * nq + q) * 3 + c] = rule.weights[q] * d.mesh().cell_volume() * pw.value[q][0];
          t[(cell * nq + q) * 3 + c] = tx[c];
        }
      }
    }
    const Eigen::MatrixXd lhs = phi.transpose() * wt.asDiagonal() * phi;
    const Eigen::VectorXd rhs = phi.transpose() * wt.asDiagonal() * t;
    const Eigen::VectorXd ref = lhs.ldlt().solve(rhs);
    for (int i = 0; i < n; ++i) CHECK(u[i] == Approx(ref[i]).margin(1e-10));
  }

  SECTION("nonpositive weights are rejected")
  {
    const Field w = interpolate(d.space(3), ScalarFunction([](const Vec3& x) { return x[0] - 0.5; }));
    CHECK_THROWS_AS(l2_project(d.cell(3), d.mass(3), [&](int, double* v) { std::fill(v, v + nq, 1.0); }, &w),
                    DegenerateWeightError);
  }
}

// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/mhd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mhd_internal.hpp"

namespace cfemhd {

using detail::add_curl_test;
using detail::grad_at;
using detail::kMaxQ;
using detail::take_plus;
using detail::vec_add;
using detail::vec_at;

Discretization::Discretization(std::array<double, 3> extents, std::array<int, 3> cells, int degree,
                               SolverOptions options)
    : mesh_(std::make_shared<const Mesh>(extents, cells)), degree_(degree), rule_(quadrature_rule(degree + 2))
{
  if (degree < 1 || degree > 2) throw std::invalid_argument("Discretization: degree must be 1 or 2");
  const Family fam[4] = {Family::H1, Family::Hcurl, Family::Hdiv, Family::L2};
  for (int k = 0; k < 4; ++k) {
    spaces_[k] = build_space(mesh_, fam[k], degree);
    cell_[k] = std::make_unique<CellBasis>(spaces_[k], rule_);
    face_[k] = std::make_unique<FaceBasis>(spaces_[k], rule_);
    mass_[k] = std::make_unique<MassSolver>(*cell_[k], options);
  }
  grad_ = derivative_operator(*spaces_[0], *spaces_[1]).matrix;
  curl_ = derivative_operator(*spaces_[1], *spaces_[2]).matrix;
  div_ = derivative_operator(*spaces_[2], *spaces_[3]).matrix;
  curl_t_ = curl_.transpose();
}

int magnetic_space(const Formulation& f) { return f.div_form() ? 2 : 1; }
int potential_space(const Formulation& f) { return f.div_form() ? 1 : 2; }
int current_space(const Formulation& f) { return f.div_form() ? 1 : 2; }
int thermal_space(const Formulation& f) { return f.thermal == ThermalKind::Temperature ? 0 : 3; }

namespace {

int penalty_field_space(const Formulation& f) { return f.magnetic == MagneticKind::DivHelicity ? 1 : magnetic_space(f); }

// Values of a scalar field at every cell quadrature point, [cell][q].
std::vector<double> point_values(const Discretization& d, int k, const Field& x)
{
  const int nq = d.num_cell_points();
  const int ncell = d.mesh().num_cells();
  std::vector<double> out(static_cast<size_t>(ncell) * nq);
  parallel_for(ncell, [&](int b, int e) {
    for (int c = b; c < e; ++c) d.cell(k).values(x, c, &out[static_cast<size_t>(c) * nq]);
  });
  return out;
}

std::vector<double> scaled(std::vector<double> v, double s)
{
  for (double& x : v) x *= s;
  return v;
}

}  // namespace

State zero_state(const Discretization& d, const Formulation& f)
{
  State s;
  s.n = Field(d.space(3));
  s.V = Field(d.space(2));
  s.thermal = Field(d.space(thermal_space(f)));
  s.B = Field(d.space(magnetic_space(f)));
  s.A = Field(d.space(potential_space(f)));
  return s;
}

void check_density(const Discretization& d, const Field& n)
{
  const auto v = point_values(d, 3, n);
  const int nq = d.num_cell_points();
  for (size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0))
      throw DegenerateDensityError("density " + std::to_string(v[i]) + " at a quadrature point of cell " +
                                   std::to_string(i / nq));
}

double supg_tau(double dt, double h_c, double speed, double lambda)
{
  if (!(dt > 0.0) || !(h_c > 0.0)) throw std::invalid_argument("supg_tau: dt and h_c must be positive");
  const double a = 2.0 * lambda / dt, b = 2.0 * speed / h_c;
#ifdef CFEMHD_TAU_PRINTED_EXPONENT
  return std::sqrt(a * a + b * b);
#else
  return 1.0 / std::sqrt(a * a + b * b);
#endif
}

namespace detail {

void transport_cell(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx,
                    int cell, double* u, double* gu)
{
  const int nq = d.num_cell_points();
  if (f.thermal == ThermalKind::Pressure) {
    if (gu)
      d.cell(2).values_and_gradients(s.V, cell, u, gu);
    else
      d.cell(2).values(s.V, cell, u);
    return;
  }
  double nv[kMaxQ], gn[3 * kMaxQ], fv[3 * kMaxQ], gf[9 * kMaxQ];
  if (gu) {
    d.cell(3).values_and_gradients(s.n, cell, nv, gn);
    d.cell(2).values_and_gradients(ctx.F, cell, fv, gf);
  } else {
    d.cell(3).values(s.n, cell, nv);
    d.cell(2).values(ctx.F, cell, fv);
  }
  for (int q = 0; q < nq; ++q) {
    const double inv = 1.0 / nv[q];
    for (int c = 0; c < 3; ++c) {
      const double uc = fv[c * nq + q] * inv;
      u[c * nq + q] = uc;
      if (gu)
        for (int j = 0; j < 3; ++j) gu[(3 * c + j) * nq + q] = (gf[(3 * c + j) * nq + q] - uc * gn[j * nq + q]) * inv;
    }
  }
}

void transport_field_cell(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx,
                          int cell, const double* u, const double* gu, double* bl)
{
  if (f.stabilization != Stabilization::Supg) {
    d.cell(penalty_field_space(f)).values(ctx.calB, cell, bl);
    return;
  }
  const int nq = d.num_cell_points();
  const int kb = magnetic_space(f);
  double b[3 * kMaxQ], gb[9 * kMaxQ], bd[3 * kMaxQ];
  d.cell(kb).values_and_gradients(s.B, cell, b, gb);
  if (ctx.Bdot_lag.empty())
    std::fill(bd, bd + 3 * nq, 0.0);
  else
    d.cell(kb).values(ctx.Bdot_lag, cell, bd);
  const double hc = d.mesh().min_spacing();
  for (int q = 0; q < nq; ++q) {
    const Vec3 uq = vec_at(u, nq, q), bq = vec_at(b, nq, q);
    const double divu = gu[0 * nq + q] + gu[4 * nq + q] + gu[8 * nq + q];
    const double divb = gb[0 * nq + q] + gb[4 * nq + q] + gb[8 * nq + q];
    const double tau = supg_tau(ctx.dt, hc, norm(uq), f.lambda);
    for (int c = 0; c < 3; ++c) {
      double res = bd[c * nq + q] + bq[c] * divu - uq[c] * divb;
      for (int j = 0; j < 3; ++j) res += uq[j] * gb[(3 * c + j) * nq + q] - bq[j] * gu[(3 * c + j) * nq + q];
      bl[c * nq + q] = bq[c] - tau * res;
    }
  }
}

void penalty_facet(const Discretization& d, const Formulation& f, const ElectricContext& ctx, const FacetRecord& fr,
                   double* pp, double* pm, double* qv)
{
  const int nq = d.num_facet_points();
  const int kj = current_space(f);
  double jp[3 * kMaxQ], jm[3 * kMaxQ], bp[3 * kMaxQ], bm[3 * kMaxQ];
  d.face(kj).values(ctx.j, fr.plus_cell, fr.plus_local_face, jp);
  d.face(kj).values(ctx.j, fr.minus_cell, fr.minus_local_face, jm);
  if (f.stabilization != Stabilization::Eta) {
    const int kb = penalty_field_space(f);
    d.face(kb).values(ctx.calB, fr.plus_cell, fr.plus_local_face, bp);
    d.face(kb).values(ctx.calB, fr.minus_cell, fr.minus_local_face, bm);
  }
  for (int q = 0; q < nq; ++q) {
    const Vec3 Jp = vec_at(jp, nq, q), Jm = vec_at(jm, nq, q);
    Vec3 P, M;
    double Q = 0.0;
    switch (f.stabilization) {
      case Stabilization::Eta: {
        const Vec3 D = Jp - Jm;
        P = D;
        M = -D;
        Q = dot(D, D);
        break;
      }
      case Stabilization::Hm: {
        const Vec3 Bp = vec_at(bp, nq, q), Bm = vec_at(bm, nq, q);
        const Vec3 K = cross(Bp, Jp) - cross(Bm, Jm);
        P = cross(K, Bp);
        M = -cross(K, Bm);
        Q = dot(K, K);
        break;
      }
      case Stabilization::Hm1: {
        const Vec3 Bp = vec_at(bp, nq, q), Bm = vec_at(bm, nq, q);
        const double b2p = dot(Bp, Bp), b2m = dot(Bm, Bm);
        if (!(b2p >= ctx.hm1_eps) || !(b2m >= ctx.hm1_eps) || !(b2p > 0.0) || !(b2m > 0.0))
          throw DegenerateFieldError("|B|^2 below the hm1 guard on facet " + std::to_string(fr.face) + " of axis " +
                                     std::to_string(fr.axis));
        const double sj = dot(Bp, Jp) / b2p - dot(Bm, Jm) / b2m;
        P = (sj / b2p) * Bp;
        M = (-sj / b2m) * Bm;
        Q = sj * sj;
        break;
      }
      default:
        break;
    }
    for (int c = 0; c < 3; ++c) {
      pp[c * nq + q] = P[c];
      pm[c * nq + q] = M[c];
    }
    qv[q] = Q;
  }
}

std::vector<double> electric_moments(const Discretization& d, const State& s, const Formulation& f,
                                     const ElectricContext& ctx)
{
  const int nq = d.num_cell_points();
  const bool supg = f.stabilization == Stabilization::Supg;
  auto r = cell_functional(d.cell(1), false, [&](int cell, double* a, double*) {
    double u[3 * kMaxQ], gu[9 * kMaxQ], bl[3 * kMaxQ];
    transport_cell(d, s, f, ctx, cell, u, supg ? gu : nullptr);
    transport_field_cell(d, s, f, ctx, cell, u, gu, bl);
    for (int q = 0; q < nq; ++q) vec_add(a, nq, q, -cross(vec_at(u, nq, q), vec_at(bl, nq, q)));
  });
  if (f.has_penalty()) {
    const int nf = d.num_facet_points();
    auto rf = facet_functional(d.face(1), false, [&](const FacetRecord& fr, double* ap, double*, double* am, double*) {
      double qv[kMaxQ];
      penalty_facet(d, f, ctx, fr, ap, am, qv);
      const double c = fr.area * fr.area * f.kappa_B;
      for (int i = 0; i < 3 * nf; ++i) {
        ap[i] *= c;
        am[i] *= c;
      }
    });
    axpy(1.0, rf, r);
  }
  return r;
}

std::vector<double> curl_b_moments(const Discretization& d, const State& s, const Formulation& f,
                                   const ElectricContext& ctx)
{
  const int nq = d.num_cell_points();
  const bool supg = f.stabilization == Stabilization::Supg;
  auto r = cell_functional(d.cell(1), true, [&](int cell, double*, double* b) {
    double u[3 * kMaxQ], gu[9 * kMaxQ], bl[3 * kMaxQ];
    transport_cell(d, s, f, ctx, cell, u, supg ? gu : nullptr);
    transport_field_cell(d, s, f, ctx, cell, u, gu, bl);
    for (int q = 0; q < nq; ++q) add_curl_test(b, nq, q, cross(vec_at(u, nq, q), vec_at(bl, nq, q)));
  });
  if (f.has_penalty()) {
    const int nf = d.num_facet_points();
    auto rf = facet_functional(d.face(1), true, [&](const FacetRecord& fr, double*, double* bp, double*, double* bm) {
      double pp[3 * kMaxQ], pm[3 * kMaxQ], qv[kMaxQ];
      penalty_facet(d, f, ctx, fr, pp, pm, qv);
      const double c = fr.area * fr.area * f.kappa_B;
      for (int q = 0; q < nf; ++q) {
        add_curl_test(bp, nf, q, -c * vec_at(pp, nf, q));
        add_curl_test(bm, nf, q, -c * vec_at(pm, nf, q));
      }
    });
    axpy(1.0, rf, r);
  }
  return r;
}

namespace {

// Adds the sub-grid Ohmic heating source to a scalar facet functional.
void add_ohmic(const Discretization& d, const Formulation& f, const ElectricContext& ctx, const FacetRecord& fr,
               double* ap, double* am)
{
  const int nf = d.num_facet_points();
  double pp[3 * kMaxQ], pm[3 * kMaxQ], qv[kMaxQ];
  penalty_facet(d, f, ctx, fr, pp, pm, qv);
  const double c = 0.5 * fr.area * fr.area * f.kappa_B;
  for (int q = 0; q < nf; ++q) {
    ap[q] += c * qv[q];
    am[q] += c * qv[q];
  }
}

HydroMoments temperature_moments(const Discretization& d, const State& s, const Formulation& f,
                                 const ElectricContext& ctx)
{
  HydroMoments m;
  const int nq = d.num_cell_points();
  const int nf = d.num_facet_points();
  const int kj = current_space(f);
  const double mi = f.m_i, gm1 = f.gamma - 1.0;
  const bool ohmic = f.ohmic_heating && f.has_penalty();

  m.n = d.div() * ctx.F.coefficients();
  for (double& v : m.n) v = -v;

  m.V = cell_functional(d.cell(2), true, [&](int cell, double* a, double* b) {
    double u[3 * kMaxQ], gu[9 * kMaxQ], bl[3 * kMaxQ], v[3 * kMaxQ], nv[kMaxQ], gn[3 * kMaxQ], tv[kMaxQ],
        gt[3 * kMaxQ], jv[3 * kMaxQ];
    transport_cell(d, s, f, ctx, cell, u, gu);
    transport_field_cell(d, s, f, ctx, cell, u, gu, bl);
    d.cell(2).values(s.V, cell, v);
    d.cell(3).values_and_gradients(s.n, cell, nv, gn);
    d.cell(0).values_and_gradients(s.thermal, cell, tv, gt);
    d.cell(kj).values(ctx.j, cell, jv);
    for (int q = 0; q < nq; ++q) {
      const Vec3 V = vec_at(v, nq, q), U = vec_at(u, nq, q);
      const double divu = gu[0 * nq + q] + gu[4 * nq + q] + gu[8 * nq + q];
      const double n = nv[q];
      const Vec3 gnt = tv[q] * grad_at(gn, nq, 0, q) + n * grad_at(gt, nq, 0, q);
      const Vec3 lorentz = cross(vec_at(bl, nq, q), vec_at(jv, nq, q));
      for (int c = 0; c < 3; ++c) {
        double ac = V[c] * divu;
        for (int i = 0; i < 3; ++i) ac -= V[i] * gu[(3 * i + c) * nq + q];
        a[c * nq + q] += ac - (lorentz[c] + gnt[c]) / (mi * n);
        for (int j = 0; j < 3; ++j) b[(3 * c + j) * nq + q] += V[c] * U[j];
        b[(3 * c + c) * nq + q] += 0.5 * dot(V, V) - dot(U, V);
      }
    }
  });
  auto mvf = facet_functional(d.face(2), false, [&](const FacetRecord& fr, double* ap, double*, double* am, double*) {
    double np[kMaxQ], nm[kMaxQ], tp[kMaxQ], tm[kMaxQ], fp[3 * kMaxQ], fm[3 * kMaxQ], vp[3 * kMaxQ], vm[3 * kMaxQ];
    d.face(3).values(s.n, fr.plus_cell, fr.plus_local_face, np);
    d.face(3).values(s.n, fr.minus_cell, fr.minus_local_face, nm);
    d.face(0).values(s.thermal, fr.plus_cell, fr.plus_local_face, tp);
    d.face(0).values(s.thermal, fr.minus_cell, fr.minus_local_face, tm);
    d.face(2).values(ctx.F, fr.plus_cell, fr.plus_local_face, fp);
    d.face(2).values(ctx.F, fr.minus_cell, fr.minus_local_face, fm);
    d.face(2).values(s.V, fr.plus_cell, fr.plus_local_face, vp);
    d.face(2).values(s.V, fr.minus_cell, fr.minus_local_face, vm);
    const Vec3 N = fr.normal;
    for (int q = 0; q < nf; ++q) {
      const Vec3 Fp = vec_at(fp, nf, q);
      const Vec3 Up = Fp / np[q], Um = vec_at(fm, nf, q) / nm[q];
      const Vec3 Vt = take_plus(dot(Fp, N), f.upwind) ? vec_at(vp, nf, q) : vec_at(vm, nf, q);
      const double jump = np[q] * tp[q] - nm[q] * tm[q];
      vec_add(ap, nf, q, dot(Up, Vt) * N - dot(N, Up) * Vt + (0.5 * jump / (mi * np[q])) * N);
      vec_add(am, nf, q, -(dot(Um, Vt) * N - dot(N, Um) * Vt) + (0.5 * jump / (mi * nm[q])) * N);
    }
  });
  axpy(1.0, mvf, m.V);

  m.thermal = cell_functional(d.cell(0), true, [&](int cell, double* a, double* b) {
    double u[3 * kMaxQ], fv[3 * kMaxQ], nv[kMaxQ], gn[3 * kMaxQ], tv[kMaxQ], gt[3 * kMaxQ];
    transport_cell(d, s, f, ctx, cell, u, nullptr);
    d.cell(2).values(ctx.F, cell, fv);
    d.cell(3).values_and_gradients(s.n, cell, nv, gn);
    d.cell(0).values_and_gradients(s.thermal, cell, tv, gt);
    for (int q = 0; q < nq; ++q) {
      const Vec3 U = vec_at(u, nq, q), GT = grad_at(gt, nq, 0, q);
      const Vec3 gnt = tv[q] * grad_at(gn, nq, 0, q) + nv[q] * GT;
      a[q] += -dot(vec_at(fv, nq, q), GT) / gm1 + dot(U, gnt);
      for (int j = 0; j < 3; ++j) b[j * nq + q] += nv[q] * tv[q] * U[j];
    }
  });
  auto mtf = facet_functional(d.face(0), true, [&](const FacetRecord& fr, double* ap, double* bp, double* am,
                                                   double* bm) {
    double np[kMaxQ], nm[kMaxQ], tp[kMaxQ], tm[kMaxQ], gtp[3 * kMaxQ], gtm[3 * kMaxQ], fp[3 * kMaxQ], fm[3 * kMaxQ];
    d.face(3).values(s.n, fr.plus_cell, fr.plus_local_face, np);
    d.face(3).values(s.n, fr.minus_cell, fr.minus_local_face, nm);
    d.face(0).values_and_gradients(s.thermal, fr.plus_cell, fr.plus_local_face, tp, gtp);
    d.face(0).values_and_gradients(s.thermal, fr.minus_cell, fr.minus_local_face, tm, gtm);
    d.face(2).values(ctx.F, fr.plus_cell, fr.plus_local_face, fp);
    d.face(2).values(ctx.F, fr.minus_cell, fr.minus_local_face, fm);
    const Vec3 N = fr.normal;
    const double h2 = fr.area * fr.area;
    for (int q = 0; q < nf; ++q) {
      const Vec3 Fp = vec_at(fp, nf, q), Fm = vec_at(fm, nf, q);
      const double avg = 0.5 * dot(Fp / np[q] + Fm / nm[q], N);
      ap[q] -= np[q] * tp[q] * avg;
      am[q] += nm[q] * tm[q] * avg;
      const double c = h2 * f.kappa_T / (gm1 * 0.5 * (np[q] + nm[q]));
      const double S = dot(Fp, grad_at(gtp, nf, 0, q)) - dot(Fm, grad_at(gtm, nf, 0, q));
      for (int j = 0; j < 3; ++j) {
        bp[j * nf + q] -= c * S * Fp[j];
        bm[j * nf + q] += c * S * Fm[j];
      }
    }
    if (ohmic) add_ohmic(d, f, ctx, fr, ap, am);
  });
  axpy(1.0, mtf, m.thermal);
  return m;
}

HydroMoments pressure_moments(const Discretization& d, const State& s, const Formulation& f,
                              const ElectricContext& ctx)
{
  HydroMoments m;
  const int nq = d.num_cell_points();
  const int nf = d.num_facet_points();
  const int kj = current_space(f);
  const double mi = f.m_i, gm1 = f.gamma - 1.0;
  const bool ohmic = f.ohmic_heating && f.has_penalty();

  m.P = l2_project(d.cell(3), d.mass(3), [&](int cell, double* vals) {
    double v[3 * kMaxQ];
    d.cell(2).values(s.V, cell, v);
    for (int q = 0; q < nq; ++q) {
      const Vec3 V = vec_at(v, nq, q);
      vals[q] = 0.5 * mi * dot(V, V);
    }
  });

  m.n = cell_functional(d.cell(3), true, [&](int cell, double*, double* b) {
    double v[3 * kMaxQ], nv[kMaxQ];
    d.cell(2).values(s.V, cell, v);
    d.cell(3).values(s.n, cell, nv);
    for (int c = 0; c < 3; ++c)
      for (int q = 0; q < nq; ++q) b[c * nq + q] += nv[q] * v[c * nq + q];
  });
  auto mnf = facet_functional(d.face(3), false, [&](const FacetRecord& fr, double* ap, double*, double* am, double*) {
    double np[kMaxQ], nm[kMaxQ], vp[3 * kMaxQ], vm[3 * kMaxQ];
    d.face(3).values(s.n, fr.plus_cell, fr.plus_local_face, np);
    d.face(3).values(s.n, fr.minus_cell, fr.minus_local_face, nm);
    d.face(2).values(s.V, fr.plus_cell, fr.plus_local_face, vp);
    d.face(2).values(s.V, fr.minus_cell, fr.minus_local_face, vm);
    const Vec3 N = fr.normal;
    for (int q = 0; q < nf; ++q) {
      const double vnp = dot(vec_at(vp, nf, q), N), vnm = dot(vec_at(vm, nf, q), N);
      const double nt = take_plus(vnp, f.upwind) ? np[q] : nm[q];
      ap[q] -= nt * vnp;
      am[q] += nt * vnm;
    }
  });
  axpy(1.0, mnf, m.n);

  m.V = cell_functional(d.cell(2), true, [&](int cell, double* a, double* b) {
    double v[3 * kMaxQ], gv[9 * kMaxQ], bl[3 * kMaxQ], nv[kMaxQ], gn[3 * kMaxQ], pv[kMaxQ], gp[3 * kMaxQ],
        prv[kMaxQ], jv[3 * kMaxQ];
    d.cell(2).values_and_gradients(s.V, cell, v, gv);
    transport_field_cell(d, s, f, ctx, cell, v, gv, bl);
    d.cell(3).values_and_gradients(s.n, cell, nv, gn);
    d.cell(3).values_and_gradients(m.P, cell, pv, gp);
    d.cell(3).values(s.thermal, cell, prv);
    d.cell(kj).values(ctx.j, cell, jv);
    for (int q = 0; q < nq; ++q) {
      const Vec3 V = vec_at(v, nq, q), GN = grad_at(gn, nq, 0, q);
      const double n = nv[q];
      const Vec3 U = (mi * n) * V;
      double gU[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gU[i][j] = mi * (V[i] * GN[j] + n * gv[(3 * i + j) * nq + q]);
      const double divU = gU[0][0] + gU[1][1] + gU[2][2];
      const Vec3 lorentz = cross(vec_at(bl, nq, q), vec_at(jv, nq, q));
      const Vec3 GP = grad_at(gp, nq, 0, q);
      for (int c = 0; c < 3; ++c) {
        double ac = V[c] * divU;
        for (int i = 0; i < 3; ++i) ac -= V[i] * gU[i][c];
        a[c * nq + q] += ac - n * GP[c] - lorentz[c];
        for (int j = 0; j < 3; ++j) b[(3 * c + j) * nq + q] += V[c] * U[j];
        b[(3 * c + c) * nq + q] += prv[q] - dot(U, V);
      }
    }
  });
  auto mvf = facet_functional(d.face(2), false, [&](const FacetRecord& fr, double* ap, double*, double* am, double*) {
    double np[kMaxQ], nm[kMaxQ], pp[kMaxQ], pm[kMaxQ], vp[3 * kMaxQ], vm[3 * kMaxQ];
    d.face(3).values(s.n, fr.plus_cell, fr.plus_local_face, np);
    d.face(3).values(s.n, fr.minus_cell, fr.minus_local_face, nm);
    d.face(3).values(m.P, fr.plus_cell, fr.plus_local_face, pp);
    d.face(3).values(m.P, fr.minus_cell, fr.minus_local_face, pm);
    d.face(2).values(s.V, fr.plus_cell, fr.plus_local_face, vp);
    d.face(2).values(s.V, fr.minus_cell, fr.minus_local_face, vm);
    const Vec3 N = fr.normal;
    for (int q = 0; q < nf; ++q) {
      const Vec3 Vp = vec_at(vp, nf, q), Vm = vec_at(vm, nf, q);
      const bool plus = take_plus(dot(Vp, N), f.upwind);
      const Vec3 Vt = plus ? Vp : Vm;
      const double nt = plus ? np[q] : nm[q];
      const Vec3 Up = (mi * np[q]) * Vp, Um = (mi * nm[q]) * Vm;
      vec_add(ap, nf, q, dot(Up, Vt) * N - dot(N, Up) * Vt + (pp[q] * nt) * N);
      vec_add(am, nf, q, -(dot(Um, Vt) * N - dot(N, Um) * Vt) - (pm[q] * nt) * N);
    }
  });
  axpy(1.0, mvf, m.V);

  m.thermal = cell_functional(d.cell(3), true, [&](int cell, double* a, double* b) {
    double v[3 * kMaxQ], gv[9 * kMaxQ], prv[kMaxQ];
    d.cell(2).values_and_gradients(s.V, cell, v, gv);
    d.cell(3).values(s.thermal, cell, prv);
    for (int q = 0; q < nq; ++q) {
      const double divV = gv[0 * nq + q] + gv[4 * nq + q] + gv[8 * nq + q];
      a[q] -= prv[q] * divV;
      for (int j = 0; j < 3; ++j) b[j * nq + q] += prv[q] * v[j * nq + q] / gm1;
    }
  });
  auto mpf = facet_functional(d.face(3), false, [&](const FacetRecord& fr, double* ap, double*, double* am, double*) {
    double pp[kMaxQ], pm[kMaxQ], vp[3 * kMaxQ], vm[3 * kMaxQ];
    d.face(3).values(s.thermal, fr.plus_cell, fr.plus_local_face, pp);
    d.face(3).values(s.thermal, fr.minus_cell, fr.minus_local_face, pm);
    d.face(2).values(s.V, fr.plus_cell, fr.plus_local_face, vp);
    d.face(2).values(s.V, fr.minus_cell, fr.minus_local_face, vm);
    const Vec3 N = fr.normal;
    for (int q = 0; q < nf; ++q) {
      const double vnp = dot(vec_at(vp, nf, q), N), vnm = dot(vec_at(vm, nf, q), N);
      const double pt = take_plus(vnp, f.upwind) ? pp[q] : pm[q];
      ap[q] -= pt * vnp / gm1;
      am[q] += pt * vnm / gm1;
    }
    if (ohmic) add_ohmic(d, f, ctx, fr, ap, am);
  });
  axpy(1.0, mpf, m.thermal);
  return m;
}

}  // namespace

HydroMoments hydro_moments(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx)
{
  return f.thermal == ThermalKind::Temperature ? temperature_moments(d, s, f, ctx) : pressure_moments(d, s, f, ctx);
}

}  // namespace detail

Field compute_flux(const Discretization& d, const Field& n, const Field& V)
{
  const int nq = d.num_cell_points();
  return l2_project(d.cell(2), d.mass(2), [&](int cell, double* vals) {
    double nv[kMaxQ];
    d.cell(3).values(n, cell, nv);
    d.cell(2).values(V, cell, vals);
    for (int c = 0; c < 3; ++c)
      for (int q = 0; q < nq; ++q) vals[c * nq + q] *= nv[q];
  });
}

Field current_density(const Discretization& d, const State& s, const Formulation& f)
{
  if (f.div_form()) {
    const auto mb = d.mass(2).matrix() * s.B.coefficients();
    const auto rhs = scaled(d.curl_transpose() * mb, 1.0 / f.mu0);
    return Field(d.space(1), d.mass(1).solve(rhs));
  }
  return Field(d.space(2), scaled(d.curl() * s.B.coefficients(), 1.0 / f.mu0));
}

ElectricContext electric_field(const Discretization& d, const State& s, const Formulation& f, double dt,
                               const std::vector<double>* lagged_Bdot)
{
  ElectricContext ctx;
  ctx.dt = dt;
  if (f.thermal == ThermalKind::Temperature) ctx.F = compute_flux(d, s.n, s.V);
  if (f.magnetic == MagneticKind::DivHelicity)
    ctx.calB = l2_project(d.cell(1), d.mass(1), [&](int cell, double* vals) { d.cell(2).values(s.B, cell, vals); });
  else
    ctx.calB = s.B;
  ctx.j = current_density(d, s, f);
  if (f.stabilization == Stabilization::Supg) {
    const auto& sp = d.space(magnetic_space(f));
    ctx.Bdot_lag = lagged_Bdot ? Field(sp, *lagged_Bdot) : Field(sp);
  }
  if (f.stabilization == Stabilization::Hm1) {
    const int kb = penalty_field_space(f);
    const int nf = d.num_facet_points();
    double mx = 0.0;
    double v[3 * kMaxQ];
    for (const auto& fr : d.mesh().facets())
      for (int side = 0; side < 2; ++side) {
        d.face(kb).values(ctx.calB, side ? fr.minus_cell : fr.plus_cell,
                          side ? fr.minus_local_face : fr.plus_local_face, v);
        for (int q = 0; q < nf; ++q) {
          const Vec3 b = vec_at(v, nf, q);
          mx = std::max(mx, dot(b, b));
        }
      }
    ctx.hm1_eps = 1e-12 * mx;
  }
  if (f.div_form()) ctx.E = Field(d.space(1), d.mass(1).solve(detail::electric_moments(d, s, f, ctx)));
  return ctx;
}

HydroRates hydro_rhs(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx)
{
  check_density(d, s.n);
  auto m = detail::hydro_moments(d, s, f, ctx);
  HydroRates r;
  const double gm1 = f.gamma - 1.0;
  if (f.thermal == ThermalKind::Temperature) {
    r.n = std::move(m.n);
    r.V = d.mass(2).solve(m.V);
    r.thermal = solve_weighted_mass(d.cell(0), d.mass(0), scaled(point_values(d, 3, s.n), 1.0 / gm1), m.thermal);
  } else {
    r.n = d.mass(3).solve(m.n);
    r.V = solve_weighted_mass(d.cell(2), d.mass(2), scaled(point_values(d, 3, s.n), f.m_i), m.V);
    r.thermal = scaled(d.mass(3).solve(m.thermal), gm1);
  }
  return r;
}

std::vector<double> magnetic_rhs(const Discretization& d, const State& s, const Formulation& f,
                                 const ElectricContext& ctx)
{
  if (f.div_form()) return scaled(d.curl() * ctx.E.coefficients(), -1.0);
  return d.mass(1).solve(detail::curl_b_moments(d, s, f, ctx));
}

std::vector<double> vector_potential_rhs(const Discretization& d, const State& s, const Formulation& f,
                                         const ElectricContext& ctx)
{
  if (f.div_form()) return scaled(ctx.E.coefficients(), -1.0);
  const int nq = d.num_cell_points();
  const bool supg = f.stabilization == Stabilization::Supg;
  auto r = cell_functional(d.cell(2), false, [&](int cell, double* a, double*) {
    double u[3 * kMaxQ], gu[9 * kMaxQ], bl[3 * kMaxQ];
    detail::transport_cell(d, s, f, ctx, cell, u, supg ? gu : nullptr);
    detail::transport_field_cell(d, s, f, ctx, cell, u, gu, bl);
    for (int q = 0; q < nq; ++q) vec_add(a, nq, q, cross(vec_at(u, nq, q), vec_at(bl, nq, q)));
  });
  if (f.has_penalty()) {
    const int nf = d.num_facet_points();
    auto rf = facet_functional(d.face(2), false, [&](const FacetRecord& fr, double* ap, double*, double* am, double*) {
      double qv[kMaxQ];
      detail::penalty_facet(d, f, ctx, fr, ap, am, qv);
      const double c = -fr.area * fr.area * f.kappa_B;
      for (int i = 0; i < 3 * nf; ++i) {
        ap[i] *= c;
        am[i] *= c;
      }
    });
    axpy(1.0, rf, r);
  }
  return d.mass(2).solve(r);
}

RatesBundle evaluate_rates(const Discretization& d, const State& s, const Formulation& f, double dt,
                           const std::vector<double>* lagged_Bdot)
{
  RatesBundle r;
  r.context = electric_field(d, s, f, dt, lagged_Bdot);
  auto h = hydro_rhs(d, s, f, r.context);
  r.n = std::move(h.n);
  r.V = std::move(h.V);
  r.thermal = std::move(h.thermal);
  r.B = magnetic_rhs(d, s, f, r.context);
  r.A = vector_potential_rhs(d, s, f, r.context);
  return r;
}

}  // namespace cfemhd

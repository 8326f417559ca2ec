// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "cfemhd/mhd.hpp"
#include "mhd_internal.hpp"

namespace cfemhd {

using detail::kMaxQ;
using detail::vec_at;

namespace {

// Quadrature of the pointwise product of two fields with the same number of
// components.
double inner(const Discretization& d, int kx, const Field& x, int ky, const Field& y)
{
  const int nq = d.num_cell_points();
  const int nc = x.space().num_components();
  const auto& w = d.cell(kx).weights();
  double s = 0.0;
  double xv[3 * kMaxQ], yv[3 * kMaxQ];
  for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
    d.cell(kx).values(x, cell, xv);
    d.cell(ky).values(y, cell, yv);
    for (int c = 0; c < nc; ++c)
      for (int q = 0; q < nq; ++q) s += w[q] * xv[c * nq + q] * yv[c * nq + q];
  }
  return s;
}

double sum(const std::vector<double>& v)
{
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double energy_rate_audit(const Discretization& d, const State& s, const Formulation& f, double dt,
                         const std::vector<double>* lagged_Bdot)
{
  const auto ctx = electric_field(d, s, f, dt, lagged_Bdot);
  const auto m = detail::hydro_moments(d, s, f, ctx);
  double total = 0.0;
  if (f.thermal == ThermalKind::Temperature) {
    const int nq = d.num_cell_points();
    const auto& w = d.cell(3).weights();
    const Field ndot(d.space(3), m.n);
    double en = 0.0;
    double v[3 * kMaxQ], tv[kMaxQ], dn[kMaxQ];
    for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
      d.cell(2).values(s.V, cell, v);
      d.cell(0).values(s.thermal, cell, tv);
      d.cell(3).values(ndot, cell, dn);
      for (int q = 0; q < nq; ++q) {
        const Vec3 V = vec_at(v, nq, q);
        en += w[q] * (0.5 * f.m_i * dot(V, V) + tv[q] / (f.gamma - 1.0)) * dn[q];
      }
    }
    total = en + f.m_i * dot(ctx.F.coefficients(), m.V) + sum(m.thermal);
  } else {
    total = dot(m.P.coefficients(), m.n) + dot(s.V.coefficients(), m.V) + sum(m.thermal);
  }
  if (f.div_form()) {
    const auto bdot = magnetic_rhs(d, s, f, ctx);
    const auto mb = d.mass(2).matrix() * bdot;
    total += dot(s.B.coefficients(), mb) / f.mu0;
  } else {
    total += dot(s.B.coefficients(), detail::curl_b_moments(d, s, f, ctx)) / f.mu0;
  }
  return total;
}

double helicity_rate_audit(const Discretization& d, const State& s, const Formulation& f, double dt,
                           const std::vector<double>* lagged_Bdot)
{
  const auto ctx = electric_field(d, s, f, dt, lagged_Bdot);
  const int ka = potential_space(f), kb = magnetic_space(f);
  const Field adot(d.space(ka), vector_potential_rhs(d, s, f, ctx));
  const Field bdot(d.space(kb), magnetic_rhs(d, s, f, ctx));
  return inner(d, ka, adot, kb, s.B) + inner(d, ka, s.A, kb, bdot);
}

double penalty_dissipation(const Discretization& d, const State&, const Formulation& f, const ElectricContext& ctx)
{
  if (!f.has_penalty()) return 0.0;
  const int nf = d.num_facet_points();
  const auto& w = d.face(0).weights();
  double total = 0.0;
  double pp[3 * kMaxQ], pm[3 * kMaxQ], qv[kMaxQ];
  for (const auto& fr : d.mesh().facets()) {
    detail::penalty_facet(d, f, ctx, fr, pp, pm, qv);
    const double c = fr.area * fr.area * f.kappa_B * fr.area;
    for (int q = 0; q < nf; ++q) total += c * w[q] * qv[q];
  }
  return total;
}

double penalty_pairing(const Discretization& d, const Field& x, const Formulation& f, const ElectricContext& ctx)
{
  const int nf = d.num_facet_points();
  const int kx = x.space().family() == Family::Hcurl ? 1 : 2;
  const int kj = current_space(f);
  const auto& w = d.face(0).weights();
  double total = 0.0;
  double xp[3 * kMaxQ], xm[3 * kMaxQ], jp[3 * kMaxQ], jm[3 * kMaxQ];
  for (const auto& fr : d.mesh().facets()) {
    d.face(kx).values(x, fr.plus_cell, fr.plus_local_face, xp);
    d.face(kx).values(x, fr.minus_cell, fr.minus_local_face, xm);
    d.face(kj).values(ctx.j, fr.plus_cell, fr.plus_local_face, jp);
    d.face(kj).values(ctx.j, fr.minus_cell, fr.minus_local_face, jm);
    const double c = fr.area * fr.area * f.kappa_B * fr.area;
    for (int q = 0; q < nf; ++q)
      total += c * w[q] * dot(vec_at(xp, nf, q) - vec_at(xm, nf, q), vec_at(jp, nf, q) - vec_at(jm, nf, q));
  }
  return total;
}

}  // namespace cfemhd

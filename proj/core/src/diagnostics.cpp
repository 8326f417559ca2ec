// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/diagnostics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mhd_internal.hpp"

namespace cfemhd {

using detail::kMaxQ;
using detail::vec_at;

Energies energies(const Discretization& d, const State& s, const Formulation& f)
{
  const int nq = d.num_cell_points();
  const int kb = magnetic_space(f), kt = thermal_space(f);
  const auto& w = d.cell(3).weights();
  const bool temp = f.thermal == ThermalKind::Temperature;
  Energies e;
  double nv[kMaxQ], tv[kMaxQ], v[3 * kMaxQ], b[3 * kMaxQ];
  for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
    d.cell(3).values(s.n, cell, nv);
    d.cell(kt).values(s.thermal, cell, tv);
    d.cell(2).values(s.V, cell, v);
    d.cell(kb).values(s.B, cell, b);
    for (int q = 0; q < nq; ++q) {
      const Vec3 V = vec_at(v, nq, q), B = vec_at(b, nq, q);
      e.KE += w[q] * 0.5 * f.m_i * nv[q] * dot(V, V);
      e.IE += w[q] * (temp ? nv[q] * tv[q] : tv[q]) / (f.gamma - 1.0);
      e.ME += w[q] * dot(B, B) / (2.0 * f.mu0);
    }
  }
  e.H = e.KE + e.IE + e.ME;
  return e;
}

double magnetic_helicity(const Discretization& d, const State& s, const Formulation& f)
{
  const int nq = d.num_cell_points();
  const int ka = potential_space(f), kb = magnetic_space(f);
  const auto& w = d.cell(0).weights();
  double h = 0.0;
  double a[3 * kMaxQ], b[3 * kMaxQ];
  for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
    d.cell(ka).values(s.A, cell, a);
    d.cell(kb).values(s.B, cell, b);
    for (int q = 0; q < nq; ++q) h += w[q] * dot(vec_at(a, nq, q), vec_at(b, nq, q));
  }
  return h;
}

double b_norm(const Discretization& d, const State& s, const Formulation& f)
{
  return std::sqrt(2.0 * f.mu0 * energies(d, s, f).ME);
}

std::vector<double> weak_divergence(const Discretization& d, const State& s, const Formulation& f)
{
  const int nq = d.num_cell_points();
  const int kb = magnetic_space(f);
  auto rhs = cell_functional(d.cell(0), true, [&](int cell, double*, double* b) {
    d.cell(kb).values(s.B, cell, b);
    for (int i = 0; i < 3 * nq; ++i) b[i] = -b[i];
  });
  return d.mass(0).solve(rhs);
}

DivergenceReport divergence_report(const Discretization& d, const State& s, const Formulation& f)
{
  const int nq = d.num_cell_points();
  const int nf = d.num_facet_points();
  const int kb = magnetic_space(f);
  DivergenceReport r;
  const auto& w = d.cell(0).weights();
  double bv[3 * kMaxQ], gb[9 * kMaxQ];
  for (int cell = 0; cell < d.mesh().num_cells(); ++cell) {
    d.cell(kb).values_and_gradients(s.B, cell, bv, gb);
    for (int q = 0; q < nq; ++q) {
      const double dv = gb[0 * nq + q] + gb[4 * nq + q] + gb[8 * nq + q];
      r.strong += w[q] * dv * dv;
    }
  }
  r.strong = std::sqrt(r.strong);
  const auto delta = weak_divergence(d, s, f);
  r.weak = std::sqrt(std::max(0.0, dot(delta, d.mass(0).matrix() * delta)));
  const auto& fw = d.face(0).weights();
  double bp[3 * kMaxQ], bm[3 * kMaxQ];
  for (const auto& fr : d.mesh().facets()) {
    d.face(kb).values(s.B, fr.plus_cell, fr.plus_local_face, bp);
    d.face(kb).values(s.B, fr.minus_cell, fr.minus_local_face, bm);
    for (int q = 0; q < nf; ++q) {
      const double jn = dot(vec_at(bp, nf, q) - vec_at(bm, nf, q), fr.normal);
      r.normal_jump += fw[q] * fr.area * jn * jn;
    }
  }
  r.normal_jump = std::sqrt(r.normal_jump);
  return r;
}

double relative_b_error(const Discretization& d, const State& s, const Formulation& f, const VectorFunction& reference)
{
  const int nq = d.num_cell_points();
  const int kb = magnetic_space(f);
  const auto& w = d.cell(kb).weights();
  const int ncell = d.mesh().num_cells();
  std::vector<double> num(ncell, 0.0), den(ncell, 0.0);
  parallel_for(ncell, [&](int begin, int end) {
    double b[3 * kMaxQ];
    for (int cell = begin; cell < end; ++cell) {
      d.cell(kb).values(s.B, cell, b);
      for (int q = 0; q < nq; ++q) {
        const Vec3 ref = reference(d.cell(kb).point(cell, q));
        const Vec3 e = ref - vec_at(b, nq, q);
        num[cell] += w[q] * dot(e, e);
        den[cell] += w[q] * dot(ref, ref);
      }
    }
  });
  const double n = std::accumulate(num.begin(), num.end(), 0.0);
  const double dd = std::accumulate(den.begin(), den.end(), 0.0);
  if (!(dd > 0.0)) throw std::invalid_argument("relative_b_error: reference field has zero norm");
  return std::sqrt(n / dd);
}

double time_average(const std::vector<double>& values)
{
  if (values.empty()) throw std::invalid_argument("time_average: empty series");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace cfemhd

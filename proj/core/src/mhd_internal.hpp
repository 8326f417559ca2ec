// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cfemhd/mhd.hpp"

namespace cfemhd::detail {

constexpr int kMaxQ = 64;

inline Vec3 vec_at(const double* v, int nq, int q) { return {v[q], v[nq + q], v[2 * nq + q]}; }

inline void vec_add(double* v, int nq, int q, const Vec3& x)
{
  v[q] += x[0];
  v[nq + q] += x[1];
  v[2 * nq + q] += x[2];
}

// Gradient of component c: grads [c][j][q].
inline Vec3 grad_at(const double* g, int nq, int c, int q)
{
  return {g[(3 * c) * nq + q], g[(3 * c + 1) * nq + q], g[(3 * c + 2) * nq + q]};
}

// b[c][j] += (e_c x G)_j
inline void add_curl_test(double* b, int nq, int q, const Vec3& g)
{
  b[(0 * 3 + 1) * nq + q] -= g[2];
  b[(0 * 3 + 2) * nq + q] += g[1];
  b[(1 * 3 + 0) * nq + q] += g[2];
  b[(1 * 3 + 2) * nq + q] -= g[0];
  b[(2 * 3 + 0) * nq + q] -= g[1];
  b[(2 * 3 + 1) * nq + q] += g[0];
}

inline bool take_plus(double transport_dot_normal, UpwindRule rule)
{
  return rule == UpwindRule::Upwind ? transport_dot_normal > 0.0 : transport_dot_normal < 0.0;
}

// Transport velocity at the cell points (F/n or V) and optionally its
// broken gradient [c][j][q].
void transport_cell(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx,
                    int cell, double* u, double* gu);

// Field entering the transport term of E and the Lorentz force.
void transport_field_cell(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx,
                          int cell, const double* u, const double* gu, double* bl);

// Pointwise penalty coefficients on one facet. pp/pm pair with the plus and
// minus traces of the test field (before the h_e^2 kappa_B factor); q gets
// the squared jump.
void penalty_facet(const Discretization& d, const Formulation& f, const ElectricContext& ctx, const FacetRecord& fr,
                   double* pp, double* pm, double* q);

// Volume and facet moments of the div-form electric field against S1.
std::vector<double> electric_moments(const Discretization& d, const State& s, const Formulation& f,
                                     const ElectricContext& ctx);

// Curl-form B moments against S1: <curl S, u x B_L> - penalty(curl S).
std::vector<double> curl_b_moments(const Discretization& d, const State& s, const Formulation& f,
                                   const ElectricContext& ctx);

// Unsolved hydrodynamic moments. For the temperature kind n holds the strong
// rate -div F instead.
struct HydroMoments {
  std::vector<double> n;
  std::vector<double> V;
  std::vector<double> thermal;
  Field P;  // pressure kind: P_S3(m_i |V|^2 / 2)
};

HydroMoments hydro_moments(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx);

}  // namespace cfemhd::detail

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cfemhd/mhd.hpp"

namespace cfemhd {

struct Energies {
  double H = 0.0;
  double KE = 0.0;
  double IE = 0.0;
  double ME = 0.0;
};

struct DivergenceReport {
  double strong = 0.0;       // L2 norm of div B (broken for the curl form)
  double weak = 0.0;         // L2 norm of the S0 weak divergence
  double normal_jump = 0.0;  // (sum over facets of the integral of ((B+ - B-).n)^2)^(1/2)
};

struct DiagRow {
  long step = 0;
  double time = 0.0;
  double H = 0.0, KE = 0.0, IE = 0.0, ME = 0.0;
  double HM = 0.0;
  double divB = 0.0;
  double weak_divB = 0.0;
  double normal_jump = 0.0;
  double relerrB = 0.0;  // NaN when no reference is available
};

Energies energies(const Discretization& d, const State& s, const Formulation& f);
double magnetic_helicity(const Discretization& d, const State& s, const Formulation& f);
// L2 norm of B.
double b_norm(const Discretization& d, const State& s, const Formulation& f);

// Coefficients of the weak divergence: M0 delta = -<grad chi, B>.
std::vector<double> weak_divergence(const Discretization& d, const State& s, const Formulation& f);
DivergenceReport divergence_report(const Discretization& d, const State& s, const Formulation& f);

// ||B_ref - B_h|| / ||B_ref|| with the reference evaluated at the cell
// quadrature points. Throws std::invalid_argument for a zero reference.
double relative_b_error(const Discretization& d, const State& s, const Formulation& f, const VectorFunction& reference);

double time_average(const std::vector<double>& values);

}  // namespace cfemhd

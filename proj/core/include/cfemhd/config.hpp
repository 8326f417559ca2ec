// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>

#include "cfemhd/formulation.hpp"
#include "cfemhd/vortex.hpp"

namespace cfemhd {

struct SimConfig {
  std::array<double, 3> extents{10.0, 10.0, 2.0};
  std::array<int, 3> cells{0, 0, 0};
  int degree = 2;
  Formulation formulation;
  double dt = 0.0;
  double t_max = 0.0;
  long diag_every = 1;
  long vtk_every = 0;
  VortexParams vortex;
  bool deterministic = true;
  double cg_tol = 1e-12;
  std::string csv_name = "diagnostics.csv";
  std::string vtk_prefix = "fields";
};

// Stabilization parameters used when the config leaves them unset.
double default_kappa_B(MagneticKind m, Stabilization s);
double default_lambda(MagneticKind m);

// `key = value` lines, `#` comments. Required: mesh_cells, dt, t_max.
// Throws ConfigError naming the offending key or rule.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);

// Canonical key = value rendering; parse_config(format_config(c)) == c.
std::string format_config(const SimConfig& c);

}  // namespace cfemhd

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace cfemhd {

enum class MagneticKind { Div, DivHelicity, Curl };
enum class ThermalKind { Temperature, Pressure };
enum class Stabilization { None, Supg, Eta, Hm, Hm1 };

// Facet upwind selection. Upwind takes the plus-side value when the flow
// crosses from plus to minus (u.n+ > 0); Printed applies "u+ if u+.n+ < 0".
enum class UpwindRule { Upwind, Printed };

struct Formulation {
  MagneticKind magnetic = MagneticKind::Div;
  ThermalKind thermal = ThermalKind::Temperature;
  Stabilization stabilization = Stabilization::None;
  UpwindRule upwind = UpwindRule::Upwind;

  double kappa_T = 1e-4;
  double kappa_B = 0.0;
  double lambda = 0.0;

  double gamma = 5.0 / 3.0;
  double m_i = 1.0;
  double mu0 = 0.1;

  // Sub-grid Ohmic heating for the penalty stabilizations.
  bool ohmic_heating = true;

  bool div_form() const { return magnetic != MagneticKind::Curl; }
  bool has_penalty() const
  {
    return stabilization == Stabilization::Eta || stabilization == Stabilization::Hm ||
           stabilization == Stabilization::Hm1;
  }

  // Throws std::invalid_argument on incompatible or out-of-range settings.
  void validate() const;
};

std::string to_string(MagneticKind k);
std::string to_string(ThermalKind k);
std::string to_string(Stabilization s);
std::string to_string(UpwindRule u);
MagneticKind parse_magnetic_kind(const std::string& s);
ThermalKind parse_thermal_kind(const std::string& s);
Stabilization parse_stabilization(const std::string& s);
UpwindRule parse_upwind_rule(const std::string& s);

}  // namespace cfemhd

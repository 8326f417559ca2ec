// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/formulation.hpp"

#include <stdexcept>

namespace cfemhd {

void Formulation::validate() const
{
  if (stabilization == Stabilization::Supg && magnetic == MagneticKind::DivHelicity)
    throw std::invalid_argument("supg stabilization is not compatible with the helicity-preserving div formulation");
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (!(m_i > 0.0) || !(mu0 > 0.0)) throw std::invalid_argument("m_i and mu0 must be positive");
  if (kappa_T < 0.0 || kappa_B < 0.0) throw std::invalid_argument("penalty parameters must be nonnegative");
  if (stabilization == Stabilization::Supg && !(lambda > 0.0))
    throw std::invalid_argument("supg requires lambda > 0");
}

std::string to_string(MagneticKind k)
{
  switch (k) {
    case MagneticKind::Div: return "div";
    case MagneticKind::DivHelicity: return "div_helicity";
    case MagneticKind::Curl: return "curl";
  }
  return "?";
}

std::string to_string(ThermalKind k) { return k == ThermalKind::Temperature ? "temperature" : "pressure"; }

std::string to_string(Stabilization s)
{
  switch (s) {
    case Stabilization::None: return "none";
    case Stabilization::Supg: return "supg";
    case Stabilization::Eta: return "eta";
    case Stabilization::Hm: return "hm";
    case Stabilization::Hm1: return "hm1";
  }
  return "?";
}

std::string to_string(UpwindRule u) { return u == UpwindRule::Upwind ? "upwind" : "printed"; }

MagneticKind parse_magnetic_kind(const std::string& s)
{
  if (s == "div") return MagneticKind::Div;
  if (s == "div_helicity") return MagneticKind::DivHelicity;
  if (s == "curl") return MagneticKind::Curl;
  throw std::invalid_argument("unknown magnetic_kind '" + s + "' (expected div, div_helicity or curl)");
}

ThermalKind parse_thermal_kind(const std::string& s)
{
  if (s == "temperature") return ThermalKind::Temperature;
  if (s == "pressure") return ThermalKind::Pressure;
  throw std::invalid_argument("unknown thermal_kind '" + s + "' (expected temperature or pressure)");
}

Stabilization parse_stabilization(const std::string& s)
{
  if (s == "none") return Stabilization::None;
  if (s == "supg") return Stabilization::Supg;
  if (s == "eta") return Stabilization::Eta;
  if (s == "hm") return Stabilization::Hm;
  if (s == "hm1") return Stabilization::Hm1;
  throw std::invalid_argument("unknown stabilization '" + s + "' (expected none, supg, eta, hm or hm1)");
}

UpwindRule parse_upwind_rule(const std::string& s)
{
  if (s == "upwind") return UpwindRule::Upwind;
  if (s == "printed") return UpwindRule::Printed;
  throw std::invalid_argument("unknown upwind rule '" + s + "' (expected upwind or printed)");
}

}  // namespace cfemhd

// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cfemhd/errors.hpp"

namespace cfemhd {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s)
{
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

double to_double(const std::string& key, const std::string& v)
{
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v)
{
  long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v)
{
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double default_kappa_B(MagneticKind m, Stabilization s)
{
  const bool curl = m == MagneticKind::Curl;
  switch (s) {
    case Stabilization::Eta: return curl ? 1e-4 : 1e-3;
    case Stabilization::Hm:
    case Stabilization::Hm1: return curl ? 1e-2 : 0.1;
    default: return 0.0;
  }
}

double default_lambda(MagneticKind m) { return m == MagneticKind::Curl ? 1.0 : 0.25; }

SimConfig parse_config(const std::string& text)
{
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw ConfigError("key '" + key + "' given twice");
    kv[key] = value;
  }

  static const std::set<std::string> known = {
      "mesh_cells", "mesh_extents", "degree", "magnetic_kind", "thermal_kind", "stabilization", "kappa_T",
      "kappa_B", "lambda", "dt", "t_max", "diag_every", "vtk_every", "vortex_xc", "vortex_yc", "vortex_vb",
      "deterministic", "cg_tol", "ohmic_heating", "upwind", "csv_name", "vtk_prefix"};
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");
  for (const char* req : {"mesh_cells", "dt", "t_max"})
    if (!kv.count(req)) throw ConfigError("missing required key '" + std::string(req) + "'");

  SimConfig c;
  auto triple = [&](const std::string& key) {
    auto t = tokens(kv.at(key));
    if (t.size() != 3) throw ConfigError("key '" + key + "': expected three values");
    return t;
  };
  {
    auto t = triple("mesh_cells");
    for (int a = 0; a < 3; ++a) {
      const long n = to_long("mesh_cells", t[a]);
      if (n < 1) throw ConfigError("key 'mesh_cells': cell counts must be positive");
      c.cells[a] = static_cast<int>(n);
    }
  }
  if (kv.count("mesh_extents")) {
    auto t = triple("mesh_extents");
    for (int a = 0; a < 3; ++a) {
      c.extents[a] = to_double("mesh_extents", t[a]);
      if (!(c.extents[a] > 0.0)) throw ConfigError("key 'mesh_extents': extents must be positive");
    }
  }
  c.vortex.extents = c.extents;
  if (kv.count("degree")) {
    const long k = to_long("degree", kv["degree"]);
    if (k < 1 || k > 2) throw ConfigError("key 'degree': must be 1 or 2");
    c.degree = static_cast<int>(k);
  }
  auto& f = c.formulation;
  try {
    if (kv.count("magnetic_kind")) f.magnetic = parse_magnetic_kind(kv["magnetic_kind"]);
    if (kv.count("thermal_kind")) f.thermal = parse_thermal_kind(kv["thermal_kind"]);
    if (kv.count("stabilization")) f.stabilization = parse_stabilization(kv["stabilization"]);
    if (kv.count("upwind")) f.upwind = parse_upwind_rule(kv["upwind"]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  f.mu0 = c.vortex.mu0;
  f.m_i = c.vortex.m_i;
  f.kappa_T = kv.count("kappa_T") ? to_double("kappa_T", kv["kappa_T"]) : 1e-4;
  f.kappa_B = kv.count("kappa_B") ? to_double("kappa_B", kv["kappa_B"]) : default_kappa_B(f.magnetic, f.stabilization);
  if (kv.count("lambda"))
    f.lambda = to_double("lambda", kv["lambda"]);
  else if (f.stabilization == Stabilization::Supg)
    f.lambda = default_lambda(f.magnetic);
  if (kv.count("ohmic_heating")) f.ohmic_heating = to_bool("ohmic_heating", kv["ohmic_heating"]);

  c.dt = to_double("dt", kv["dt"]);
  c.t_max = to_double("t_max", kv["t_max"]);
  if (!(c.dt > 0.0)) throw ConfigError("key 'dt': must be positive");
  if (!(c.t_max >= 0.0)) throw ConfigError("key 't_max': must be nonnegative");
  if (kv.count("diag_every")) c.diag_every = to_long("diag_every", kv["diag_every"]);
  if (c.diag_every < 1) throw ConfigError("key 'diag_every': must be at least 1");
  if (kv.count("vtk_every")) c.vtk_every = to_long("vtk_every", kv["vtk_every"]);
  if (c.vtk_every < 0) throw ConfigError("key 'vtk_every': must be nonnegative");
  if (kv.count("vortex_xc")) c.vortex.x_c = to_double("vortex_xc", kv["vortex_xc"]);
  if (kv.count("vortex_yc")) c.vortex.y_c = to_double("vortex_yc", kv["vortex_yc"]);
  if (kv.count("vortex_vb")) c.vortex.V_b = to_double("vortex_vb", kv["vortex_vb"]);
  if (kv.count("deterministic")) c.deterministic = to_bool("deterministic", kv["deterministic"]);
  if (kv.count("cg_tol")) c.cg_tol = to_double("cg_tol", kv["cg_tol"]);
  if (!(c.cg_tol > 0.0) || !(c.cg_tol < 1.0)) throw ConfigError("key 'cg_tol': must lie in (0, 1)");
  if (kv.count("csv_name")) c.csv_name = kv["csv_name"];
  if (kv.count("vtk_prefix")) c.vtk_prefix = kv["vtk_prefix"];
  if (c.csv_name.empty() || c.csv_name.find('/') != std::string::npos)
    throw ConfigError("key 'csv_name': must be a plain file name");

  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

SimConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const SimConfig& c)
{
  const auto& f = c.formulation;
  std::ostringstream o;
  o << "mesh_cells = " << c.cells[0] << ' ' << c.cells[1] << ' ' << c.cells[2] << '\n';
  o << "mesh_extents = " << fmt(c.extents[0]) << ' ' << fmt(c.extents[1]) << ' ' << fmt(c.extents[2]) << '\n';
  o << "degree = " << c.degree << '\n';
  o << "magnetic_kind = " << to_string(f.magnetic) << '\n';
  o << "thermal_kind = " << to_string(f.thermal) << '\n';
  o << "stabilization = " << to_string(f.stabilization) << '\n';
  o << "upwind = " << to_string(f.upwind) << '\n';
  o << "kappa_T = " << fmt(f.kappa_T) << '\n';
  o << "kappa_B = " << fmt(f.kappa_B) << '\n';
  o << "lambda = " << fmt(f.lambda) << '\n';
  o << "ohmic_heating = " << (f.ohmic_heating ? "true" : "false") << '\n';
  o << "dt = " << fmt(c.dt) << '\n';
  o << "t_max = " << fmt(c.t_max) << '\n';
  o << "diag_every = " << c.diag_every << '\n';
  o << "vtk_every = " << c.vtk_every << '\n';
  o << "vortex_xc = " << fmt(c.vortex.x_c) << '\n';
  o << "vortex_yc = " << fmt(c.vortex.y_c) << '\n';
  o << "vortex_vb = " << fmt(c.vortex.V_b) << '\n';
  o << "deterministic = " << (c.deterministic ? "true" : "false") << '\n';
  o << "cg_tol = " << fmt(c.cg_tol) << '\n';
  o << "csv_name = " << c.csv_name << '\n';
  o << "vtk_prefix = " << c.vtk_prefix << '\n';
  return o.str();
}

}  // namespace cfemhd

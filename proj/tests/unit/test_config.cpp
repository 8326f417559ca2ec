// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <string>

#include "cfemhd/config.hpp"
#include "cfemhd/errors.hpp"

using namespace cfemhd;
using Catch::Matchers::ContainsSubstring;

namespace {
const std::string minimal = "mesh_cells = 20 20 4\ndt = 0.025\nt_max = 10\n";
}

TEST_CASE("Minimal config takes the defaults", "[config]")
{
  const SimConfig c = parse_config(minimal);
  CHECK(c.cells == std::array<int, 3>{20, 20, 4});
  CHECK(c.extents == std::array<double, 3>{10.0, 10.0, 2.0});
  CHECK(c.degree == 2);
  CHECK(c.formulation.magnetic == MagneticKind::Div);
  CHECK(c.formulation.thermal == ThermalKind::Temperature);
  CHECK(c.formulation.stabilization == Stabilization::None);
  CHECK(c.formulation.gamma == 5.0 / 3.0);
  CHECK(c.formulation.kappa_B == 0.0);
  CHECK(c.diag_every == 1);
  CHECK(c.cg_tol == 1e-12);
  CHECK(c.dt == 0.025);
  CHECK(c.t_max == 10.0);
  CHECK(c.vortex.V_b == 0.0);
}

TEST_CASE("Comments and blank lines are ignored", "[config]")
{
  const SimConfig c = parse_config("# vortex\n\n  mesh_cells = 2 3 4   # cells\ndt=0.5\nt_max =1\n");
  CHECK(c.cells == std::array<int, 3>{2, 3, 4});
  CHECK(c.dt == 0.5);
}

TEST_CASE("Config errors name the problem", "[config]")
{
  CHECK_THROWS_WITH(parse_config(minimal + "colour = red\n"), ContainsSubstring("colour"));
  CHECK_THROWS_WITH(parse_config("mesh_cells = 2 2 2\nt_max = 1\n"), ContainsSubstring("dt"));
  CHECK_THROWS_WITH(parse_config("dt = 1\nt_max = 1\n"), ContainsSubstring("mesh_cells"));
  CHECK_THROWS_AS(parse_config(minimal + "dt = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mesh_cells = 2 2\ndt = 1\nt_max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mesh_cells = 2 0 2\ndt = 1\nt_max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mesh_cells = 2 2 2\ndt = -1\nt_max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mesh_cells = 2 2 2\ndt = x\nt_max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "degree = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "stabilization = magic\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "diag_every = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "cg_tol = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "csv_name = a/b.csv\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "deterministic = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(minimal + "just words\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("SUPG is rejected with the helicity div form", "[config]")
{
  CHECK_THROWS_AS(parse_config(minimal + "magnetic_kind = div_helicity\nstabilization = supg\n"), ConfigError);
  CHECK_NOTHROW(parse_config(minimal + "magnetic_kind = div\nstabilization = supg\n"));
  CHECK_NOTHROW(parse_config(minimal + "magnetic_kind = div_helicity\nstabilization = hm1\n"));
}

TEST_CASE("Table configuration echoes back", "[config]")
{
  const SimConfig c = parse_config(minimal + "magnetic_kind = div\nstabilization = eta\nkappa_B = 0.001\n");
  CHECK(c.formulation.magnetic == MagneticKind::Div);
  CHECK(c.formulation.stabilization == Stabilization::Eta);
  CHECK(c.formulation.kappa_B == 0.001);
  CHECK_THAT(format_config(c), ContainsSubstring("kappa_B = 0.001\n"));
  CHECK_THAT(format_config(c), ContainsSubstring("stabilization = eta\n"));
}

TEST_CASE("Stabilization defaults per formulation", "[config]")
{
  CHECK(parse_config(minimal + "stabilization = eta\n").formulation.kappa_B == 1e-3);
  CHECK(parse_config(minimal + "magnetic_kind = curl\nstabilization = eta\n").formulation.kappa_B == 1e-4);
  CHECK(parse_config(minimal + "stabilization = supg\n").formulation.lambda == 0.25);
  CHECK(parse_config(minimal + "magnetic_kind = curl\nstabilization = supg\n").formulation.lambda == 1.0);
  CHECK(parse_config(minimal + "stabilization = supg\nlambda = 0.5\n").formulation.lambda == 0.5);
}

TEST_CASE("Format and parse round trip", "[config]")
{
  const SimConfig a = parse_config(
      "mesh_cells = 8 6 2\nmesh_extents = 4 3 1\ndegree = 1\nmagnetic_kind = curl\nthermal_kind = pressure\n"
      "stabilization = hm\nkappa_B = 0.1234567890123\ndt = 0.1\nt_max = 0.3\ndiag_every = 2\nvtk_every = 3\n"
      "vortex_xc = 1.5\nvortex_yc = 1.25\nvortex_vb = 0.5\ndeterministic = false\ncg_tol = 1e-10\n"
      "ohmic_heating = false\nupwind = printed\ncsv_name = out.csv\nvtk_prefix = snap\n");
  const std::string text = format_config(a);
  const SimConfig b = parse_config(text);
  CHECK(format_config(b) == text);
  CHECK(b.formulation.kappa_B == 0.1234567890123);
  CHECK(b.extents == std::array<double, 3>{4.0, 3.0, 1.0});
  CHECK(b.vortex.extents == b.extents);
  CHECK(b.formulation.upwind == UpwindRule::Printed);
  CHECK_FALSE(b.formulation.ohmic_heating);
  CHECK_FALSE(b.deterministic);
  CHECK(b.vtk_prefix == "snap");
}

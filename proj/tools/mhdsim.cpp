// SPDX-License-Identifier: Apache-2.0
// mhdsim: run the magnetic vortex scenario from a key = value config.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "cfemhd/simulation.hpp"
#include "cfemhd/vtk.hpp"

namespace fs = std::filesystem;

namespace {

int run_command(const std::string& config_path, const std::string& out_dir, bool quiet)
{
  const cfemhd::SimConfig cfg = cfemhd::load_config(config_path);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) {
    std::cerr << "mhdsim: output directory '" << out_dir << "' is not usable\n";
    return 2;
  }
  const fs::path csv_path = fs::path(out_dir) / cfg.csv_name;
  std::FILE* csv = std::fopen(csv_path.c_str(), "w");
  if (!csv) {
    std::cerr << "mhdsim: cannot write '" << csv_path.string() << "'\n";
    return 2;
  }
  std::fputs(cfemhd::csv_header().c_str(), csv);
  std::fflush(csv);

  cfemhd::Simulation sim(cfg);
  if (!quiet)
    std::cerr << "mhdsim: " << cfemhd::to_string(cfg.formulation.magnetic) << '/'
              << cfemhd::to_string(cfg.formulation.thermal) << '/' << cfemhd::to_string(cfg.formulation.stabilization)
              << ", " << cfemhd::step_count(cfg.t_max, cfg.dt) << " steps\n";

  auto on_row = [&](const cfemhd::DiagRow& r) {
    std::fputs(cfemhd::csv_row(r).c_str(), csv);
    std::fflush(csv);
    if (!quiet)
      std::fprintf(stderr, "step %ld t=%.4f H=%.12g HM=%.6g relerrB=%.4e\n", r.step, r.time, r.H, r.HM, r.relerrB);
  };
  auto on_snapshot = [&](long step, const cfemhd::State& s) {
    char name[64];
    std::snprintf(name, sizeof name, "_%06ld.vtk", step);
    cfemhd::write_vtk(sim.discretization(), s, sim.formulation(), sim.output_electric_field(s),
                      (fs::path(out_dir) / (cfg.vtk_prefix + name)).string());
  };
  try {
    sim.run(on_row, cfg.vtk_every > 0 ? cfemhd::Simulation::SnapshotSink(on_snapshot) : nullptr);
  } catch (...) {
    std::fclose(csv);
    throw;
  }
  std::fclose(csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Compatible finite element MHD solver"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  std::string config_path, out_dir = ".";
  bool quiet = false;
  run->add_option("config", config_path, "Config file (key = value lines)")->required();
  run->add_option("--out-dir", out_dir, "Directory for CSV and VTK output");
  run->add_flag("--quiet", quiet, "Suppress progress output");
  CLI11_PARSE(app, argc, argv);
  try {
    return run_command(config_path, out_dir, quiet);
  } catch (const std::exception& e) {
    std::cerr << "mhdsim: error: " << e.what() << '\n';
    return 1;
  }
}

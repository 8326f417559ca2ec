// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cfemhd/config.hpp"
#include "cfemhd/diagnostics.hpp"
#include "cfemhd/mhd.hpp"
#include "cfemhd/timeint.hpp"

namespace cfemhd {

// Vortex run assembled from a SimConfig.
class Simulation {
 public:
  explicit Simulation(SimConfig config);

  const SimConfig& config() const { return config_; }
  const Discretization& discretization() const { return *d_; }
  const Formulation& formulation() const { return config_.formulation; }

  State initial_state() const;
  DiagRow diagnose(long step, const State& s) const;
  // E for output: the S1 field of the div forms, -dA/dt in S2 for the curl form.
  Field output_electric_field(const State& s) const;

  using RowSink = std::function<void(const DiagRow&)>;
  using SnapshotSink = std::function<void(long step, const State&)>;
  State run(const RowSink& on_row, const SnapshotSink& on_snapshot = {}) const;

 private:
  SimConfig config_;
  std::unique_ptr<Discretization> d_;
};

std::string csv_header();
std::string csv_row(const DiagRow& r);

}  // namespace cfemhd

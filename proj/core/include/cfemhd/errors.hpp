// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cfemhd {

struct CgReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// A weight field was not strictly positive at a quadrature point.
class DegenerateWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Density not strictly positive where the forms divide by it.
class DegenerateDensityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |B|^2 fell below the guard in the scaled dot-product penalty.
class DegenerateFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, CgReport report) : std::runtime_error(what), report_(report) {}
  const CgReport& report() const { return report_; }

 private:
  CgReport report_;
};

class PositivityError : public std::runtime_error {
 public:
  PositivityError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfemhd

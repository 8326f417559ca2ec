// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "cfemhd/assembly.hpp"
#include "cfemhd/formulation.hpp"
#include "cfemhd/mesh.hpp"
#include "cfemhd/spaces.hpp"

namespace cfemhd {

// The complex S0 (H1) -> S1 (Hcurl) -> S2 (Hdiv) -> S3 (L2) on one mesh, with
// tabulated bases, derivative matrices and mass solvers. Quadrature uses
// k + 2 points per axis everywhere.
class Discretization {
 public:
  Discretization(std::array<double, 3> extents, std::array<int, 3> cells, int degree, SolverOptions options = {});
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  const QuadratureRule& rule() const { return rule_; }
  int num_cell_points() const { return rule_.num_points(); }
  int num_facet_points() const { return rule_.num_facet_points(); }

  const std::shared_ptr<const Space>& space(int k) const { return spaces_[k]; }
  const CellBasis& cell(int k) const { return *cell_[k]; }
  const FaceBasis& face(int k) const { return *face_[k]; }
  const MassSolver& mass(int k) const { return *mass_[k]; }

  const SparseMatrix& grad() const { return grad_; }
  const SparseMatrix& curl() const { return curl_; }
  const SparseMatrix& div() const { return div_; }
  const SparseMatrix& curl_transpose() const { return curl_t_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  QuadratureRule rule_;
  std::array<std::shared_ptr<const Space>, 4> spaces_;
  std::array<std::unique_ptr<CellBasis>, 4> cell_;
  std::array<std::unique_ptr<FaceBasis>, 4> face_;
  std::array<std::unique_ptr<MassSolver>, 4> mass_;
  SparseMatrix grad_, curl_, div_, curl_t_;
};

// Space indices of the formulation-dependent fields.
int magnetic_space(const Formulation& f);  // B
int potential_space(const Formulation& f);  // A and E
int current_space(const Formulation& f);  // j
int thermal_space(const Formulation& f);  // T or p

struct State {
  Field n;
  Field V;
  Field thermal;  // T in S0 or p in S3
  Field B;
  Field A;
  double t = 0.0;
};

// Zero fields in the spaces the formulation expects.
State zero_state(const Discretization& d, const Formulation& f);

// Throws DegenerateDensityError unless n > 0 at every cell quadrature point.
void check_density(const Discretization& d, const Field& n);

double supg_tau(double dt, double h_c, double speed, double lambda);

// Everything the hydrodynamic and magnetic right-hand sides share.
struct ElectricContext {
  double dt = 0.0;
  Field F;         // temperature kind: P_S2(n V)
  Field calB;      // field inside the penalties: B, or P_S1(B) for div_helicity
  Field j;         // S1 (div forms) or S2 (curl form)
  Field E;         // S1, div forms only
  Field Bdot_lag;  // supg: previous B rate
  double hm1_eps = 0.0;
};

Field compute_flux(const Discretization& d, const Field& n, const Field& V);
Field current_density(const Discretization& d, const State& s, const Formulation& f);

// lagged_Bdot may be null (treated as zero). dt is only read by supg.
ElectricContext electric_field(const Discretization& d, const State& s, const Formulation& f, double dt = 0.0,
                               const std::vector<double>* lagged_Bdot = nullptr);

struct HydroRates {
  std::vector<double> n;
  std::vector<double> V;
  std::vector<double> thermal;
};

HydroRates hydro_rhs(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx);
std::vector<double> magnetic_rhs(const Discretization& d, const State& s, const Formulation& f,
                                 const ElectricContext& ctx);
std::vector<double> vector_potential_rhs(const Discretization& d, const State& s, const Formulation& f,
                                         const ElectricContext& ctx);

struct RatesBundle {
  std::vector<double> n, V, thermal, B, A;
  ElectricContext context;
};

RatesBundle evaluate_rates(const Discretization& d, const State& s, const Formulation& f, double dt = 0.0,
                           const std::vector<double>* lagged_Bdot = nullptr);

// Chain-rule pairing of the energy variations with the assembled residuals.
double energy_rate_audit(const Discretization& d, const State& s, const Formulation& f, double dt = 0.0,
                         const std::vector<double>* lagged_Bdot = nullptr);

// <dA/dt, B> + <A, dB/dt>.
double helicity_rate_audit(const Discretization& d, const State& s, const Formulation& f, double dt = 0.0,
                           const std::vector<double>* lagged_Bdot = nullptr);

// Sum over facets of the integral of h_e^2 kappa_B Q, with Q the variant's
// squared jump (|[[j]]'|^2, |[[B x j]]'|^2 or [[B.j/|B|^2]]^2).
double penalty_dissipation(const Discretization& d, const State& s, const Formulation& f, const ElectricContext& ctx);

// Sum over facets of the integral of h_e^2 kappa_B [[X]]'.[[j]]' for a field X
// sharing j's space family (S1 for div forms).
double penalty_pairing(const Discretization& d, const Field& x, const Formulation& f, const ElectricContext& ctx);

}  // namespace cfemhd

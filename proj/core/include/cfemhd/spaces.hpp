// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cfemhd/basis.hpp"
#include "cfemhd/mesh.hpp"
#include "cfemhd/sparse.hpp"
#include "cfemhd/vec3.hpp"

namespace cfemhd {

enum class Family { H1, Hcurl, Hdiv, L2 };

const char* family_name(Family f);

// One member of the tensor-product de Rham complex on a periodic box.
// Each vector component is a tensor product of 1D continuous (C) and
// discontinuous (D) factors: H1 = CCC, Hcurl_x = DCC, Hdiv_x = CDD, L2 = DDD
// (other components by cyclic permutation). Along every axis each factor owns
// k N dofs, so every component has (k Nx)(k Ny)(k Nz) dofs. Components are
// stored as consecutive blocks; within a block x is fastest. Every entity is
// oriented along +axis, so all local-to-global signs are +1.
class Space {
 public:
  Space(std::shared_ptr<const Mesh> mesh, Family family, int degree);

  Family family() const { return family_; }
  int degree() const { return degree_; }
  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }

  int num_components() const { return (family_ == Family::H1 || family_ == Family::L2) ? 1 : 3; }
  int component_size() const { return comp_size_; }
  int size() const { return num_components() * comp_size_; }
  std::array<int, 3> global_shape() const { return gshape_; }

  Factor factor(int comp, int axis) const;
  const LagrangeBasis1D& basis(Factor f) const { return f == Factor::Continuous ? cont_ : disc_; }

  std::array<int, 3> local_shape(int comp) const;
  int local_component_size(int comp) const;
  int local_offset(int comp) const { return local_offset_[comp]; }
  int local_size() const { return local_offset_[num_components()]; }

  // Global dofs of the cell, components concatenated, each block x-fastest.
  std::span<const int> cell_dofs(int cell) const;

  int dof_component(int dof) const { return dof / comp_size_; }
  Vec3 dof_position(int dof) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  Family family_;
  int degree_;
  LagrangeBasis1D cont_;
  LagrangeBasis1D disc_;
  std::array<int, 3> gshape_;
  int comp_size_;
  std::array<int, 4> local_offset_{};
  std::vector<int> l2g_;
};

std::shared_ptr<const Space> build_space(std::shared_ptr<const Mesh> mesh, Family family, int degree);

class Field {
 public:
  Field() = default;
  explicit Field(std::shared_ptr<const Space> space);
  Field(std::shared_ptr<const Space> space, std::vector<double> coefficients);

  const Space& space() const { return *space_; }
  const std::shared_ptr<const Space>& space_ptr() const { return space_; }
  bool empty() const { return !space_; }
  int size() const { return static_cast<int>(coef_.size()); }

  std::vector<double>& coefficients() { return coef_; }
  const std::vector<double>& coefficients() const { return coef_; }
  double& operator[](int i) { return coef_[i]; }
  double operator[](int i) const { return coef_[i]; }

  void gather(int cell, double* local) const;

 private:
  std::shared_ptr<const Space> space_;
  std::vector<double> coef_;
};

enum class DerivativeKind { Grad, Curl, Div };

struct DerivativeOperator {
  DerivativeKind kind;
  SparseMatrix matrix;
};

// Periodic 1D differentiation from the continuous to the discontinuous factor.
SparseMatrix derivative_1d(int degree, int cells, double h);

DerivativeOperator derivative_operator(const Space& source, const Space& target);

using ScalarFunction = std::function<double(const Vec3&)>;
using VectorFunction = std::function<Vec3(const Vec3&)>;

// Nodal interpolation: each coefficient is the matching component of the
// function at the dof's tensor node.
Field interpolate(std::shared_ptr<const Space> space, const ScalarFunction& f);
Field interpolate(std::shared_ptr<const Space> space, const VectorFunction& f);

struct PointValues {
  std::vector<Vec3> value;     // component c in value[p][c]; scalars in [p][0]
  std::vector<Vec3> gradient;  // scalar spaces only
  std::vector<Vec3> curl;      // vector spaces only
  std::vector<double> divergence;
};

// Evaluates a field at reference points of one cell; derivatives are
// cell-wise (broken).
PointValues evaluate(const Field& field, int cell, std::span<const Vec3> reference_points);

}  // namespace cfemhd

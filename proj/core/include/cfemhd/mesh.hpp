// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "cfemhd/sparse.hpp"
#include "cfemhd/vec3.hpp"

namespace cfemhd {

// Interior facet between two cells. The face with normal axis a sits at the low
// side of the minus cell; the plus cell is its periodic neighbour below. The
// stored normal is the unit normal pointing from plus to minus (+e_a).
struct FacetRecord {
  int face;
  int axis;
  int plus_cell;
  int minus_cell;
  int plus_local_face;   // 2 a + 1 (high side of the plus cell)
  int minus_local_face;  // 2 a     (low side of the minus cell)
  Vec3 normal;
  double area;
};

// Fully periodic Cartesian hexahedral mesh. Vertex (i,j,k) has index
// i + Nx (j + Ny k); edges and faces with axis a are numbered a N + vertex.
class Mesh {
 public:
  Mesh(std::array<double, 3> extents, std::array<int, 3> cells);

  const std::array<double, 3>& extents() const { return extents_; }
  const std::array<int, 3>& cells() const { return cells_; }
  const std::array<double, 3>& spacing() const { return spacing_; }
  double min_spacing() const;
  double cell_volume() const { return spacing_[0] * spacing_[1] * spacing_[2]; }
  double volume() const { return extents_[0] * extents_[1] * extents_[2]; }

  int num_cells() const { return cells_[0] * cells_[1] * cells_[2]; }
  int num_vertices() const { return num_cells(); }
  int num_edges() const { return 3 * num_cells(); }
  int num_faces() const { return 3 * num_cells(); }

  // Wrapped structured index.
  int index(int i, int j, int k) const;
  std::array<int, 3> coords(int id) const;
  Vec3 cell_origin(int cell) const;

  int edge(int axis, int i, int j, int k) const { return axis * num_cells() + index(i, j, k); }
  int face(int axis, int i, int j, int k) const { return axis * num_cells() + index(i, j, k); }

  // Signed incidence: edge -> vertex (tail -1, head +1), face -> edge
  // (right-handed circulation about +e_a), cell -> face (outward +1).
  SparseMatrix edge_vertex_incidence() const;
  SparseMatrix face_edge_incidence() const;
  SparseMatrix cell_face_incidence() const;

  const std::vector<FacetRecord>& facets() const { return facets_; }

 private:
  std::array<double, 3> extents_;
  std::array<int, 3> cells_;
  std::array<double, 3> spacing_;
  std::vector<FacetRecord> facets_;
};

Mesh build_periodic_box(std::array<double, 3> extents, std::array<int, 3> cells);
std::vector<FacetRecord> interior_facets(const Mesh& mesh);

}  // namespace cfemhd

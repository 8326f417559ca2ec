// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfemhd {

Mesh::Mesh(std::array<double, 3> extents, std::array<int, 3> cells) : extents_(extents), cells_(cells)
{
  for (int a = 0; a < 3; ++a) {
    if (!(extents[a] > 0.0)) throw std::invalid_argument("Mesh: extents must be positive");
    if (cells[a] < 1) throw std::invalid_argument("Mesh: cell counts must be at least 1");
    spacing_[a] = extents[a] / cells[a];
  }
  const int n = num_cells();
  facets_.reserve(3 * n);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    for (int id = 0; id < n; ++id) {
      auto ijk = coords(id);
      auto low = ijk;
      low[a] -= 1;
      FacetRecord f;
      f.face = a * n + id;
      f.axis = a;
      f.plus_cell = index(low[0], low[1], low[2]);
      f.minus_cell = id;
      f.plus_local_face = 2 * a + 1;
      f.minus_local_face = 2 * a;
      f.normal = Vec3{};
      f.normal[a] = 1.0;
      f.area = spacing_[b] * spacing_[c];
      facets_.push_back(f);
    }
  }
}

double Mesh::min_spacing() const { return std::min({spacing_[0], spacing_[1], spacing_[2]}); }

int Mesh::index(int i, int j, int k) const
{
  auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
  return wrap(i, cells_[0]) + cells_[0] * (wrap(j, cells_[1]) + cells_[1] * wrap(k, cells_[2]));
}

std::array<int, 3> Mesh::coords(int id) const
{
  if (id < 0 || id >= num_cells()) throw std::invalid_argument("Mesh: entity index out of range");
  return {id % cells_[0], (id / cells_[0]) % cells_[1], id / (cells_[0] * cells_[1])};
}

Vec3 Mesh::cell_origin(int cell) const
{
  auto c = coords(cell);
  return {c[0] * spacing_[0], c[1] * spacing_[1], c[2] * spacing_[2]};
}

SparseMatrix Mesh::edge_vertex_incidence() const
{
  const int n = num_cells();
  std::vector<SparseMatrix::Triplet> t;
  for (int a = 0; a < 3; ++a)
    for (int v = 0; v < n; ++v) {
      auto p = coords(v);
      auto q = p;
      q[a] += 1;
      t.push_back({a * n + v, v, -1.0});
      t.push_back({a * n + v, index(q[0], q[1], q[2]), 1.0});
    }
  return SparseMatrix::from_triplets(num_edges(), num_vertices(), std::move(t));
}

SparseMatrix Mesh::face_edge_incidence() const
{
  const int n = num_cells();
  std::vector<SparseMatrix::Triplet> t;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    for (int v = 0; v < n; ++v) {
      auto p = coords(v);
      auto pb = p, pc = p;
      pb[b] += 1;
      pc[c] += 1;
      const int f = a * n + v;
      t.push_back({f, edge(b, p[0], p[1], p[2]), 1.0});
      t.push_back({f, edge(c, pb[0], pb[1], pb[2]), 1.0});
      t.push_back({f, edge(b, pc[0], pc[1], pc[2]), -1.0});
      t.push_back({f, edge(c, p[0], p[1], p[2]), -1.0});
    }
  }
  return SparseMatrix::from_triplets(num_faces(), num_edges(), std::move(t));
}

SparseMatrix Mesh::cell_face_incidence() const
{
  const int n = num_cells();
  std::vector<SparseMatrix::Triplet> t;
  for (int cell = 0; cell < n; ++cell) {
    auto p = coords(cell);
    for (int a = 0; a < 3; ++a) {
      auto q = p;
      q[a] += 1;
      t.push_back({cell, face(a, p[0], p[1], p[2]), -1.0});
      t.push_back({cell, face(a, q[0], q[1], q[2]), 1.0});
    }
  }
  return SparseMatrix::from_triplets(num_cells(), num_faces(), std::move(t));
}

Mesh build_periodic_box(std::array<double, 3> extents, std::array<int, 3> cells) { return Mesh(extents, cells); }

std::vector<FacetRecord> interior_facets(const Mesh& mesh) { return mesh.facets(); }

}  // namespace cfemhd

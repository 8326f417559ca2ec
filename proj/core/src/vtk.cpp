// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/vtk.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace cfemhd {

namespace {

// Vertex averages of a field's values, [vertex][c] on the periodic grid.
std::vector<double> vertex_average(const Mesh& mesh, const Field& x)
{
  const int nc = x.space().num_components();
  std::vector<double> sum(static_cast<size_t>(mesh.num_vertices()) * nc, 0.0);
  std::vector<int> count(mesh.num_vertices(), 0);
  std::vector<Vec3> corners;
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) corners.push_back({double(i), double(j), double(k)});
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const auto pv = evaluate(x, cell, corners);
    const auto ijk = mesh.coords(cell);
    for (int p = 0; p < 8; ++p) {
      const int v = mesh.index(ijk[0] + (p & 1), ijk[1] + ((p >> 1) & 1), ijk[2] + ((p >> 2) & 1));
      for (int c = 0; c < nc; ++c) sum[static_cast<size_t>(v) * nc + c] += pv.value[p][c];
      ++count[v];
    }
  }
  for (int v = 0; v < mesh.num_vertices(); ++v)
    for (int c = 0; c < nc; ++c) sum[static_cast<size_t>(v) * nc + c] /= count[v];
  return sum;
}

}  // namespace

void write_vtk(const Discretization& d, const State& s, const Formulation& f, const Field& E, const std::string& path)
{
  const Mesh& mesh = d.mesh();
  const auto& n = mesh.cells();
  const auto& h = mesh.spacing();
  const std::string tmp = path + ".tmp";
  std::FILE* out = std::fopen(tmp.c_str(), "w");
  if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
  const auto nv = vertex_average(mesh, s.n);
  const auto vv = vertex_average(mesh, s.V);
  const auto tv = vertex_average(mesh, s.thermal);
  const auto bv = vertex_average(mesh, s.B);
  std::vector<double> ev(static_cast<size_t>(mesh.num_vertices()) * 3, 0.0);
  if (!E.empty()) ev = vertex_average(mesh, E);
  const long npts = long(n[0] + 1) * (n[1] + 1) * (n[2] + 1);

  std::fprintf(out, "# vtk DataFile Version 3.0\nmhd state t=%.17g\nASCII\nDATASET RECTILINEAR_GRID\n", s.t);
  std::fprintf(out, "DIMENSIONS %d %d %d\n", n[0] + 1, n[1] + 1, n[2] + 1);
  const char* axis_name[3] = {"X", "Y", "Z"};
  for (int a = 0; a < 3; ++a) {
    std::fprintf(out, "%s_COORDINATES %d double\n", axis_name[a], n[a] + 1);
    for (int i = 0; i <= n[a]; ++i) std::fprintf(out, "%.17g%c", h[a] * i, i == n[a] ? '\n' : ' ');
  }
  std::fprintf(out, "POINT_DATA %ld\n", npts);
  auto scalar = [&](const char* name, const std::vector<double>& v) {
    std::fprintf(out, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
    for (int k = 0; k <= n[2]; ++k)
      for (int j = 0; j <= n[1]; ++j)
        for (int i = 0; i <= n[0]; ++i) std::fprintf(out, "%.17g\n", v[mesh.index(i, j, k)]);
  };
  auto vector = [&](const char* name, const std::vector<double>& v) {
    std::fprintf(out, "VECTORS %s double\n", name);
    for (int k = 0; k <= n[2]; ++k)
      for (int j = 0; j <= n[1]; ++j)
        for (int i = 0; i <= n[0]; ++i) {
          const size_t b = static_cast<size_t>(mesh.index(i, j, k)) * 3;
          std::fprintf(out, "%.17g %.17g %.17g\n", v[b], v[b + 1], v[b + 2]);
        }
  };
  scalar("n", nv);
  vector("V", vv);
  scalar(f.thermal == ThermalKind::Temperature ? "T" : "p", tv);
  vector("B", bv);
  vector("E", ev);
  const bool ok = std::ferror(out) == 0;
  if (std::fclose(out) != 0 || !ok) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("write failed for '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cfemhd

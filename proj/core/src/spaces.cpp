// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/spaces.hpp"

#include <stdexcept>

namespace cfemhd {

const char* family_name(Family f)
{
  switch (f) {
    case Family::H1: return "H1";
    case Family::Hcurl: return "Hcurl";
    case Family::Hdiv: return "Hdiv";
    case Family::L2: return "L2";
  }
  return "?";
}

Space::Space(std::shared_ptr<const Mesh> mesh, Family family, int degree)
    : mesh_(std::move(mesh)), family_(family), degree_(degree)
{
  if (!mesh_) throw std::invalid_argument("Space: null mesh");
  if (degree < 1 || degree > 2) throw std::invalid_argument("Space: degree must be 1 or 2");
  cont_ = continuous_basis(degree);
  disc_ = discontinuous_basis(degree);
  const auto& n = mesh_->cells();
  for (int a = 0; a < 3; ++a) gshape_[a] = degree * n[a];
  comp_size_ = gshape_[0] * gshape_[1] * gshape_[2];

  local_offset_[0] = 0;
  for (int c = 0; c < num_components(); ++c) local_offset_[c + 1] = local_offset_[c] + local_component_size(c);

  const int ncell = mesh_->num_cells();
  const int ls = local_size();
  l2g_.resize(static_cast<size_t>(ncell) * ls);
  for (int cell = 0; cell < ncell; ++cell) {
    const auto ijk = mesh_->coords(cell);
    int* out = &l2g_[static_cast<size_t>(cell) * ls];
    for (int c = 0; c < num_components(); ++c) {
      const auto sh = local_shape(c);
      for (int mz = 0; mz < sh[2]; ++mz)
        for (int my = 0; my < sh[1]; ++my)
          for (int mx = 0; mx < sh[0]; ++mx) {
            const int gx = (degree * ijk[0] + mx) % gshape_[0];
            const int gy = (degree * ijk[1] + my) % gshape_[1];
            const int gz = (degree * ijk[2] + mz) % gshape_[2];
            *out++ = c * comp_size_ + gx + gshape_[0] * (gy + gshape_[1] * gz);
          }
    }
  }
}

Factor Space::factor(int comp, int axis) const
{
  switch (family_) {
    case Family::H1: return Factor::Continuous;
    case Family::L2: return Factor::Discontinuous;
    case Family::Hcurl: return axis == comp ? Factor::Discontinuous : Factor::Continuous;
    case Family::Hdiv: return axis == comp ? Factor::Continuous : Factor::Discontinuous;
  }
  return Factor::Continuous;
}

std::array<int, 3> Space::local_shape(int comp) const
{
  std::array<int, 3> s{};
  for (int a = 0; a < 3; ++a) s[a] = factor(comp, a) == Factor::Continuous ? degree_ + 1 : degree_;
  return s;
}

int Space::local_component_size(int comp) const
{
  const auto s = local_shape(comp);
  return s[0] * s[1] * s[2];
}

std::span<const int> Space::cell_dofs(int cell) const
{
  if (cell < 0 || cell >= mesh_->num_cells()) throw std::invalid_argument("Space: cell index out of range");
  return {&l2g_[static_cast<size_t>(cell) * local_size()], static_cast<size_t>(local_size())};
}

Vec3 Space::dof_position(int dof) const
{
  if (dof < 0 || dof >= size()) throw std::invalid_argument("Space: dof index out of range");
  const int c = dof / comp_size_;
  int r = dof % comp_size_;
  const int g[3] = {r % gshape_[0], (r / gshape_[0]) % gshape_[1], r / (gshape_[0] * gshape_[1])};
  Vec3 x;
  for (int a = 0; a < 3; ++a) {
    const int cell = g[a] / degree_, m = g[a] % degree_;
    x[a] = mesh_->spacing()[a] * (cell + basis(factor(c, a)).nodes()[m]);
  }
  return x;
}

std::shared_ptr<const Space> build_space(std::shared_ptr<const Mesh> mesh, Family family, int degree)
{
  return std::make_shared<const Space>(std::move(mesh), family, degree);
}

Field::Field(std::shared_ptr<const Space> space) : space_(std::move(space))
{
  if (!space_) throw std::invalid_argument("Field: null space");
  coef_.assign(space_->size(), 0.0);
}

Field::Field(std::shared_ptr<const Space> space, std::vector<double> coefficients)
    : space_(std::move(space)), coef_(std::move(coefficients))
{
  if (!space_) throw std::invalid_argument("Field: null space");
  if (static_cast<int>(coef_.size()) != space_->size())
    throw std::invalid_argument("Field: coefficient count does not match the space");
}

void Field::gather(int cell, double* local) const
{
  for (int g : space_->cell_dofs(cell)) *local++ = coef_[g];
}

SparseMatrix derivative_1d(int degree, int cells, double h)
{
  const LagrangeBasis1D a = continuous_basis(degree), b = discontinuous_basis(degree);
  const int n = degree * cells;
  std::vector<SparseMatrix::Triplet> t;
  for (int i = 0; i < cells; ++i)
    for (int m = 0; m < b.size(); ++m)
      for (int l = 0; l < a.size(); ++l)
        t.push_back({degree * i + m, (degree * i + l) % n, a.derivative(l, b.nodes()[m]) / h});
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

DerivativeOperator derivative_operator(const Space& src, const Space& tgt)
{
  if (&src.mesh() != &tgt.mesh() || src.degree() != tgt.degree())
    throw std::invalid_argument("derivative_operator: spaces must share mesh and degree");
  const auto& mesh = src.mesh();
  const int k = src.degree();
  SparseMatrix d[3], id[3];
  for (int a = 0; a < 3; ++a) {
    d[a] = derivative_1d(k, mesh.cells()[a], mesh.spacing()[a]);
    id[a] = SparseMatrix::identity(k * mesh.cells()[a]);
  }
  const SparseMatrix dx = kron3(d[0], id[1], id[2]);
  const SparseMatrix dy = kron3(id[0], d[1], id[2]);
  const SparseMatrix dz = kron3(id[0], id[1], d[2]);

  if (src.family() == Family::H1 && tgt.family() == Family::Hcurl)
    return {DerivativeKind::Grad, block_matrix({{&dx}, {&dy}, {&dz}}, {{1.0}, {1.0}, {1.0}})};
  if (src.family() == Family::Hcurl && tgt.family() == Family::Hdiv)
    return {DerivativeKind::Curl, block_matrix({{nullptr, &dz, &dy}, {&dz, nullptr, &dx}, {&dy, &dx, nullptr}},
                                               {{0.0, -1.0, 1.0}, {1.0, 0.0, -1.0}, {-1.0, 1.0, 0.0}})};
  if (src.family() == Family::Hdiv && tgt.family() == Family::L2)
    return {DerivativeKind::Div, block_matrix({{&dx, &dy, &dz}}, {{1.0, 1.0, 1.0}})};
  throw std::invalid_argument(std::string("derivative_operator: ") + family_name(src.family()) + " -> " +
                              family_name(tgt.family()) + " is not an adjacent pair of the complex");
}

Field interpolate(std::shared_ptr<const Space> space, const ScalarFunction& f)
{
  if (space->num_components() != 1) throw std::invalid_argument("interpolate: scalar function into vector space");
  Field u(space);
  for (int i = 0; i < space->size(); ++i) u[i] = f(space->dof_position(i));
  return u;
}

Field interpolate(std::shared_ptr<const Space> space, const VectorFunction& f)
{
  if (space->num_components() != 3) throw std::invalid_argument("interpolate: vector function into scalar space");
  Field u(space);
  for (int i = 0; i < space->size(); ++i) u[i] = f(space->dof_position(i))[space->dof_component(i)];
  return u;
}

PointValues evaluate(const Field& field, int cell, std::span<const Vec3> pts)
{
  const Space& s = field.space();
  const auto h = s.mesh().spacing();
  std::vector<double> local(s.local_size());
  field.gather(cell, local.data());
  const int nc = s.num_components();
  const size_t np = pts.size();
  PointValues out;
  out.value.assign(np, Vec3{});
  std::vector<Vec3> grad(np * nc);
  for (size_t p = 0; p < np; ++p) {
    for (int c = 0; c < nc; ++c) {
      const auto sh = s.local_shape(c);
      const LagrangeBasis1D* b[3] = {&s.basis(s.factor(c, 0)), &s.basis(s.factor(c, 1)), &s.basis(s.factor(c, 2))};
      const double* lc = &local[s.local_offset(c)];
      // the basis sums to one, so expanding around lc[0] keeps constants exact
      const double c0 = lc[0];
      double v = 0.0;
      Vec3 g;
      for (int mz = 0; mz < sh[2]; ++mz)
        for (int my = 0; my < sh[1]; ++my)
          for (int mx = 0; mx < sh[0]; ++mx) {
            const double coef = lc[mx + sh[0] * (my + sh[1] * mz)] - c0;
            const double fx = b[0]->value(mx, pts[p][0]), fy = b[1]->value(my, pts[p][1]),
                         fz = b[2]->value(mz, pts[p][2]);
            v += coef * fx * fy * fz;
            g[0] += coef * b[0]->derivative(mx, pts[p][0]) * fy * fz / h[0];
            g[1] += coef * fx * b[1]->derivative(my, pts[p][1]) * fz / h[1];
            g[2] += coef * fx * fy * b[2]->derivative(mz, pts[p][2]) / h[2];
          }
      out.value[p][c] = c0 + v;
      grad[p * nc + c] = g;
    }
  }
  if (nc == 1) {
    out.gradient = std::move(grad);
  } else {
    out.curl.resize(np);
    out.divergence.resize(np);
    for (size_t p = 0; p < np; ++p) {
      const Vec3* g = &grad[p * 3];
      out.curl[p] = {g[2][1] - g[1][2], g[0][2] - g[2][0], g[1][0] - g[0][1]};
      out.divergence[p] = g[0][0] + g[1][1] + g[2][2];
    }
  }
  return out;
}

}  // namespace cfemhd

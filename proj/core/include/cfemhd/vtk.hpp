// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "cfemhd/mhd.hpp"

namespace cfemhd {

// Legacy ASCII RECTILINEAR_GRID with the periodic boundary layer duplicated,
// (Nx+1)(Ny+1)(Nz+1) points. Point data n, V, T or p, B, E sampled at the
// vertices; discontinuous fields are averaged over the adjacent cells.
// E may be empty (written as zeros). The file is written to a temporary
// name and renamed, so a failed write leaves no partial file.
void write_vtk(const Discretization& d, const State& s, const Formulation& f, const Field& E, const std::string& path);

}  // namespace cfemhd

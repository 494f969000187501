#pragma once

// Minimal legacy-ASCII VTK output (unstructured triangle grids with one
// point-data vector field).

#include <string>
#include <vector>

#include "wearfem/mesh.hpp"
#include "wearfem/vec2.hpp"

namespace wearfem {

void write_vtk_unstructured(const std::string& path, const std::string& title,
                            const std::vector<Vec2>& points,
                            const std::vector<Triangle>& triangles,
                            const std::string& field_name,
                            const std::vector<Vec2>& field);

}  // namespace wearfem

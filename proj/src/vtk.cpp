#include "wearfem/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wearfem {

void write_vtk_unstructured(const std::string& path, const std::string& title,
                            const std::vector<Vec2>& points,
                            const std::vector<Triangle>& triangles,
                            const std::string& field_name,
                            const std::vector<Vec2>& field) {
  if (field.size() != points.size())
    throw std::invalid_argument("write_vtk: field/point count mismatch");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  char buf[96];
  auto put3 = [&](double x, double y, double z) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", x, y, z);
    out << buf;
  };

  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << points.size() << " double\n";
  for (const Vec2& p : points) put3(p.x, p.y, 0.0);

  out << "CELLS " << triangles.size() << " " << 4 * triangles.size() << "\n";
  for (const Triangle& t : triangles)
    out << "3 " << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
  out << "CELL_TYPES " << triangles.size() << "\n";
  for (std::size_t i = 0; i < triangles.size(); ++i) out << "5\n";

  out << "POINT_DATA " << points.size() << "\n";
  out << "VECTORS " << field_name << " double\n";
  for (const Vec2& f : field) put3(f.x, f.y, 0.0);

  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wearfem

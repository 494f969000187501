#pragma once

// Conforming triangulations of the unit square with the boundary split
// used by the contact model: the left side is clamped, top and right carry
// tractions, the bottom is the contact side. Meshes are immutable after
// construction and safe for concurrent reads.

#include <array>
#include <cstddef>
#include <vector>

#include "wearfem/vec2.hpp"

namespace wearfem {

enum class BoundaryTag { Dirichlet, Neumann, Contact };

struct BoundaryEdge {
  int a = -1;  // vertex indices, ordered along the boundary
  int b = -1;
  BoundaryTag tag = BoundaryTag::Neumann;
  Vec2 normal;  // unit outward normal of the flat piece containing the edge
};

struct Triangle {
  std::array<int, 3> v{};  // counterclockwise
};

struct ElementGeometry {
  double area = 0.0;
  std::array<Vec2, 3> grad{};  // gradients of the barycentric basis functions
};

class Mesh {
 public:
  // Uniform n-by-n grid, each cell split along the lower-left to
  // upper-right diagonal. Throws std::invalid_argument for n == 0.
  static Mesh unit_square(int n);

  int subdivisions() const { return n_; }
  double h_contact() const { return 1.0 / n_; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return edges_; }

  // Vertex indices on the contact side, ordered by x; includes the corner
  // shared with the clamped side.
  const std::vector<int>& contact_nodes() const { return contact_nodes_; }
  const std::vector<bool>& dirichlet_mask() const { return dirichlet_; }
  bool is_dirichlet(int vertex) const { return dirichlet_[vertex]; }

  ElementGeometry element_geometry(int tri) const;

  // Unit outward normal of a contact-tagged boundary edge.
  Vec2 outward_normal(const BoundaryEdge& edge) const;

  std::vector<const BoundaryEdge*> edges_with_tag(BoundaryTag tag) const;

 private:
  Mesh() = default;
  void validate() const;

  int n_ = 0;
  std::vector<Vec2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<BoundaryEdge> edges_;
  std::vector<int> contact_nodes_;
  std::vector<bool> dirichlet_;
};

double signed_area(Vec2 p0, Vec2 p1, Vec2 p2);

}  // namespace wearfem

#pragma once

// P1 vector displacement space with the clamped DOFs eliminated, plus the
// scalar piecewise-linear wear space on the contact grid. Free DOFs are
// numbered vertex-by-vertex (x then y), skipping clamped vertices.

#include <array>
#include <functional>
#include <vector>

#include "wearfem/mesh.hpp"
#include "wearfem/vec2.hpp"

namespace wearfem {

struct DisplacementField {
  std::vector<double> values;  // length n_free
};

struct WearField {
  std::vector<double> values;  // one per contact node, in contact_nodes order
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<int> violating_nodes;  // ordinals into contact_nodes
  std::vector<double> excess;        // u_nu - g at those nodes
  explicit operator bool() const { return admissible; }
};

class FeSpace {
 public:
  FeSpace(const Mesh& mesh, double gap);

  const Mesh& mesh() const { return *mesh_; }
  int n_free() const { return n_free_; }
  double gap() const { return gap_; }

  // (x-dof, y-dof) of a vertex; {-1, -1} for clamped vertices.
  const std::array<int, 2>& dofs(int vertex) const { return dof_map_[vertex]; }
  const std::vector<std::array<int, 2>>& dof_map() const { return dof_map_; }

  // DOF pairs per contact node (contact_nodes order); the entry for the
  // clamped corner is the {-1, -1} marker.
  const std::vector<std::array<int, 2>>& contact_dofs() const {
    return contact_dofs_;
  }

  // trapezoidal lumping weights: half the length of the adjacent contact
  // edges, per contact node
  const std::vector<double>& contact_weights() const { return weights_; }
  Vec2 contact_normal(int contact_index) const {
    return normals_[contact_index];
  }

  // displacement at any vertex; zero at clamped ones
  Vec2 nodal_value(const DisplacementField& u, int vertex) const;

  double normal_trace(const DisplacementField& u, int contact_index) const;
  Vec2 tangential_trace(const DisplacementField& u, int contact_index) const;

  // true iff normal_trace <= gap + 1e-10 at every contact node
  AdmissibilityReport is_admissible(const DisplacementField& u) const;

  // energy-strain norm: sqrt(sum over elements of area * |eps|_F^2)
  double v_norm(const DisplacementField& u) const;
  // same norm for an arbitrary P1 nodal field (one value per vertex,
  // clamped side not forced to zero)
  double v_norm_nodal(const std::vector<Vec2>& nodal) const;
  // L2 norm on the contact side of the piecewise-linear wear interpolant,
  // exact for the quadratic integrand
  double w_norm(const WearField& w) const;

  // nodal interpolant of a smooth field (clamped DOFs dropped)
  DisplacementField interpolate(const std::function<Vec2(Vec2)>& f) const;
  // full nodal interpolant, boundary values included
  std::vector<Vec2> interpolate_nodal(const std::function<Vec2(Vec2)>& f) const;

 private:
  const Mesh* mesh_;
  double gap_;
  int n_free_ = 0;
  std::vector<std::array<int, 2>> dof_map_;
  std::vector<std::array<int, 2>> contact_dofs_;
  std::vector<double> weights_;
  std::vector<Vec2> normals_;
};

// Exact P1 transfer from a mesh with n subdivisions to the nested mesh with
// 2n; the represented function is unchanged. Throws std::invalid_argument
// unless fine.subdivisions() == 2 * coarse.subdivisions().
DisplacementField interpolate_between_levels(const FeSpace& coarse,
                                             const DisplacementField& u,
                                             const FeSpace& fine);
WearField interpolate_between_levels(const FeSpace& coarse, const WearField& w,
                                     const FeSpace& fine);

}  // namespace wearfem

#include "wearfem/fe_space.hpp"

#include <cmath>
#include <stdexcept>

namespace wearfem {

namespace {
constexpr double kFeasTol = 1e-10;
}

FeSpace::FeSpace(const Mesh& mesh, double gap) : mesh_(&mesh), gap_(gap) {
  const auto& dir = mesh.dirichlet_mask();
  dof_map_.resize(mesh.vertices().size(), {-1, -1});
  for (std::size_t v = 0; v < dof_map_.size(); ++v) {
    if (dir[v]) continue;
    dof_map_[v] = {n_free_, n_free_ + 1};
    n_free_ += 2;
  }

  const auto& cn = mesh.contact_nodes();
  contact_dofs_.reserve(cn.size());
  for (int node : cn) contact_dofs_.push_back(dof_map_[node]);

  weights_.assign(cn.size(), 0.0);
  normals_.assign(cn.size(), Vec2{0.0, 0.0});
  for (const auto& e : mesh.boundary_edges()) {
    if (e.tag != BoundaryTag::Contact) continue;
    const double len = norm(mesh.vertices()[e.b] - mesh.vertices()[e.a]);
    for (std::size_t c = 0; c < cn.size(); ++c) {
      if (cn[c] == e.a || cn[c] == e.b) {
        weights_[c] += 0.5 * len;
        normals_[c] = e.normal;
      }
    }
  }
}

Vec2 FeSpace::nodal_value(const DisplacementField& u, int vertex) const {
  const auto& d = dof_map_[vertex];
  if (d[0] < 0) return {0.0, 0.0};
  return {u.values[d[0]], u.values[d[1]]};
}

double FeSpace::normal_trace(const DisplacementField& u,
                             int contact_index) const {
  const Vec2 val = nodal_value(u, mesh_->contact_nodes()[contact_index]);
  return dot(val, normals_[contact_index]);
}

Vec2 FeSpace::tangential_trace(const DisplacementField& u,
                               int contact_index) const {
  const Vec2 val = nodal_value(u, mesh_->contact_nodes()[contact_index]);
  const Vec2 nu = normals_[contact_index];
  return val - dot(val, nu) * nu;
}

AdmissibilityReport FeSpace::is_admissible(const DisplacementField& u) const {
  AdmissibilityReport rep;
  const int nc = static_cast<int>(mesh_->contact_nodes().size());
  for (int c = 0; c < nc; ++c) {
    const double excess = normal_trace(u, c) - gap_;
    if (excess > kFeasTol) {
      rep.admissible = false;
      rep.violating_nodes.push_back(c);
      rep.excess.push_back(excess);
    }
  }
  return rep;
}

double FeSpace::v_norm(const DisplacementField& u) const {
  double acc = 0.0;
  const auto& tris = mesh_->triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const ElementGeometry g = mesh_->element_geometry(static_cast<int>(t));
    double exx = 0.0, eyy = 0.0, exy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 uk = nodal_value(u, tris[t].v[k]);
      exx += uk.x * g.grad[k].x;
      eyy += uk.y * g.grad[k].y;
      exy += 0.5 * (uk.x * g.grad[k].y + uk.y * g.grad[k].x);
    }
    acc += g.area * (exx * exx + 2.0 * exy * exy + eyy * eyy);
  }
  return std::sqrt(acc);
}

double FeSpace::v_norm_nodal(const std::vector<Vec2>& nodal) const {
  if (nodal.size() != mesh_->vertices().size())
    throw std::invalid_argument("v_norm_nodal: one value per vertex required");
  double acc = 0.0;
  const auto& tris = mesh_->triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const ElementGeometry g = mesh_->element_geometry(static_cast<int>(t));
    double exx = 0.0, eyy = 0.0, exy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 uk = nodal[tris[t].v[k]];
      exx += uk.x * g.grad[k].x;
      eyy += uk.y * g.grad[k].y;
      exy += 0.5 * (uk.x * g.grad[k].y + uk.y * g.grad[k].x);
    }
    acc += g.area * (exx * exx + 2.0 * exy * exy + eyy * eyy);
  }
  return std::sqrt(acc);
}

double FeSpace::w_norm(const WearField& w) const {
  // int over one edge of a linear ramp a->b squared: len/3 * (a^2 + ab + b^2)
  double acc = 0.0;
  const auto& cn = mesh_->contact_nodes();
  const auto& xs = mesh_->vertices();
  for (std::size_t c = 0; c + 1 < cn.size(); ++c) {
    const double len = norm(xs[cn[c + 1]] - xs[cn[c]]);
    const double a = w.values[c], b = w.values[c + 1];
    acc += len / 3.0 * (a * a + a * b + b * b);
  }
  return std::sqrt(acc);
}

DisplacementField FeSpace::interpolate(
    const std::function<Vec2(Vec2)>& f) const {
  DisplacementField u;
  u.values.assign(n_free_, 0.0);
  for (std::size_t v = 0; v < dof_map_.size(); ++v) {
    if (dof_map_[v][0] < 0) continue;
    const Vec2 val = f(mesh_->vertices()[v]);
    u.values[dof_map_[v][0]] = val.x;
    u.values[dof_map_[v][1]] = val.y;
  }
  return u;
}

std::vector<Vec2> FeSpace::interpolate_nodal(
    const std::function<Vec2(Vec2)>& f) const {
  std::vector<Vec2> vals(mesh_->vertices().size());
  for (std::size_t v = 0; v < vals.size(); ++v)
    vals[v] = f(mesh_->vertices()[v]);
  return vals;
}

namespace {

void require_nested(const FeSpace& coarse, const FeSpace& fine) {
  if (fine.mesh().subdivisions() != 2 * coarse.mesh().subdivisions())
    throw std::invalid_argument(
        "interpolate_between_levels: target mesh must have exactly twice the "
        "subdivisions of the source");
}

}  // namespace

DisplacementField interpolate_between_levels(const FeSpace& coarse,
                                             const DisplacementField& u,
                                             const FeSpace& fine) {
  require_nested(coarse, fine);
  const int n = coarse.mesh().subdivisions();
  auto coarse_at = [&](int i, int j) {
    return coarse.nodal_value(u, j * (n + 1) + i);
  };

  DisplacementField out;
  out.values.assign(fine.n_free(), 0.0);
  const int fn = 2 * n;
  for (int j = 0; j <= fn; ++j) {
    for (int i = 0; i <= fn; ++i) {
      const auto& d = fine.dofs(j * (fn + 1) + i);
      if (d[0] < 0) continue;
      Vec2 val;
      if (i % 2 == 0 && j % 2 == 0) {
        val = coarse_at(i / 2, j / 2);
      } else if (j % 2 == 0) {  // midpoint of a horizontal coarse edge
        val = 0.5 * (coarse_at((i - 1) / 2, j / 2) +
                     coarse_at((i + 1) / 2, j / 2));
      } else if (i % 2 == 0) {  // midpoint of a vertical coarse edge
        val = 0.5 * (coarse_at(i / 2, (j - 1) / 2) +
                     coarse_at(i / 2, (j + 1) / 2));
      } else {  // cell center, on the lower-left/upper-right diagonal
        val = 0.5 * (coarse_at((i - 1) / 2, (j - 1) / 2) +
                     coarse_at((i + 1) / 2, (j + 1) / 2));
      }
      out.values[d[0]] = val.x;
      out.values[d[1]] = val.y;
    }
  }
  return out;
}

WearField interpolate_between_levels(const FeSpace& coarse, const WearField& w,
                                     const FeSpace& fine) {
  require_nested(coarse, fine);
  const int fn = fine.mesh().subdivisions();
  WearField out;
  out.values.assign(fn + 1, 0.0);
  for (int i = 0; i <= fn; ++i) {
    if (i % 2 == 0)
      out.values[i] = w.values[i / 2];
    else
      out.values[i] = 0.5 * (w.values[(i - 1) / 2] + w.values[(i + 1) / 2]);
  }
  return out;
}

}  // namespace wearfem

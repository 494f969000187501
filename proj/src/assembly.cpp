#include "wearfem/assembly.hpp"

#include <stdexcept>

namespace wearfem {

MaterialParams::MaterialParams(double lambda, double eta)
    : lambda_(lambda), eta_(eta) {
  if (!(lambda > 0.0) || !(eta > 0.0))
    throw std::invalid_argument("MaterialParams: Lame coefficients must be positive");
}

namespace {

// Element stiffness of the law 2*c2*eps + c1*tr(eps)*I between the x/y DOFs
// of vertices a and b; c2 plays the role of 2*eta.
struct PairBlock {
  double xx, xy, yx, yy;
};

PairBlock pair_block(double c2, double c1, double area, Vec2 ga, Vec2 gb) {
  PairBlock k;
  k.xx = area * (c2 * (ga.x * gb.x + 0.5 * ga.y * gb.y) + c1 * ga.x * gb.x);
  k.xy = area * (0.5 * c2 * ga.y * gb.x + c1 * ga.x * gb.y);
  k.yx = area * (0.5 * c2 * ga.x * gb.y + c1 * ga.y * gb.x);
  k.yy = area * (c2 * (ga.y * gb.y + 0.5 * ga.x * gb.x) + c1 * ga.y * gb.y);
  return k;
}

using DofOf = std::function<std::array<int, 2>(int)>;

SparseSymMatrix assemble_elastic(const Mesh& mesh, double c2, double c1,
                                 const DofOf& dof, int n_dofs) {
  std::vector<Triplet> trip;
  trip.reserve(mesh.triangles().size() * 36);
  for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
    const ElementGeometry g = mesh.element_geometry(static_cast<int>(t));
    if (!(g.area > 0.0))
      throw std::runtime_error("assemble: degenerate element");
    const auto& v = mesh.triangles()[t].v;
    for (int a = 0; a < 3; ++a) {
      const auto da = dof(v[a]);
      if (da[0] < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const auto db = dof(v[b]);
        if (db[0] < 0) continue;
        const PairBlock k = pair_block(c2, c1, g.area, g.grad[a], g.grad[b]);
        trip.push_back({da[0], db[0], k.xx});
        trip.push_back({da[0], db[1], k.xy});
        trip.push_back({da[1], db[0], k.yx});
        trip.push_back({da[1], db[1], k.yy});
      }
    }
  }
  return SparseSymMatrix::from_triplets(n_dofs, std::move(trip));
}

DofOf reduced_dofs(const FeSpace& space) {
  return [&space](int v) { return space.dofs(v); };
}

DofOf full_dofs() {
  return [](int v) { return std::array<int, 2>{2 * v, 2 * v + 1}; };
}

std::vector<double> assemble_load_impl(const Mesh& mesh, const LoadSpec& loads,
                                       double t, const DofOf& dof,
                                       int n_dofs) {
  std::vector<double> f(n_dofs, 0.0);
  auto add = [&](int vertex, Vec2 val) {
    const auto d = dof(vertex);
    if (d[0] < 0) return;
    f[d[0]] += val.x;
    f[d[1]] += val.y;
  };

  if (loads.body) {
    for (std::size_t ti = 0; ti < mesh.triangles().size(); ++ti) {
      const auto& v = mesh.triangles()[ti].v;
      const Vec2 centroid =
          (1.0 / 3.0) * (mesh.vertices()[v[0]] + mesh.vertices()[v[1]] +
                         mesh.vertices()[v[2]]);
      const double area = mesh.element_geometry(static_cast<int>(ti)).area;
      const Vec2 val = (area / 3.0) * loads.body(centroid, t);
      for (int k = 0; k < 3; ++k) add(v[k], val);
    }
  }
  if (loads.traction) {
    for (const auto& e : mesh.boundary_edges()) {
      if (e.tag != BoundaryTag::Neumann) continue;
      const Vec2 pa = mesh.vertices()[e.a], pb = mesh.vertices()[e.b];
      const double half = 0.5 * norm(pb - pa);
      add(e.a, half * loads.traction(pa, t));
      add(e.b, half * loads.traction(pb, t));
    }
  }
  return f;
}

}  // namespace

SparseSymMatrix assemble_stiffness(const Mesh& mesh, const FeSpace& space,
                                   const MaterialParams& material) {
  return assemble_elastic(mesh, 2.0 * material.eta(), material.lambda(),
                          reduced_dofs(space), space.n_free());
}

SparseSymMatrix assemble_stiffness_unreduced(const Mesh& mesh,
                                             const MaterialParams& material) {
  return assemble_elastic(mesh, 2.0 * material.eta(), material.lambda(),
                          full_dofs(),
                          2 * static_cast<int>(mesh.vertices().size()));
}

std::vector<double> assemble_load(const Mesh& mesh, const FeSpace& space,
                                  const LoadSpec& loads, double t) {
  return assemble_load_impl(mesh, loads, t, reduced_dofs(space),
                            space.n_free());
}

std::vector<double> assemble_load_unreduced(const Mesh& mesh,
                                            const LoadSpec& loads, double t) {
  return assemble_load_impl(mesh, loads, t, full_dofs(),
                            2 * static_cast<int>(mesh.vertices().size()));
}

SymMat2 element_stress(const FeSpace& space, const DisplacementField& u,
                       const MaterialParams& material, int triangle) {
  const Mesh& mesh = space.mesh();
  const ElementGeometry g = mesh.element_geometry(triangle);
  const auto& v = mesh.triangles()[triangle].v;
  double exx = 0.0, eyy = 0.0, exy = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2 uk = space.nodal_value(u, v[k]);
    exx += uk.x * g.grad[k].x;
    eyy += uk.y * g.grad[k].y;
    exy += 0.5 * (uk.x * g.grad[k].y + uk.y * g.grad[k].x);
  }
  const double tr = material.lambda() * (exx + eyy);
  SymMat2 s;
  s.xx = 2.0 * material.eta() * exx + tr;
  s.xy = 2.0 * material.eta() * exy;
  s.yy = 2.0 * material.eta() * eyy + tr;
  return s;
}

SparseSymMatrix assemble_strain_product(const Mesh& mesh,
                                        const FeSpace& space) {
  return assemble_elastic(mesh, 1.0, 0.0, reduced_dofs(space),
                          space.n_free());
}

SparseSymMatrix assemble_contact_trace_mass(const Mesh& mesh,
                                            const FeSpace& space) {
  std::vector<Triplet> trip;
  for (const auto& e : mesh.boundary_edges()) {
    if (e.tag != BoundaryTag::Contact) continue;
    const double len = norm(mesh.vertices()[e.b] - mesh.vertices()[e.a]);
    const int nodes[2] = {e.a, e.b};
    // edge mass len/6 * [2 1; 1 2] on each displacement component
    for (int a = 0; a < 2; ++a) {
      const auto da = space.dofs(nodes[a]);
      if (da[0] < 0) continue;
      for (int b = 0; b < 2; ++b) {
        const auto db = space.dofs(nodes[b]);
        if (db[0] < 0) continue;
        const double m = len / 6.0 * (a == b ? 2.0 : 1.0);
        trip.push_back({da[0], db[0], m});
        trip.push_back({da[1], db[1], m});
      }
    }
  }
  return SparseSymMatrix::from_triplets(space.n_free(), std::move(trip));
}

}  // namespace wearfem

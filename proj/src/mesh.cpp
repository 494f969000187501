#include "wearfem/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wearfem {

double signed_area(Vec2 p0, Vec2 p1, Vec2 p2) {
  return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

Mesh Mesh::unit_square(int n) {
  if (n < 1) throw std::invalid_argument("unit_square: n must be >= 1");

  Mesh m;
  m.n_ = n;
  const int nv = (n + 1) * (n + 1);
  m.vertices_.reserve(nv);
  const double h = 1.0 / n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices_.push_back({i * h, j * h});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  m.triangles_.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j);
      const int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      // diagonal from lower-left to upper-right; deterministic so meshes
      // for n and 2n are nested
      m.triangles_.push_back({{ll, lr, ur}});
      m.triangles_.push_back({{ll, ur, ul}});
    }
  }

  for (int j = 0; j < n; ++j)  // left: clamped
    m.edges_.push_back({vid(0, j), vid(0, j + 1), BoundaryTag::Dirichlet,
                        {-1.0, 0.0}});
  for (int i = 0; i < n; ++i)  // bottom: contact
    m.edges_.push_back({vid(i, 0), vid(i + 1, 0), BoundaryTag::Contact,
                        {0.0, -1.0}});
  for (int j = 0; j < n; ++j)  // right: traction
    m.edges_.push_back({vid(n, j), vid(n, j + 1), BoundaryTag::Neumann,
                        {1.0, 0.0}});
  for (int i = 0; i < n; ++i)  // top: traction
    m.edges_.push_back({vid(i, n), vid(i + 1, n), BoundaryTag::Neumann,
                        {0.0, 1.0}});

  m.contact_nodes_.reserve(n + 1);
  for (int i = 0; i <= n; ++i) m.contact_nodes_.push_back(vid(i, 0));

  // corner (0,0) lies on both the clamped and the contact side; the clamped
  // condition wins, so it is marked Dirichlet here and carries no contact
  // or wear unknowns downstream
  m.dirichlet_.assign(nv, false);
  for (int j = 0; j <= n; ++j) m.dirichlet_[vid(0, j)] = true;

  m.validate();
  return m;
}

void Mesh::validate() const {
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const double a = signed_area(vertices_[tri.v[0]], vertices_[tri.v[1]],
                                 vertices_[tri.v[2]]);
    if (!(a > 0.0))
      throw std::runtime_error("mesh: degenerate or misoriented triangle " +
                               std::to_string(t));
  }
  double dirichlet_len = 0.0;
  for (const auto& e : edges_) {
    const double nn = norm(e.normal);
    if (std::abs(nn - 1.0) > 1e-14)
      throw std::runtime_error("mesh: boundary normal is not unit length");
    if (e.tag == BoundaryTag::Dirichlet)
      dirichlet_len += norm(vertices_[e.b] - vertices_[e.a]);
  }
  if (!(dirichlet_len > 0.0))
    throw std::runtime_error("mesh: clamped boundary part has zero length");
}

ElementGeometry Mesh::element_geometry(int tri) const {
  const auto& t = triangles_[tri];
  const Vec2 p0 = vertices_[t.v[0]];
  const Vec2 p1 = vertices_[t.v[1]];
  const Vec2 p2 = vertices_[t.v[2]];
  const double a2 = 2.0 * signed_area(p0, p1, p2);
  ElementGeometry g;
  g.area = 0.5 * a2;
  g.grad[0] = {(p1.y - p2.y) / a2, (p2.x - p1.x) / a2};
  g.grad[1] = {(p2.y - p0.y) / a2, (p0.x - p2.x) / a2};
  g.grad[2] = {(p0.y - p1.y) / a2, (p1.x - p0.x) / a2};
  return g;
}

Vec2 Mesh::outward_normal(const BoundaryEdge& edge) const {
  if (edge.tag != BoundaryTag::Contact)
    throw std::invalid_argument("outward_normal: edge is not a contact edge");
  return edge.normal;
}

std::vector<const BoundaryEdge*> Mesh::edges_with_tag(BoundaryTag tag) const {
  std::vector<const BoundaryEdge*> out;
  for (const auto& e : edges_)
    if (e.tag == tag) out.push_back(&e);
  return out;
}

}  // namespace wearfem

#pragma once

// Assembly of the linear-elastic stiffness operator, load functionals, and
// the boundary/strain bilinear forms used by the trace-constant estimate.

#include <functional>
#include <vector>

#include "wearfem/csr.hpp"
#include "wearfem/fe_space.hpp"
#include "wearfem/mesh.hpp"
#include "wearfem/vec2.hpp"

namespace wearfem {

// Isotropic plane-strain law sigma = 2*eta*eps + lambda*tr(eps)*I.
class MaterialParams {
 public:
  MaterialParams(double lambda, double eta);
  double lambda() const { return lambda_; }
  double eta() const { return eta_; }
  // monotonicity and Lipschitz constants of the law (d = 2)
  double m_F() const { return 2.0 * eta_; }
  double L_F() const { return 2.0 * eta_ + 2.0 * lambda_; }

 private:
  double lambda_;
  double eta_;
};

struct LoadSpec {
  std::function<Vec2(Vec2, double)> body;      // volume force density
  std::function<Vec2(Vec2, double)> traction;  // surface density on Gamma_N
};

struct SymMat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

// K[i][j] = integral of 2*eta*eps_i:eps_j + lambda*div_i*div_j, one-point
// quadrature (exact for P1), clamped rows/columns eliminated. The unreduced
// variant keeps all 2*(#vertices) DOFs numbered (2v, 2v+1).
SparseSymMatrix assemble_stiffness(const Mesh& mesh, const FeSpace& space,
                                   const MaterialParams& material);
SparseSymMatrix assemble_stiffness_unreduced(const Mesh& mesh,
                                             const MaterialParams& material);

// Consistent load vector: centroid rule per triangle for the body term,
// trapezoidal rule per traction edge.
std::vector<double> assemble_load(const Mesh& mesh, const FeSpace& space,
                                  const LoadSpec& loads, double t);
std::vector<double> assemble_load_unreduced(const Mesh& mesh,
                                            const LoadSpec& loads, double t);

// constant per-element stress 2*eta*eps(u) + lambda*tr(eps(u))*I
SymMat2 element_stress(const FeSpace& space, const DisplacementField& u,
                       const MaterialParams& material, int triangle);

// Gram matrix of the strain inner product (eps(u), eps(v))_{L2}; the
// squared norm form behind v_norm.
SparseSymMatrix assemble_strain_product(const Mesh& mesh,
                                        const FeSpace& space);

// consistent vector-valued mass matrix of the contact-side trace,
// M[i][j] = delta_{components} * integral over Gamma_C of phi_i phi_j
SparseSymMatrix assemble_contact_trace_mass(const Mesh& mesh,
                                            const FeSpace& space);

}  // namespace wearfem

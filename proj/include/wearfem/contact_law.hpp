#pragma once

// Normal compliance law, moving-foundation kinematics, the frictional
// contact functional, its linearization for the active-set solver, and the
// fixed-point smallness diagnostic.

#include <functional>
#include <memory>
#include <vector>

#include "wearfem/assembly.hpp"
#include "wearfem/fe_space.hpp"
#include "wearfem/vec2.hpp"

namespace wearfem {

// Interface for the contact pressure law p(r): zero for r <= 0, monotone
// nondecreasing, |p(r)| <= lipschitz() * |r|.
class ComplianceLaw {
 public:
  virtual ~ComplianceLaw() = default;
  virtual double p(double r) const = 0;
  // antiderivative with potential(0) = 0
  virtual double potential(double r) const = 0;
  // one-sided slope used by the Newton linearization (0 at the kink)
  virtual double slope(double r) const = 0;
  virtual double lipschitz() const = 0;
};

// p(r) = c_p * max(r, 0)
class LinearCompliance final : public ComplianceLaw {
 public:
  explicit LinearCompliance(double c_p);
  double p(double r) const override { return r > 0.0 ? cp_ * r : 0.0; }
  double potential(double r) const override {
    return r > 0.0 ? 0.5 * cp_ * r * r : 0.0;
  }
  double slope(double r) const override { return r > 0.0 ? cp_ : 0.0; }
  double lipschitz() const override { return cp_; }
  double stiffness() const { return cp_; }

 private:
  double cp_;
};

// Sliding foundation: velocity v*(t), plus wear and friction coefficient
// fields given per contact node.
struct FoundationMotion {
  std::function<Vec2(double)> v_star;
  std::vector<double> kappa;
  std::vector<double> mu;
  double v0 = 1e-12;  // admissible lower bound on |v*(t)|
};

FoundationMotion make_constant_motion(Vec2 v_star, double kappa, double mu,
                                      int n_contact_nodes);

// n*(t) = -v*(t)/|v*(t)|; throws std::domain_error when |v*(t)| < v0.
Vec2 n_star(const FoundationMotion& motion, double t);
// alpha(t) = kappa * |v*(t)| at one contact node
double alpha(const FoundationMotion& motion, double t, int contact_index);

// Contact functional by trapezoidal lumping over contact nodes:
//   sum_c l_c * p(u_nu - w) * [v_nu + mu * n*(t) . v_tau]
double phi_eval(const FeSpace& space, const ComplianceLaw& law,
                const FoundationMotion& motion, double t, const WearField& w,
                const DisplacementField& u, const DisplacementField& v);

// Linearization at u of the lumped energy
//   sum_c l_c * [ potential(u_nu - w) + mu * xi * (n*(t) . u_tau) ]
// with the friction pressure xi frozen per node. The Hessian of the
// compliance part is node-diagonal: hessian_nu[c] * (nu nu^T) on the DOF
// pair of contact node c.
struct ContactLinearization {
  std::vector<double> gradient;    // over free DOFs
  std::vector<double> hessian_nu;  // per contact node, >= 0
};

ContactLinearization contact_gradient_and_hessian(
    const FeSpace& space, const ComplianceLaw& law,
    const FoundationMotion& motion, double t, const WearField& w,
    const DisplacementField& u, const std::vector<double>& xi);

// Fixed-point smallness condition c0^2 * L_p * max|mu| < m_F, with c0 the
// constant of the trace inequality |v|_{L2(Gamma_C)} <= c0 |v|_V on the
// discrete space, computed by generalized power iteration.
struct SmallnessReport {
  double c0 = 0.0;
  double lhs = 0.0;  // c0^2 * L_p * max|mu|
  double m_F = 0.0;
  bool satisfied = false;
  int iterations = 0;
};

SmallnessReport check_smallness(const MaterialParams& material,
                                const ComplianceLaw& law,
                                const std::vector<double>& mu,
                                const Mesh& mesh, const FeSpace& space);

}  // namespace wearfem

#include "wearfem/contact_law.hpp"

#include <cmath>
#include <stdexcept>

#include "wearfem/pcg.hpp"

namespace wearfem {

LinearCompliance::LinearCompliance(double c_p) : cp_(c_p) {
  if (!(c_p > 0.0))
    throw std::invalid_argument("LinearCompliance: stiffness must be positive");
}

FoundationMotion make_constant_motion(Vec2 v_star, double kappa, double mu,
                                      int n_contact_nodes) {
  FoundationMotion m;
  m.v_star = [v_star](double) { return v_star; };
  m.kappa.assign(n_contact_nodes, kappa);
  m.mu.assign(n_contact_nodes, mu);
  return m;
}

Vec2 n_star(const FoundationMotion& motion, double t) {
  const Vec2 v = motion.v_star(t);
  const double speed = norm(v);
  if (speed < motion.v0)
    throw std::domain_error(
        "foundation velocity below the admissible lower bound v0 at t=" +
        std::to_string(t));
  return (-1.0 / speed) * v;
}

double alpha(const FoundationMotion& motion, double t, int contact_index) {
  const Vec2 v = motion.v_star(t);
  const double speed = norm(v);
  if (speed < motion.v0)
    throw std::domain_error(
        "foundation velocity below the admissible lower bound v0 at t=" +
        std::to_string(t));
  return motion.kappa[contact_index] * speed;
}

double phi_eval(const FeSpace& space, const ComplianceLaw& law,
                const FoundationMotion& motion, double t, const WearField& w,
                const DisplacementField& u, const DisplacementField& v) {
  const Vec2 ns = n_star(motion, t);
  const auto& weights = space.contact_weights();
  double acc = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    const int ci = static_cast<int>(c);
    const double pressure =
        law.p(space.normal_trace(u, ci) - w.values[c]);
    if (pressure == 0.0) continue;
    const double v_nu = space.normal_trace(v, ci);
    const double slip = dot(ns, space.tangential_trace(v, ci));
    acc += weights[c] * pressure * (v_nu + motion.mu[c] * slip);
  }
  return acc;
}

ContactLinearization contact_gradient_and_hessian(
    const FeSpace& space, const ComplianceLaw& law,
    const FoundationMotion& motion, double t, const WearField& w,
    const DisplacementField& u, const std::vector<double>& xi) {
  const Vec2 ns = n_star(motion, t);
  const auto& weights = space.contact_weights();
  const auto& cdofs = space.contact_dofs();

  ContactLinearization lin;
  lin.gradient.assign(space.n_free(), 0.0);
  lin.hessian_nu.assign(weights.size(), 0.0);

  for (std::size_t c = 0; c < weights.size(); ++c) {
    const auto& d = cdofs[c];
    if (d[0] < 0) continue;
    const int ci = static_cast<int>(c);
    const Vec2 nu = space.contact_normal(ci);
    const double r = space.normal_trace(u, ci) - w.values[c];

    // d/du of l*potential(u_nu - w) is l*p(r)*nu; of the frozen friction
    // term l*mu*xi*(n_star . u_tau) it is l*mu*xi*(n_star - (n_star.nu)nu)
    const Vec2 nt = ns - dot(ns, nu) * nu;
    const double g_p = weights[c] * law.p(r);
    const double g_f = weights[c] * motion.mu[c] * xi[c];
    lin.gradient[d[0]] += g_p * nu.x + g_f * nt.x;
    lin.gradient[d[1]] += g_p * nu.y + g_f * nt.y;

    lin.hessian_nu[c] = weights[c] * law.slope(r);
  }
  return lin;
}

SmallnessReport check_smallness(const MaterialParams& material,
                                const ComplianceLaw& law,
                                const std::vector<double>& mu,
                                const Mesh& mesh, const FeSpace& space) {
  const SparseSymMatrix kv = assemble_strain_product(mesh, space);
  const SparseSymMatrix mc = assemble_contact_trace_mass(mesh, space);
  const std::vector<double> diag = kv.diagonal();
  const int n = space.n_free();

  // generalized power iteration for the largest theta with
  // M x = theta * K x; c0 = sqrt(theta)
  std::vector<double> x(n, 1.0), mx(n), z(n);
  const int max_iters = 10000;
  double theta = 0.0;
  int used = 0;
  bool converged = false;
  for (int it = 1; it <= max_iters; ++it) {
    mc.multiply(x.data(), mx.data());
    std::fill(z.begin(), z.end(), 0.0);
    pcg_solve([&](const double* in, double* out) { kv.multiply(in, out); },
              diag, mx, z, 1e-14, 20 * n + 100);
    double nz = 0.0;
    for (double v : z) nz += v * v;
    nz = std::sqrt(nz);
    if (!(nz > 0.0))
      throw std::runtime_error("check_smallness: power iteration collapsed");
    for (int i = 0; i < n; ++i) x[i] = z[i] / nz;

    mc.multiply(x.data(), mx.data());
    std::vector<double> kx(n);
    kv.multiply(x.data(), kx.data());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += x[i] * mx[i];
      den += x[i] * kx[i];
    }
    const double theta_new = num / den;
    used = it;
    if (it > 1 && std::abs(theta_new - theta) <= 1e-12 * std::abs(theta_new)) {
      theta = theta_new;
      converged = true;
      break;
    }
    theta = theta_new;
  }
  if (!converged)
    throw std::runtime_error(
        "check_smallness: eigenvalue iteration did not converge within 10^4 "
        "iterations");

  double mu_max = 0.0;
  for (double m : mu) mu_max = std::max(mu_max, std::abs(m));

  SmallnessReport rep;
  rep.c0 = std::sqrt(theta);
  rep.lhs = theta * law.lipschitz() * mu_max;
  rep.m_F = material.m_F();
  rep.satisfied = rep.lhs < rep.m_F;
  rep.iterations = used;
  return rep;
}

}  // namespace wearfem

#include "wearfem/vi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wearfem/kernels.hpp"
#include "wearfem/pcg.hpp"

namespace wearfem {

namespace {
constexpr double kActiveTol = 1e-12;  // primal activity detection band

void validate(const SolverSettings& s) {
  if (!(s.fp_tol > 0.0) || !(s.newton_tol > 0.0))
    throw std::invalid_argument("SolverSettings: tolerances must be positive");
  if (s.fp_max < 1 || s.newton_max < 1)
    throw std::invalid_argument("SolverSettings: iteration caps must be >= 1");
}
}  // namespace

ViSolver::ViSolver(const FeSpace& space, const SparseSymMatrix& stiffness,
                   const ComplianceLaw& law, const FoundationMotion& motion)
    : space_(&space),
      stiffness_(&stiffness),
      law_(&law),
      motion_(&motion) {
  if (stiffness.rows() != space.n_free())
    throw std::invalid_argument("ViSolver: stiffness/space size mismatch");

  const auto& cdofs = space.contact_dofs();
  for (std::size_t c = 0; c < cdofs.size(); ++c) {
    if (cdofs[c][0] < 0) continue;
    ord_.push_back(static_cast<int>(c));
    adof_.push_back(cdofs[c][0]);
    bdof_.push_back(cdofs[c][1]);
    const Vec2 nu = space.contact_normal(static_cast<int>(c));
    nu_.push_back(nu);
    tau_.push_back(perp(nu));
    weight_.push_back(space.contact_weights()[c]);
  }

  const int n = space.n_free();
  entry_of_slot_.assign(n, -1);
  for (std::size_t e = 0; e < bdof_.size(); ++e)
    entry_of_slot_[bdof_[e]] = static_cast<int>(e);

  base_diag_.resize(n);
  for (int i = 0; i < n; ++i) base_diag_[i] = stiffness.coeff(i, i);
  for (std::size_t e = 0; e < ord_.size(); ++e) {
    const int dx = adof_[e], dy = bdof_[e];
    const double kxx = stiffness.coeff(dx, dx);
    const double kxy = stiffness.coeff(dx, dy);
    const double kyy = stiffness.coeff(dy, dy);
    const Vec2 t = tau_[e], v = nu_[e];
    base_diag_[dx] = t.x * t.x * kxx + 2.0 * t.x * t.y * kxy + t.y * t.y * kyy;
    base_diag_[dy] = v.x * v.x * kxx + 2.0 * v.x * v.y * kxy + v.y * v.y * kyy;
  }
  scratch_u_.resize(n);
  scratch_y_.resize(n);
}

void ViSolver::rotate_in(const double* u, double* z) const {
  const int n = space_->n_free();
  std::copy(u, u + n, z);
  for (std::size_t e = 0; e < ord_.size(); ++e) {
    const Vec2 up{u[adof_[e]], u[bdof_[e]]};
    z[adof_[e]] = dot(tau_[e], up);
    z[bdof_[e]] = dot(nu_[e], up);
  }
}

void ViSolver::rotate_out(const double* z, double* u) const {
  const int n = space_->n_free();
  std::copy(z, z + n, u);
  for (std::size_t e = 0; e < ord_.size(); ++e) {
    const double za = z[adof_[e]], zb = z[bdof_[e]];
    u[adof_[e]] = za * tau_[e].x + zb * nu_[e].x;
    u[bdof_[e]] = za * tau_[e].y + zb * nu_[e].y;
  }
}

void ViSolver::apply_rotated_stiffness(const double* z, double* y) const {
  rotate_out(z, scratch_u_.data());
  stiffness_->multiply(scratch_u_.data(), scratch_y_.data());
  rotate_in(scratch_y_.data(), y);
}

void ViSolver::add_compliance_gradient(const std::vector<double>& z,
                                       const WearField& w,
                                       const std::vector<double>& qbar,
                                       std::vector<double>& g) const {
  for (std::size_t e = 0; e < ord_.size(); ++e) {
    g[adof_[e]] += qbar[e];
    g[bdof_[e]] += weight_[e] * law_->p(z[bdof_[e]] - w.values[ord_[e]]);
  }
}

double ViSolver::kkt_residual(const std::vector<double>& grad,
                              const std::vector<double>& z) const {
  const double g = space_->gap();
  double r = 0.0;
  for (int i = 0; i < space_->n_free(); ++i) {
    const int e = entry_of_slot_[i];
    if (e >= 0 && z[i] >= g - kActiveTol) {
      // at the bound: multiplier -grad must be nonnegative
      r = std::max(r, grad[i]);
      r = std::max(r, z[i] - g);
    } else {
      r = std::max(r, std::abs(grad[i]));
    }
  }
  return r;
}

ViSolver::InnerStats ViSolver::inner_solve(std::vector<double>& z,
                                           const std::vector<double>& fz,
                                           const std::vector<double>& qbar,
                                           const WearField& w,
                                           const SolverSettings& s) const {
  const int n = space_->n_free();
  const std::size_t ne = ord_.size();
  const double g = space_->gap();

  std::vector<double> grad(n);
  auto true_gradient = [&](const std::vector<double>& zz) {
    apply_rotated_stiffness(zz.data(), grad.data());
    for (int i = 0; i < n; ++i) grad[i] -= fz[i];
    add_compliance_gradient(zz, w, qbar, grad);
  };

  InnerStats st;
  true_gradient(z);
  st.kkt = kkt_residual(grad, z);
  if (st.kkt <= s.newton_tol) return st;

  std::vector<char> active(ne);
  for (std::size_t e = 0; e < ne; ++e)
    active[e] = z[bdof_[e]] >= g - kActiveTol ? 1 : 0;

  std::vector<double> d(ne), rhs(n), diag(n), bhat(n), hx(n), kz(n), pm(n);
  const int cg_max = std::max(2000, 10 * n);

  for (int it = 1; it <= s.newton_max; ++it) {
    // current piece of the piecewise-quadratic energy
    for (std::size_t e = 0; e < ne; ++e)
      d[e] = weight_[e] * law_->slope(z[bdof_[e]] - w.values[ord_[e]]);

    rhs = fz;
    for (std::size_t e = 0; e < ne; ++e) {
      rhs[adof_[e]] -= qbar[e];
      rhs[bdof_[e]] += d[e] * w.values[ord_[e]];
    }

    diag = base_diag_;
    for (std::size_t e = 0; e < ne; ++e) {
      diag[bdof_[e]] += d[e];
      if (active[e]) diag[bdof_[e]] = 1.0;
    }

    // reduce the equality constraints z_b = g into the right-hand side
    std::fill(hx.begin(), hx.end(), 0.0);
    for (std::size_t e = 0; e < ne; ++e)
      if (active[e]) hx[bdof_[e]] = g;
    apply_rotated_stiffness(hx.data(), bhat.data());
    for (std::size_t e = 0; e < ne; ++e)
      bhat[bdof_[e]] += d[e] * hx[bdof_[e]];
    for (int i = 0; i < n; ++i) bhat[i] = rhs[i] - bhat[i];
    for (std::size_t e = 0; e < ne; ++e)
      if (active[e]) bhat[bdof_[e]] = g;

    auto apply = [&](const double* p, double* q) {
      for (int i = 0; i < n; ++i) pm[i] = p[i];
      for (std::size_t e = 0; e < ne; ++e)
        if (active[e]) pm[bdof_[e]] = 0.0;
      apply_rotated_stiffness(pm.data(), q);
      for (std::size_t e = 0; e < ne; ++e)
        q[bdof_[e]] += d[e] * pm[bdof_[e]];
      for (std::size_t e = 0; e < ne; ++e)
        if (active[e]) q[bdof_[e]] = p[bdof_[e]];
    };

    for (std::size_t e = 0; e < ne; ++e)
      if (active[e]) z[bdof_[e]] = g;
    const PcgResult cg = pcg_solve(apply, diag, bhat, z, 1e-14, cg_max);
    if (!cg.converged && cg.rel_residual > 1e-11)
      throw NewtonError("inner linear solve stalled at relative residual " +
                            std::to_string(cg.rel_residual),
                        cg.rel_residual);
    st.iterations = it;

    // multipliers from the model gradient, optimality from the true one
    apply_rotated_stiffness(z.data(), kz.data());
    for (int i = 0; i < n; ++i) grad[i] = kz[i] - fz[i];
    add_compliance_gradient(z, w, qbar, grad);
    st.kkt = kkt_residual(grad, z);
    if (st.kkt <= s.newton_tol) return st;

    for (std::size_t e = 0; e < ne; ++e) {
      const int i = bdof_[e];
      double lambda = 0.0;
      if (active[e]) lambda = -(kz[i] + d[e] * z[i] - rhs[i]);
      const double rho = weight_[e] * law_->lipschitz();
      active[e] = lambda + rho * (z[i] - g) > 0.0 ? 1 : 0;
    }
  }
  throw NewtonError(
      "active-set iteration exceeded newton_max with KKT residual " +
          std::to_string(st.kkt),
      st.kkt);
}

ViSolver::Result ViSolver::solve(const std::vector<double>& load,
                                 const WearField& w, double t,
                                 const SolverSettings& settings,
                                 const DisplacementField* warm_start) const {
  validate(settings);
  const int n = space_->n_free();
  if (static_cast<int>(load.size()) != n)
    throw std::invalid_argument("solve: load vector size mismatch");
  if (w.values.size() != space_->mesh().contact_nodes().size())
    throw std::invalid_argument("solve: wear field size mismatch");

  const Vec2 ns = n_star(*motion_, t);
  const double g = space_->gap();
  const std::size_t ne = ord_.size();

  std::vector<double> fz(n);
  rotate_in(load.data(), fz.data());

  std::vector<double> z(n, 0.0);
  if (warm_start) {
    if (static_cast<int>(warm_start->values.size()) != n)
      throw std::invalid_argument("solve: warm start size mismatch");
    rotate_in(warm_start->values.data(), z.data());
    for (std::size_t e = 0; e < ne; ++e)
      z[bdof_[e]] = std::min(z[bdof_[e]], g);
  }

  std::vector<double> qbar(ne), xi(ne);
  DisplacementField u_prev, u_cur, du;
  u_prev.values.resize(n);
  u_cur.values.resize(n);
  du.values.resize(n);
  rotate_out(z.data(), u_prev.values.data());

  StepReport rep;
  bool converged = false;
  for (int outer = 1; outer <= settings.fp_max; ++outer) {
    for (std::size_t e = 0; e < ne; ++e) {
      xi[e] = law_->p(z[bdof_[e]] - w.values[ord_[e]]);
      qbar[e] = weight_[e] * motion_->mu[ord_[e]] * xi[e] * dot(ns, tau_[e]);
    }
    const InnerStats st = inner_solve(z, fz, qbar, w, settings);
    rep.inner_iters_total += st.iterations;
    rep.kkt_residual = st.kkt;
    rep.outer_iters = outer;

    rotate_out(z.data(), u_cur.values.data());
    for (int i = 0; i < n; ++i)
      du.values[i] = u_cur.values[i] - u_prev.values[i];
    const double inc = space_->v_norm(du);
    rep.increments.push_back(inc);
    rep.final_increment = inc;
    if (inc <= settings.fp_tol) {
      converged = true;
      break;
    }
    std::swap(u_prev.values, u_cur.values);
  }
  if (!converged) {
    throw FixedPointError(
        "friction fixed point did not converge within fp_max iterations; "
        "last increment " +
            std::to_string(rep.final_increment),
        rep.final_increment);
  }

  rotate_out(z.data(), u_cur.values.data());

  // final multipliers from the gradient of the last frozen-friction energy
  std::vector<double> grad(n);
  apply_rotated_stiffness(z.data(), grad.data());
  for (int i = 0; i < n; ++i) grad[i] -= fz[i];
  for (std::size_t e = 0; e < ne; ++e) {
    grad[adof_[e]] += qbar[e];
    grad[bdof_[e]] += weight_[e] * law_->p(z[bdof_[e]] - w.values[ord_[e]]);
  }
  rep.multipliers.assign(space_->mesh().contact_nodes().size(), 0.0);
  for (std::size_t e = 0; e < ne; ++e) {
    if (z[bdof_[e]] >= g - kActiveTol) {
      rep.active_set.push_back(ord_[e]);
      rep.multipliers[ord_[e]] = -grad[bdof_[e]];
    }
  }

  Result res;
  res.u = std::move(u_cur);
  res.report = std::move(rep);
  return res;
}

double vi_residual(const SparseSymMatrix& stiffness, const FeSpace& space,
                   const ComplianceLaw& law, const FoundationMotion& motion,
                   double t, const WearField& w,
                   const std::vector<double>& load, const DisplacementField& u,
                   const std::vector<DisplacementField>& trials) {
  const int n = space.n_free();
  std::vector<double> ku(n);
  stiffness.multiply(u.values.data(), ku.data());
  const double phi_uu = phi_eval(space, law, motion, t, w, u, u);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> dv(n);
  for (const auto& v : trials) {
    if (!space.is_admissible(v).admissible)
      throw std::invalid_argument("vi_residual: inadmissible trial field");
    for (int i = 0; i < n; ++i) dv[i] = v.values[i] - u.values[i];
    const double term = kernels::dot(ku.data(), dv.data(), n) +
                        phi_eval(space, law, motion, t, w, u, v) - phi_uu -
                        kernels::dot(load.data(), dv.data(), n);
    best = std::min(best, term);
  }
  return best;
}

}  // namespace wearfem

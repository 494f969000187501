#pragma once

// Per-step solver for the frictional contact problem with a prescribed
// wear state: an outer fixed point freezes the friction pressure, and the
// resulting smooth convex bound-constrained program is solved by a
// primal-dual active-set Newton method in per-node (tangential, normal)
// coordinates. Linear systems use masked Jacobi-preconditioned CG, so all
// arithmetic goes through the runtime-dispatched kernels and iterates are
// bitwise reproducible for a fixed backend.

#include <stdexcept>
#include <string>
#include <vector>

#include "wearfem/contact_law.hpp"
#include "wearfem/csr.hpp"
#include "wearfem/fe_space.hpp"

namespace wearfem {

struct SolverSettings {
  double fp_tol = 1e-10;   // outer fixed-point tolerance, strain norm
  int fp_max = 200;        // outer iteration cap
  double newton_tol = 1e-12;  // inner KKT residual tolerance
  int newton_max = 100;       // inner iteration cap
};

struct StepReport {
  int outer_iters = 0;
  int inner_iters_total = 0;
  double final_increment = 0.0;
  std::vector<int> active_set;  // ordinals into contact_nodes, ascending
  double kkt_residual = 0.0;
  std::vector<double> increments;   // one per outer iteration
  std::vector<double> multipliers;  // per contact node, 0 when inactive
};

class FixedPointError : public std::runtime_error {
 public:
  FixedPointError(const std::string& what, double last_increment)
      : std::runtime_error(what), last_increment_(last_increment) {}
  double last_increment() const { return last_increment_; }

 private:
  double last_increment_;
};

class NewtonError : public std::runtime_error {
 public:
  NewtonError(const std::string& what, double kkt_residual)
      : std::runtime_error(what), kkt_residual_(kkt_residual) {}
  double kkt_residual() const { return kkt_residual_; }

 private:
  double kkt_residual_;
};

class ViSolver {
 public:
  // References must outlive the solver.
  ViSolver(const FeSpace& space, const SparseSymMatrix& stiffness,
           const ComplianceLaw& law, const FoundationMotion& motion);

  struct Result {
    DisplacementField u;
    StepReport report;
  };

  // Solves the variational inequality at time t with wear state w. The
  // warm start (previous step's solution) is projected onto the
  // constraint before use; null means the zero field.
  Result solve(const std::vector<double>& load, const WearField& w, double t,
               const SolverSettings& settings = {},
               const DisplacementField* warm_start = nullptr) const;

 private:
  struct InnerStats {
    int iterations = 0;
    double kkt = 0.0;
  };

  void rotate_in(const double* u, double* z) const;   // z_a=tau.u, z_b=nu.u
  void rotate_out(const double* z, double* u) const;  // inverse map
  void apply_rotated_stiffness(const double* z, double* y) const;
  void add_compliance_gradient(const std::vector<double>& z,
                               const WearField& w,
                               const std::vector<double>& qbar,
                               std::vector<double>& g) const;
  double kkt_residual(const std::vector<double>& grad,
                      const std::vector<double>& z) const;
  InnerStats inner_solve(std::vector<double>& z, const std::vector<double>& fz,
                         const std::vector<double>& qbar, const WearField& w,
                         const SolverSettings& s) const;

  const FeSpace* space_;
  const SparseSymMatrix* stiffness_;
  const ComplianceLaw* law_;
  const FoundationMotion* motion_;

  // one entry per non-clamped contact node
  std::vector<int> ord_;      // ordinal into contact_nodes
  std::vector<int> adof_;     // tangential slot (x DOF of the node)
  std::vector<int> bdof_;     // normal slot (y DOF of the node)
  std::vector<Vec2> tau_;
  std::vector<Vec2> nu_;
  std::vector<double> weight_;
  std::vector<int> entry_of_slot_;    // free DOF -> entry index or -1
  std::vector<double> base_diag_;     // diagonal of the rotated stiffness
  mutable std::vector<double> scratch_u_, scratch_y_;
};

// min over trial fields v of
//   <Ku, v-u> + phi(t,w,u,v) - phi(t,w,u,u) - load.(v-u);
// nonnegative (within tolerance) exactly at a solution. Trials must be
// admissible.
double vi_residual(const SparseSymMatrix& stiffness, const FeSpace& space,
                   const ComplianceLaw& law, const FoundationMotion& motion,
                   double t, const WearField& w,
                   const std::vector<double>& load, const DisplacementField& u,
                   const std::vector<DisplacementField>& trials);

}  // namespace wearfem

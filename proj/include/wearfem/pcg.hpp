#pragma once

// Jacobi-preconditioned conjugate gradients on a caller-supplied operator.
// All inner products and updates go through the kernels layer, so the
// iteration is bitwise reproducible for a fixed backend.

#include <functional>
#include <vector>

namespace wearfem {

struct PcgResult {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

using ApplyOp = std::function<void(const double*, double*)>;

// Solves A x = b to |r| <= rel_tol * |b| (absolute when b = 0), starting
// from the passed-in x. diag holds the diagonal of A for preconditioning;
// nonpositive entries fall back to identity scaling.
PcgResult pcg_solve(const ApplyOp& apply, const std::vector<double>& diag,
                    const std::vector<double>& b, std::vector<double>& x,
                    double rel_tol, int max_iter);

}  // namespace wearfem

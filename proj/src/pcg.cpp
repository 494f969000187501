#include "wearfem/pcg.hpp"

#include <cmath>

#include "wearfem/kernels.hpp"

namespace wearfem {

PcgResult pcg_solve(const ApplyOp& apply, const std::vector<double>& diag,
                    const std::vector<double>& b, std::vector<double>& x,
                    double rel_tol, int max_iter) {
  const std::size_t n = b.size();
  PcgResult res;
  if (n == 0) {
    res.converged = true;
    return res;
  }

  std::vector<double> inv_d(n);
  for (std::size_t i = 0; i < n; ++i)
    inv_d[i] = diag[i] > 0.0 ? 1.0 / diag[i] : 1.0;

  std::vector<double> r(n), z(n), p(n), q(n);
  apply(x.data(), q.data());
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];

  const double b_norm = std::sqrt(kernels::dot(b.data(), b.data(), n));
  const double stop = rel_tol * (b_norm > 0.0 ? b_norm : 1.0);

  double r_norm = std::sqrt(kernels::dot(r.data(), r.data(), n));
  if (r_norm <= stop) {
    res.converged = true;
    res.rel_residual = b_norm > 0.0 ? r_norm / b_norm : r_norm;
    return res;
  }

  for (std::size_t i = 0; i < n; ++i) z[i] = inv_d[i] * r[i];
  p = z;
  double rz = kernels::dot(r.data(), z.data(), n);

  for (int it = 1; it <= max_iter; ++it) {
    apply(p.data(), q.data());
    const double pq = kernels::dot(p.data(), q.data(), n);
    if (pq <= 0.0) break;  // loss of positive definiteness
    const double a = rz / pq;
    kernels::cg_update(a, p.data(), q.data(), x.data(), r.data(), n);

    r_norm = std::sqrt(kernels::dot(r.data(), r.data(), n));
    res.iterations = it;
    if (r_norm <= stop) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_d[i] * r[i];
    const double rz_new = kernels::dot(r.data(), z.data(), n);
    kernels::xpby(z.data(), rz_new / rz, p.data(), n);
    rz = rz_new;
  }
  res.rel_residual = b_norm > 0.0 ? r_norm / b_norm : r_norm;
  return res;
}

}  // namespace wearfem

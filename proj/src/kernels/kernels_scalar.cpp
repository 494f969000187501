#include "wearfem/kernels.hpp"

// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.

namespace wearfem::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby_scalar(const double* r, double beta, double* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void cg_update_scalar(double a, const double* p, const double* q, double* x,
                      double* r, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += a * p[i];
    r[i] -= a * q[i];
  }
}

void csr_matvec_scalar(const std::int32_t* row_ptr, const std::int32_t* col,
                       const double* val, std::size_t rows, const double* x,
                       double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      s += val[k] * x[col[k]];
    y[i] = s;
  }
}

}  // namespace wearfem::kernels::detail

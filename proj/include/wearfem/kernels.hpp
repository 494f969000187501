#pragma once

// Vector and sparse-matrix kernels used by the iterative solvers.
// A scalar reference implementation is always available; an AVX2+FMA
// variant is selected at runtime when the CPU supports it. Both variants
// compute the same quantities with fixed (per-variant) reduction orders,
// so repeated runs on the same machine are bitwise reproducible.

#include <cstddef>
#include <cstdint>
#include <string>

namespace wearfem::kernels {

enum class Backend { Scalar, Avx2 };

// Active backend. Defaults to the best supported one; override is global.
Backend active_backend();
void select_backend(Backend b);
bool avx2_available();
std::string backend_name(Backend b);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// p[i] = r[i] + beta * p[i]   (CG direction update)
void xpby(const double* r, double beta, double* p, std::size_t n);

// dot product, fixed reduction order per backend
double dot(const double* x, const double* y, std::size_t n);

// x[i] += a*p[i]; r[i] -= a*q[i]   (fused CG solution/residual update)
void cg_update(double a, const double* p, const double* q, double* x,
               double* r, std::size_t n);

// y = A x for a CSR matrix (row_ptr has rows+1 entries)
void csr_matvec(const std::int32_t* row_ptr, const std::int32_t* col,
                const double* val, std::size_t rows, const double* x,
                double* y);

}  // namespace wearfem::kernels

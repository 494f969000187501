#include "wearfem/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace wearfem::kernels {

namespace detail {

void axpy_scalar(double, const double*, double*, std::size_t);
void xpby_scalar(const double*, double, double*, std::size_t);
double dot_scalar(const double*, const double*, std::size_t);
void cg_update_scalar(double, const double*, const double*, double*, double*,
                      std::size_t);
void csr_matvec_scalar(const std::int32_t*, const std::int32_t*, const double*,
                       std::size_t, const double*, double*);

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define WEARFEM_HAS_AVX2 1
void axpy_avx2(double, const double*, double*, std::size_t);
void xpby_avx2(const double*, double, double*, std::size_t);
double dot_avx2(const double*, const double*, std::size_t);
void cg_update_avx2(double, const double*, const double*, double*, double*,
                    std::size_t);
void csr_matvec_avx2(const std::int32_t*, const std::int32_t*, const double*,
                     std::size_t, const double*, double*);
#endif

}  // namespace detail

bool avx2_available() {
#ifdef WEARFEM_HAS_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend default_backend() {
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend> g_backend{default_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void select_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw std::runtime_error("kernels: AVX2 backend not supported on this CPU");
  g_backend.store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#ifdef WEARFEM_HAS_AVX2
  if (active_backend() == Backend::Avx2)
    return detail::axpy_avx2(a, x, y, n);
#endif
  detail::axpy_scalar(a, x, y, n);
}

void xpby(const double* r, double beta, double* p, std::size_t n) {
#ifdef WEARFEM_HAS_AVX2
  if (active_backend() == Backend::Avx2)
    return detail::xpby_avx2(r, beta, p, n);
#endif
  detail::xpby_scalar(r, beta, p, n);
}

double dot(const double* x, const double* y, std::size_t n) {
#ifdef WEARFEM_HAS_AVX2
  if (active_backend() == Backend::Avx2) return detail::dot_avx2(x, y, n);
#endif
  return detail::dot_scalar(x, y, n);
}

void cg_update(double a, const double* p, const double* q, double* x,
               double* r, std::size_t n) {
#ifdef WEARFEM_HAS_AVX2
  if (active_backend() == Backend::Avx2)
    return detail::cg_update_avx2(a, p, q, x, r, n);
#endif
  detail::cg_update_scalar(a, p, q, x, r, n);
}

void csr_matvec(const std::int32_t* row_ptr, const std::int32_t* col,
                const double* val, std::size_t rows, const double* x,
                double* y) {
#ifdef WEARFEM_HAS_AVX2
  if (active_backend() == Backend::Avx2)
    return detail::csr_matvec_avx2(row_ptr, col, val, rows, x, y);
#endif
  detail::csr_matvec_scalar(row_ptr, col, val, rows, x, y);
}

}  // namespace wearfem::kernels

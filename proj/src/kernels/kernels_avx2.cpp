#include "wearfem/kernels.hpp"

// AVX2+FMA kernels. Compiled with per-function target attributes so the
// rest of the binary stays generic; only reached after a runtime CPU check.

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))

#include <immintrin.h>

#define WEARFEM_AVX2 __attribute__((target("avx2,fma")))

namespace wearfem::kernels::detail {

WEARFEM_AVX2
void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, xv, yv));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

WEARFEM_AVX2
void xpby_avx2(const double* r, double beta, double* p, std::size_t n) {
  const __m256d bv = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d rv = _mm256_loadu_pd(r + i);
    __m256d pv = _mm256_loadu_pd(p + i);
    _mm256_storeu_pd(p + i, _mm256_fmadd_pd(bv, pv, rv));
  }
  for (; i < n; ++i) p[i] = r[i] + beta * p[i];
}

WEARFEM_AVX2
double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_fmadd_pd(xv, yv, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

WEARFEM_AVX2
void cg_update_avx2(double a, const double* p, const double* q, double* x,
                    double* r, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  const __m256d nav = _mm256_set1_pd(-a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d pv = _mm256_loadu_pd(p + i);
    _mm256_storeu_pd(x + i, _mm256_fmadd_pd(av, pv, xv));
    __m256d rv = _mm256_loadu_pd(r + i);
    __m256d qv = _mm256_loadu_pd(q + i);
    _mm256_storeu_pd(r + i, _mm256_fmadd_pd(nav, qv, rv));
  }
  for (; i < n; ++i) {
    x[i] += a * p[i];
    r[i] -= a * q[i];
  }
}

WEARFEM_AVX2
void csr_matvec_avx2(const std::int32_t* row_ptr, const std::int32_t* col,
                     const double* val, std::size_t rows, const double* x,
                     double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int32_t b = row_ptr[i];
    const std::int32_t e = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int32_t k = b;
    for (; k + 4 <= e; k += 4) {
      __m256d vv = _mm256_loadu_pd(val + k);
      __m256d xv = _mm256_set_pd(x[col[k + 3]], x[col[k + 2]],
                                 x[col[k + 1]], x[col[k]]);
      acc = _mm256_fmadd_pd(vv, xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; k < e; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

}  // namespace wearfem::kernels::detail

#endif  // __x86_64__

// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma;
// callers must only reach it through the dispatch table after the CPU
// check in kernels.cpp.

#if defined(TURAN_HAVE_AVX2)

#include <immintrin.h>

#include "turan/kernels.hpp"

namespace turan::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}

void sqmag_avx2(const double* re, const double* im, double* out,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vr = _mm256_loadu_pd(re + i);
    __m256d vi = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i,
                     _mm256_fmadd_pd(vr, vr, _mm256_mul_pd(vi, vi)));
  }
  for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void trig_row_avx2(const double* c, const double* s, const double* re,
                   const double* im, std::size_t n, double out[4]) {
  __m256d cr = _mm256_setzero_pd();
  __m256d ci = _mm256_setzero_pd();
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vc = _mm256_loadu_pd(c + i);
    __m256d vs = _mm256_loadu_pd(s + i);
    __m256d vr = _mm256_loadu_pd(re + i);
    __m256d vi = _mm256_loadu_pd(im + i);
    cr = _mm256_fmadd_pd(vc, vr, cr);
    ci = _mm256_fmadd_pd(vc, vi, ci);
    sr = _mm256_fmadd_pd(vs, vr, sr);
    si = _mm256_fmadd_pd(vs, vi, si);
  }
  double r0 = hsum(cr), r1 = hsum(ci), r2 = hsum(sr), r3 = hsum(si);
  for (; i < n; ++i) {
    r0 += c[i] * re[i];
    r1 += c[i] * im[i];
    r2 += s[i] * re[i];
    r3 += s[i] * im[i];
  }
  out[0] = r0;
  out[1] = r1;
  out[2] = r2;
  out[3] = r3;
}

}  // namespace

const Ops& avx2() {
  static const Ops ops = {"avx2",      dot_avx2, axpy_avx2,  scal_avx2,
                          sum_avx2,    sqmag_avx2, trig_row_avx2};
  return ops;
}

}  // namespace turan::kernels

#endif  // TURAN_HAVE_AVX2

// NEON kernels for arm64. NEON is baseline on aarch64, so no special
// compile flags are needed; the dispatcher still gates on the build macro.

#if defined(TURAN_HAVE_NEON)

#include <arm_neon.h>

#include "turan/kernels.hpp"

namespace turan::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_neon(double alpha, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum_neon(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}

void sqmag_neon(const double* re, const double* im, double* out,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vr = vld1q_f64(re + i);
    float64x2_t vi = vld1q_f64(im + i);
    vst1q_f64(out + i, vfmaq_f64(vmulq_f64(vi, vi), vr, vr));
  }
  for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void trig_row_neon(const double* c, const double* s, const double* re,
                   const double* im, std::size_t n, double out[4]) {
  float64x2_t cr = vdupq_n_f64(0.0), ci = cr, sr = cr, si = cr;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vc = vld1q_f64(c + i);
    float64x2_t vs = vld1q_f64(s + i);
    float64x2_t vr = vld1q_f64(re + i);
    float64x2_t vi = vld1q_f64(im + i);
    cr = vfmaq_f64(cr, vc, vr);
    ci = vfmaq_f64(ci, vc, vi);
    sr = vfmaq_f64(sr, vs, vr);
    si = vfmaq_f64(si, vs, vi);
  }
  double r0 = vaddvq_f64(cr), r1 = vaddvq_f64(ci);
  double r2 = vaddvq_f64(sr), r3 = vaddvq_f64(si);
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

const Ops& neon() {
  static const Ops ops = {"neon",      dot_neon, axpy_neon,  scal_neon,
                          sum_neon,    sqmag_neon, trig_row_neon};
  return ops;
}

}  // namespace turan::kernels

#endif  // TURAN_HAVE_NEON

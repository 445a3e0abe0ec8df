// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against; keep them simple sequential loops.

#include "turan/kernels.hpp"

namespace turan::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void sqmag_scalar(const double* re, const double* im, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void trig_row_scalar(const double* c, const double* s, const double* re,
                     const double* im, std::size_t n, double out[4]) {
  double cr = 0.0, ci = 0.0, sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cr += c[i] * re[i];
    ci += c[i] * im[i];
    sr += s[i] * re[i];
    si += s[i] * im[i];
  }
  out[0] = cr;
  out[1] = ci;
  out[2] = sr;
  out[3] = si;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops = {"scalar",      dot_scalar, axpy_scalar,
                          scal_scalar,   sum_scalar, sqmag_scalar,
                          trig_row_scalar};
  return ops;
}

}  // namespace turan::kernels

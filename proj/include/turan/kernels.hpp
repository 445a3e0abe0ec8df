#pragma once
// Hot inner loops shared by the DFT passes, the simplex pivots and the
// spectrum scans. A scalar reference implementation always exists; wider
// variants (AVX2 on x86-64, NEON on arm64) are compiled separately and one
// of them is picked once at startup. The environment variable TURAN_KERNELS
// (scalar | avx2 | neon | auto) overrides the automatic choice.
//
// All variants use a fixed accumulation order per lane width, so results
// are reproducible run-to-run on the same machine and variant.

#include <cstddef>
#include <string>

namespace turan::kernels {

struct Ops {
  const char* name;
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha*x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] *= alpha
  void (*scal)(double alpha, double* x, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // out[i] = re[i]^2 + im[i]^2
  void (*sqmag)(const double* re, const double* im, double* out, std::size_t n);
  // Fused four-way dot against one cos/sin table row:
  // out = { c.re, c.im, s.re, s.im }. This is the whole inner loop of a
  // dense DFT pass, kept fused so the table row is read once.
  void (*trig_row)(const double* c, const double* s, const double* re,
                   const double* im, std::size_t n, double out[4]);
};

const Ops& scalar();

// Runtime-selected variant (cached after first call).
const Ops& active();

// Every variant compiled into this binary, scalar first.
const Ops* const* variants(std::size_t* count);

// Force a variant by name; returns false if the name is unknown or the CPU
// does not support it. Intended for tests and for the TURAN_KERNELS override.
bool select(const std::string& name);

}  // namespace turan::kernels

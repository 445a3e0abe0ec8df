#pragma once
// Grid functions on the torus and the discrete transforms the whole
// artifact runs on. The forward transform carries the Riemann weight h^d,
// so grid integrals and the transform at frequency zero agree:
//   F(xi_m) = h^d sum_k f(x_k) exp(-2 pi i m.k / N),
//   f(x_k)  = (1/L)^d sum_m F(xi_m) exp(+2 pi i m.k / N).
// Transforms are separable dense passes backed by the kernel table.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "turan/geometry.hpp"
#include "turan/grid.hpp"

namespace turan::torus {

enum class Domain { space, frequency };

struct GridFunction {
  TorusGrid grid;
  std::vector<double> values;
  Domain domain = Domain::space;

  explicit GridFunction(const TorusGrid& g, Domain dom = Domain::space)
      : grid(g), values(g.size(), 0.0), domain(dom) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  double at_origin() const { return values[grid.origin()]; }

  double max_abs() const;
  bool is_symmetric(double tol = 1e-12) const;  // values(k) == values(-k)
  void symmetrize();                            // average k and -k exactly
};

// Indicator of the closure of the body; rejects bodies that do not fit in
// the open period cube (wrap-around would corrupt supports).
GridFunction rasterize(const geometry::ConvexBody& body,
                       const TorusGrid& grid);

// Forward/inverse transform of a real symmetric function. Throws if the
// input is not symmetric (the transform would not be real).
GridFunction dft(const GridFunction& f);
GridFunction idft(const GridFunction& F);

// g * ~g with ~g(x) = g(-x), computed as idft(|dft(g)|^2). Works for any
// real g. If supp(g) reaches outside the half period cube the circular wrap
// makes this a torus autocorrelation; wrap_warning is set in that case.
GridFunction autocorrelate(const GridFunction& g,
                           bool* wrap_warning = nullptr);

struct SpectrumMin {
  double value;
  std::vector<int> frequency;  // signed multi-index
};
SpectrumMin min_spectrum(const GridFunction& f);

bool is_positive_definite(const GridFunction& f, double tol);

// sum over lattice translates modulo the torus. The lattice must be
// commensurate: each generator column divided by h must be integer and
// L e_j must be a lattice point. Throws naming the failing column.
GridFunction periodize(const GridFunction& f, const geometry::Lattice& lat);

// Commensurate lattice points as storage offsets of one period.
std::vector<std::vector<int>> lattice_grid_points(const geometry::Lattice& lat,
                                                  const TorusGrid& grid);

// CSV: one row per node (signed index, coordinates, value).
void write_csv(const GridFunction& f, std::ostream& os);
// Binary dump: u32 dim, u32 N, f64 L, then values in index order
// (little-endian 64-bit floats).
void write_binary(const GridFunction& f, std::ostream& os);
GridFunction read_binary(std::istream& is);

}  // namespace turan::torus

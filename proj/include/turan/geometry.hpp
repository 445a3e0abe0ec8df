#pragma once
// Symmetric convex bodies (box, ball, half-space polytope) and full-rank
// lattices. Bodies are centrally symmetric with 0 in the interior; polytopes
// store one row per +- pair and materialize both, so symmetry cannot be
// violated by construction.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "turan/grid.hpp"

namespace turan::geometry {

struct HalfSpace {
  std::vector<double> normal;  // a
  double offset;               // b > 0; the half-space is a.x <= b
};

class ConvexBody {
 public:
  enum class Kind { box, ball, hpolytope };

  static ConvexBody box(std::vector<double> halfwidths);
  static ConvexBody ball(int dim, double radius);
  // One row per +- pair; the mirrored rows are added internally. Throws if
  // the normals do not positively span (unbounded polytope) or an offset is
  // not positive.
  static ConvexBody hpolytope(int dim, std::vector<HalfSpace> rows);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  bool contains(std::span<const double> x) const;  // closure membership
  ConvexBody scaled(double t) const;               // t >= 0; t=0 gives {0}
  double inradius() const;

  // Exact volume when a formula exists (box, ball, 2D polytope).
  std::optional<double> exact_volume() const;
  // Node count in the closure times h^d.
  double grid_volume(const TorusGrid& grid) const;

  // Euclidean / sup-norm circumradii. Exact for box, ball and 2D polytopes;
  // for higher-dimensional polytopes computed by bounding LPs.
  double circumradius() const;
  double circumradius_inf() const;

  const std::vector<double>& halfwidths() const { return halfwidths_; }
  double radius() const { return radius_; }
  // Materialized rows (both signs) for hpolytope.
  std::span<const HalfSpace> rows() const { return rows_; }

  // Counter-clockwise vertex list of a 2D polytope.
  std::vector<std::array<double, 2>> vertices2d() const;

  std::string describe() const;

 private:
  ConvexBody() = default;
  Kind kind_ = Kind::box;
  int dim_ = 0;
  std::vector<double> halfwidths_;
  double radius_ = 0.0;
  std::vector<HalfSpace> rows_;  // materialized +- pairs
  bool point_only_ = false;      // result of scaling by t = 0
};

class Lattice {
 public:
  // Column-major generator, columns are basis vectors. Throws if |det| is
  // numerically zero.
  Lattice(std::vector<double> generator_colmajor, int dim);

  int dim() const { return dim_; }
  double det_abs() const { return det_abs_; }
  double density() const { return 1.0 / det_abs_; }
  const std::vector<double>& generator() const { return gen_; }
  double entry(int row, int col) const { return gen_[col * dim_ + row]; }

  Lattice dual() const;  // inverse-transpose generator

  // G * coeffs
  std::vector<double> point(std::span<const int> coeffs) const;
  // Solve G y = x  (for commensurability and membership tests)
  std::vector<double> coordinates(std::span<const double> x) const;

 private:
  int dim_;
  std::vector<double> gen_;
  double det_abs_;
};

double lattice_density(const Lattice& lat);

// |numeric dist{alpha Omega, (beta Omega)^c} - r (beta - alpha)| on the grid.
// Requires 0 <= alpha <= beta and beta*Omega inside the period cube.
double distance_lemma_residual(const ConvexBody& body, double alpha,
                               double beta, const TorusGrid& grid);

}  // namespace turan::geometry

#include "turan/candidate.hpp"

#include <cmath>
#include <stdexcept>

namespace turan::candidate {

torus::GridFunction turan_candidate(const geometry::ConvexBody& body,
                                    const TorusGrid& grid) {
  torus::GridFunction half = torus::rasterize(body.scaled(0.5), grid);
  torus::GridFunction f = torus::autocorrelate(half);
  const double peak = f.at_origin();
  if (!(peak > 0.0))
    throw std::runtime_error(
        "turan_candidate: half body rasterizes to nothing (grid too coarse)");

  // Normalize to f(0) = 1 exactly and clip the roundoff dust outside the
  // closure of Omega; supp(half)+supp(half) lies inside Omega by convexity,
  // so only transform noise is removed.
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    if (!body.contains(x)) {
      f.values[i] = 0.0;
    } else {
      f.values[i] /= peak;
    }
  }
  f.values[grid.origin()] = 1.0;
  f.symmetrize();
  return f;
}

double candidate_value(const geometry::ConvexBody& body, const TorusGrid* grid,
                       bool* exact_used) {
  const double scale = std::pow(0.5, body.dim());
  if (auto vol = body.exact_volume()) {
    if (exact_used) *exact_used = true;
    return scale * *vol;
  }
  if (!grid)
    throw std::invalid_argument(
        "candidate_value: no exact volume and no grid for the estimate");
  if (exact_used) *exact_used = false;
  return scale * body.grid_volume(*grid);
}

double candidate_gap(const geometry::ConvexBody& body, const TorusGrid& grid) {
  torus::GridFunction f = turan_candidate(body, grid);
  double sum = 0.0;
  for (double v : f.values) sum += v;
  const double integral = sum * std::pow(grid.spacing(), grid.dim());
  return std::abs(integral - candidate_value(body, &grid));
}

}  // namespace turan::candidate

#pragma once
// The conjectured extremal function: the indicator of the half-body
// convolved with itself, normalized to 1 at the origin. Its closed-form
// integral 2^{-d} |Omega| is the feasibility lower bound the LP is
// measured against.

#include "turan/geometry.hpp"
#include "turan/torus.hpp"

namespace turan::candidate {

// Normalized grid autocorrelation of the rasterized half body. The value at
// the origin is exactly 1, support is clipped to the closure of Omega, and
// the result is symmetric to machine precision.
torus::GridFunction turan_candidate(const geometry::ConvexBody& body,
                                    const TorusGrid& grid);

// 2^{-d} |Omega|. Uses the exact volume when available, otherwise the grid
// estimate; *exact_used reports which.
double candidate_value(const geometry::ConvexBody& body,
                       const TorusGrid* grid = nullptr,
                       bool* exact_used = nullptr);

// | h^d sum(candidate) - candidate_value |
double candidate_gap(const geometry::ConvexBody& body, const TorusGrid& grid);

}  // namespace turan::candidate

#pragma once
// Tiling and spectral-pair machinery: coverage multiplicity of lattice
// translates, the Fourier transform of body indicators, exponential-basis
// orthogonality and the Parseval level, the dual-lattice support condition,
// and empirical point densities.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "turan/geometry.hpp"
#include "turan/torus.hpp"

namespace turan::tiling {

struct CoverageReport {
  int min_multiplicity = 0;
  int max_multiplicity = 0;
  double fraction_exactly_one = 0.0;
  std::vector<std::vector<double>> offending_nodes;  // up to 10
  // Nodes on shared translate boundaries count twice under the closure
  // rule, so the verdict is on the fraction, not on min/max alone.
  bool passes(double min_fraction = 0.95) const {
    return fraction_exactly_one >= min_fraction;
  }
};

struct SpectralOptions {
  double truncation_radius = 40.0;  // lambda enumeration radius
  int num_samples = 8;              // x samples for the Parseval level
  unsigned long long seed = 0;
  double orth_tol = 1e-9;           // |chi_hat| at nonzero lattice points
  double parseval_tol = 1e-3;       // relative to |Omega|^2
  // for quadrature-only bodies (polytopes in d >= 3)
  const TorusGrid* quad_grid = nullptr;
};

enum class SpectralStatus { pass, fail, inconclusive };
const char* to_string(SpectralStatus s);

struct SpectralReport {
  double max_offdiagonal = 0.0;     // max |chi_hat(lambda)| over nonzero pts
  std::vector<double> worst_pair;   // the lattice point attaining it
  double parseval_level_error = 0.0;  // |extrapolated level - |Omega|^2|, max over samples
  double parseval_level_error_raw = 0.0;  // same for the truncated sum
  double tail_estimate = 0.0;       // size of the extrapolated tail
  int pairs_tested = 0;
  int lambdas_used = 0;
  SpectralStatus status = SpectralStatus::fail;
};

enum class SupportVerdict { pass, fail, boundary };
const char* to_string(SupportVerdict v);

struct SupportReport {
  SupportVerdict verdict = SupportVerdict::pass;
  std::optional<std::vector<double>> witness;  // offending dual point
  // The support condition itself uses the open 2*Omega, so boundary contact
  // still satisfies it; it is flagged because it is discretization-sensitive.
  bool holds() const { return verdict != SupportVerdict::fail; }
};

// Fourier transform of the indicator at one frequency. Closed forms: box
// (product of sines), 2D ball (Bessel J1), 2D polytope (edge integration).
// Polytopes in d >= 3 need a quadrature grid; throws without one.
std::complex<double> ft_indicator(const geometry::ConvexBody& body,
                                  std::span<const double> xi,
                                  const TorusGrid* quad_grid = nullptr);

// Multiplicity of lattice translates of the body over the nodes of one
// period cell, by direct window enumeration (no commensurability needed).
CoverageReport lattice_tiling_check(const geometry::ConvexBody& body,
                                    const geometry::Lattice& lat,
                                    const TorusGrid& grid);

// Orthogonality of E_Lambda on the body plus the Parseval level
// sum_lambda |chi_hat(x - lambda)|^2 = |Omega|^2, checked at sampled x with
// the truncation tail extrapolated from the decay over the outer shells.
SpectralReport spectral_pair_check(const geometry::ConvexBody& body,
                                   const geometry::Lattice& spectrum,
                                   const SpectralOptions& options = {});

// Lattice specialization of the support condition: no nonzero dual-lattice
// point may lie in 2*Omega. Points on the boundary get their own verdict.
SupportReport support_condition_check(const geometry::ConvexBody& body,
                                      const geometry::Lattice& spectrum);

struct DensityReport {
  double mean = 0.0;
  double spread = 0.0;  // max - min over the windows
  int windows = 0;
};

// #(points in B_R(center)) / |B_R| over the given windows; radii must be > 1.
DensityReport density_estimate(
    const std::vector<std::vector<double>>& points,
    const std::vector<std::vector<double>>& centers,
    const std::vector<double>& radii);

// Point mass of the transformed lattice measure at 0; equals the density
// 1/|det G| by Poisson summation.
double at_zero_mass(const geometry::Lattice& lat);

// Lattice points with |G k| <= radius (used by density tests and scans).
std::vector<std::vector<double>> lattice_points_in_ball(
    const geometry::Lattice& lat, double radius);

}  // namespace turan::tiling

#pragma once
// Spherical averaging (d = 2), the Cauchy-Schwarz / Brunn-Minkowski chain
// for autocorrelations, and the ball check.

#include "turan/geometry.hpp"
#include "turan/solver.hpp"
#include "turan/torus.hpp"

namespace turan::radial {

// Average of f over n_angles uniform rotations with bilinear interpolation.
// Preserves the value at the origin exactly. Only d = 2.
torus::GridFunction radialize(const torus::GridFunction& f, int n_angles);

struct ChainReport {
  double integral_f = 0.0;        // A = h^d sum(g * ~g)
  double integral_g_squared = 0.0;  // |h^d sum g|^2, equals A up to roundoff
  double cauchy_schwarz = 0.0;    // B = |K| h^d sum g^2
  double brunn_minkowski = 0.0;   // C = 2^{-d} |K - K| h^d sum g^2
  bool identity_ok = false;       // |A - |int g|^2| small
  bool chain_ok = false;          // A <= B <= C
  bool equality_ok = false;       // B == C for symmetric K
};

// Requires supp g inside K (grid membership).
ChainReport chain_check(const torus::GridFunction& g,
                        const geometry::ConvexBody& k_body);

struct BallReport {
  solver::TuranSolution solution;
  double target = 0.0;            // 2^{-d} |B| = pi/4 for the unit disk
  double value_vs_target = 0.0;   // |value - target| / target
  double radial_value = 0.0;      // h^d sum of the radialized optimum
  double radial_value_change = 0.0;
  double radial_min_spectrum = 0.0;
  bool radial_pd_ok = false;       // pd within 1e-6 after averaging
  bool radial_support_ok = false;  // support within one grid cell of Omega
  double candidate_fixed_point = 0.0;  // max |radialize(cand) - cand|
};

BallReport ball_turan_check(double length, int n, int n_angles = 64,
                            double tol_pd = 1e-8);

}  // namespace turan::radial

#pragma once
// Discretized Turan problem as a cutting-plane LP:
//   maximize h^d sum f  over symmetric f supported in Omega, f(0) = 1,
//   subject to nonnegativity of the discrete spectrum.
//
// Variables are orbit representatives {x, -x}; the pool of frequency
// constraints starts from frequency zero plus the axis units and grows by
// the most violated frequencies each round until the full spectrum is
// clean at tol_pd.

#include <string>
#include <utility>
#include <vector>

#include "turan/candidate.hpp"
#include "turan/geometry.hpp"
#include "turan/torus.hpp"

namespace turan::solver {

struct TuranProblem {
  geometry::ConvexBody body;
  TorusGrid grid;
  double tol_pd = 1e-8;
  double tol_lp = 1e-9;
  int max_cuts = 0;        // 0 means the default 50 * N^{d/2}
  int cuts_per_round = 16;

  TuranProblem(geometry::ConvexBody b, TorusGrid g)
      : body(std::move(b)), grid(g) {}
  int effective_max_cuts() const;
  void validate() const;  // 2*Omega inside the period cube, tolerances > 0
};

enum class SolveStatus { certified, cut_budget_exhausted, infeasible_numerics };
const char* to_string(SolveStatus s);

struct TuranSolution {
  torus::GridFunction f;
  double value = 0.0;            // h^d sum f
  double ratio = 0.0;            // value / candidate grid integral
  double ratio_exact = 0.0;      // value / (2^{-d} |Omega|)
  double candidate_integral = 0.0;
  double candidate_value = 0.0;
  double worst_violation = 0.0;  // -min spectrum at termination, clamped at 0
  int rounds = 0;
  std::vector<std::vector<int>> active_frequencies;  // signed multi-indices
  std::vector<double> cut_duals;  // dual weight per active frequency
  SolveStatus status = SolveStatus::infeasible_numerics;
  double duality_gap = 0.0;
  std::vector<double> round_values;  // restricted-LP optimum per round
  long lp_iterations = 0;            // simplex pivots over all rounds
  bool lp_bland_engaged = false;     // anti-cycling fallback was needed
};

TuranSolution solve_turan(const TuranProblem& p);

// Same LP with every frequency constraint materialized up front. Guarded to
// N^d <= 4096; ground truth for solve_turan.
TuranSolution dense_oracle(const TuranProblem& p);

struct VerifyReport {
  bool support_ok = false;   // f vanishes outside the closure of Omega
  bool origin_ok = false;    // f(0) == 1 exactly
  bool pd_ok = false;        // full spectrum >= -tol_pd
  bool value_ok = false;     // recomputed value matches
  double recomputed_value = 0.0;
  double min_spectrum = 0.0;
  bool all_ok() const { return support_ok && origin_ok && pd_ok && value_ok; }
};
VerifyReport verify_solution(const TuranSolution& s, const TuranProblem& p);

struct StudyRow {
  double length = 0.0;
  int n = 0;
  double value = 0.0;
  double ratio = 0.0;
  double worst_violation = 0.0;
  int rounds = 0;
  double seconds = 0.0;
  std::string status;
  std::string error;  // nonempty if this row failed
};

std::vector<StudyRow> refine_study(
    const geometry::ConvexBody& body,
    const std::vector<std::pair<double, int>>& grids);

}  // namespace turan::solver

// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exits nonzero if any criterion fails. Criteria 1 and 4 compare the
// certified torus value against the line-problem constant at a fixed grid;
// the measured convergence trend is printed next to them because the
// discretized optimum approaches that constant only as the grid refines.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "turan/candidate.hpp"
#include "turan/radial.hpp"
#include "turan/solver.hpp"
#include "turan/tiling.hpp"
#include "turan/torus.hpp"

using namespace turan;
using geometry::ConvexBody;
using geometry::Lattice;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const char* fmt, ...) {
  if (!pass) ++g_failures;
  std::printf("criterion %2d: %s  ", criterion, pass ? "PASS" : "FAIL");
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stdout, fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct SolveOutcome {
  solver::TuranSolution sol;
  double seconds;
};

SolveOutcome run_solve(const ConvexBody& body, double length, int n) {
  solver::TuranProblem p(body, TorusGrid(body.dim(), n, length));
  const double t0 = now_seconds();
  solver::TuranSolution s = solver::solve_turan(p);
  return {std::move(s), now_seconds() - t0};
}

bool pd_bound_holds(const torus::GridFunction& f) {
  const double f0 = f.at_origin();
  for (double v : f.values)
    if (std::abs(v) > f0 + 1e-9) return false;
  return true;
}

}  // namespace

int main() {
  std::vector<const torus::GridFunction*> lp_solutions;

  // --- 1: interval, L=4, N=256 --------------------------------------------
  auto interval = ConvexBody::box({1.0});
  SolveOutcome c1 = run_solve(interval, 4.0, 256);
  const double cand_gap1 =
      candidate::candidate_gap(interval, TorusGrid(1, 256, 4.0));
  {
    const bool certified = c1.sol.status == solver::SolveStatus::certified;
    const bool value_ok = std::abs(c1.sol.value - 1.0) <= 0.02;
    const bool cand_ok = std::abs(c1.sol.candidate_integral - 1.0) <= 0.02;
    const bool time_ok = c1.seconds <= 30.0;
    // context: the certified torus value falls toward 1.0 roughly like
    // sqrt(h); print the measured refinement next to the verdict
    auto t512 = run_solve(interval, 4.0, 512);
    auto t1024 = run_solve(interval, 4.0, 1024);
    report(1, certified && value_ok && cand_ok && time_ok,
           "interval value=%.6f (target 1.00 +/- 2%%), candidate "
           "integral=%.6f, %.1fs; refinement N=256,512,1024 -> %.4f, %.4f, "
           "%.4f",
           c1.sol.value, c1.sol.candidate_integral, c1.seconds, c1.sol.value,
           t512.sol.value, t1024.sol.value);
  }
  lp_solutions.push_back(&c1.sol.f);

  // --- 2: square, L=6, N=48 ------------------------------------------------
  auto square = ConvexBody::box({1.0, 1.0});
  SolveOutcome c2 = run_solve(square, 6.0, 48);
  report(2,
         c2.sol.status == solver::SolveStatus::certified &&
             std::abs(c2.sol.ratio - 1.0) <= 0.05 && c2.seconds <= 300.0,
         "square ratio=%.6f (1 +/- 5%%), value=%.6f, %.1fs", c2.sol.ratio,
         c2.sol.value, c2.seconds);
  lp_solutions.push_back(&c2.sol.f);

  // --- 3: hexagon, circumradius 1 (grid of our choice: L=8, N=64) ----------
  auto hex = testutil::hexagon(1.0);
  SolveOutcome c3 = run_solve(hex, 8.0, 64);
  {
    const double target = 0.25 * 3.0 * std::sqrt(3.0) / 2.0;  // 0.6495
    const bool ratio_ok = std::abs(c3.sol.ratio - 1.0) <= 0.05;
    const bool target_ok = std::abs(c3.sol.candidate_value - target) <= 1e-9;
    report(3,
           c3.sol.status == solver::SolveStatus::certified && ratio_ok &&
               target_ok,
           "hexagon ratio=%.6f (1 +/- 5%%), value=%.6f, closed-form target "
           "%.4f, %.1fs",
           c3.sol.ratio, c3.sol.value, target, c3.seconds);
  }
  lp_solutions.push_back(&c3.sol.f);

  // --- 4: disk, L=6, N=64 ---------------------------------------------------
  auto disk = ConvexBody::ball(2, 1.0);
  SolveOutcome c4 = run_solve(disk, 6.0, 64);
  {
    const double target = std::numbers::pi / 4.0;
    const bool value_ok = std::abs(c4.sol.value - target) <= 0.05 * target;
    report(4,
           c4.sol.status == solver::SolveStatus::certified && value_ok,
           "disk value=%.6f (pi/4=%.6f +/- 5%%), ratio to grid "
           "candidate=%.4f, %.1fs",
           c4.sol.value, target, c4.sol.ratio, c4.seconds);
  }
  lp_solutions.push_back(&c4.sol.f);

  // --- 5: oracle equivalence ------------------------------------------------
  {
    bool ok = true;
    double worst = 0.0;
    solver::TuranProblem p1(interval, TorusGrid(1, 32, 4.0));
    auto s = solver::solve_turan(p1);
    auto o = solver::dense_oracle(p1);
    worst = std::max(worst, std::abs(s.value - o.value));
    ok = ok && s.status == solver::SolveStatus::certified;
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 3; ++trial) {
      auto body = testutil::random_polytope2d(rng, 0.8);
      solver::TuranProblem p2(body, TorusGrid(2, 16, 4.0));
      auto sc = solver::solve_turan(p2);
      auto oc = solver::dense_oracle(p2);
      worst = std::max(worst, std::abs(sc.value - oc.value));
      ok = ok && sc.status == solver::SolveStatus::certified;
      lp_solutions.push_back(nullptr);  // temporaries; pd bound checked below
      ok = ok && pd_bound_holds(sc.f);
    }
    report(5, ok && worst <= 1e-6,
           "cutting planes vs dense oracle, worst |diff|=%.2e (<= 1e-6)",
           worst);
  }

  // --- 6: spectral-pair anchor (Q_2, Z^2) -----------------------------------
  {
    tiling::SpectralOptions opt;
    opt.truncation_radius = 40.0;
    opt.orth_tol = 1e-12;
    opt.parseval_tol = 1e-4;  // |Omega|^2 = 1
    auto rep = tiling::spectral_pair_check(ConvexBody::box({0.5, 0.5}),
                                           Lattice({1, 0, 0, 1}, 2), opt);
    report(6,
           rep.status == tiling::SpectralStatus::pass &&
               rep.max_offdiagonal <= 1e-12 &&
               rep.parseval_level_error <= 1e-4,
           "(Q_2, Z^2) orthogonality=%.2e (<= 1e-12), Parseval level "
           "error=%.2e (<= 1e-4 at radius 40; raw truncation %.2e)",
           rep.max_offdiagonal, rep.parseval_level_error,
           rep.parseval_level_error_raw);
  }

  // --- 7: tiling anchors -----------------------------------------------------
  {
    const double L = 2.0 * std::numbers::pi;  // keeps nodes off boundaries
    auto cube_rep = tiling::lattice_tiling_check(
        ConvexBody::box({0.5, 0.5, 0.5}),
        Lattice({1, 0, 0, 0, 1, 0, 0, 0, 1}, 3), TorusGrid(3, 64, L));
    auto disk_rep = tiling::lattice_tiling_check(
        disk, Lattice({1, 0, 0, 1}, 2), TorusGrid(2, 64, 6.0));
    auto hex_rep = tiling::lattice_tiling_check(
        hex, testutil::hexagon_tiling_lattice(1.0), TorusGrid(2, 64, 6.0));
    const bool cube_ok = cube_rep.fraction_exactly_one >= 0.98;
    const bool disk_bad =
        disk_rep.min_multiplicity == 0 || disk_rep.max_multiplicity >= 2;
    const bool hex_ok = hex_rep.fraction_exactly_one >= 0.95;
    report(7, cube_ok && disk_bad && hex_ok,
           "cube+Z^3 fraction=%.4f (>= 0.98), disk+Z^2 mult=[%d,%d] (must "
           "fail), hexagon fraction=%.4f (>= 0.95)",
           cube_rep.fraction_exactly_one, disk_rep.min_multiplicity,
           disk_rep.max_multiplicity, hex_rep.fraction_exactly_one);
  }

  // --- 8: support condition --------------------------------------------------
  {
    auto cube_rep = tiling::support_condition_check(
        ConvexBody::box({0.5, 0.5}), Lattice({1, 0, 0, 1}, 2));
    auto disk_rep =
        tiling::support_condition_check(disk, Lattice({1, 0, 0, 1}, 2));
    bool witness_ok = false;
    if (disk_rep.witness) {
      const auto& w = *disk_rep.witness;
      witness_ok = std::abs(std::hypot(w[0], w[1]) - 1.0) <= 1e-9;
    }
    report(8, cube_rep.holds() && !disk_rep.holds() && witness_ok,
           "cube/Z^2 holds (verdict %s), disk/Z^2 fails with witness at "
           "|x|=1: %s",
           tiling::to_string(cube_rep.verdict),
           witness_ok ? "yes" : "no");
  }

  // --- 9: distance lemma ------------------------------------------------------
  {
    TorusGrid grid(2, 64, 4.0);
    const double bound = 2.0 * std::sqrt(2.0) * grid.spacing();
    std::mt19937_64 rng(0);
    double worst = 0.0;
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto body =
          testutil::random_polytope2d(rng, testutil::uniform(rng, 0.5, 0.9));
      const double beta_max =
          std::min(2.0, 0.45 * 4.0 / body.circumradius_inf());
      double a = beta_max * testutil::uniform01(rng);
      double b = beta_max * testutil::uniform01(rng);
      if (a > b) std::swap(a, b);
      const double res = geometry::distance_lemma_residual(body, a, b, grid);
      worst = std::max(worst, res);
      if (res > bound) ++failures;
    }
    report(9, failures == 0,
           "100 random polytopes, worst residual=%.4f (bound 2*sqrt(2)*h=%.4f)",
           worst, bound);
  }

  // --- 10: property suite ------------------------------------------------------
  {
    bool pd_bound_ok = true;
    for (const auto* f : lp_solutions)
      if (f && !pd_bound_holds(*f)) pd_bound_ok = false;

    std::mt19937_64 rng(1);
    bool autocorr_ok = true, parseval_ok = true;
    TorusGrid g1(1, 32, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
      torus::GridFunction g(g1);
      for (auto& v : g.values) v = testutil::uniform(rng, -1.0, 1.0);
      torus::GridFunction f = torus::autocorrelate(g);
      if (torus::min_spectrum(f).value < -1e-9) autocorr_ok = false;
      if (!pd_bound_holds(f)) pd_bound_ok = false;

      g.symmetrize();
      torus::GridFunction F = torus::dft(g);
      double left = 0.0, right = 0.0;
      for (double v : g.values) left += v * v;
      for (double v : F.values) right += v * v;
      left *= g1.spacing();
      right /= g1.length();
      if (std::abs(left - right) > 1e-10 * std::max(1.0, left))
        parseval_ok = false;
    }

    bool chain_ok = true;
    TorusGrid g2(2, 32, 4.0);
    auto k_body = ConvexBody::box({1.0, 1.0});
    auto half = k_body.scaled(0.5);
    std::vector<double> x(2);
    for (int trial = 0; trial < 200; ++trial) {
      torus::GridFunction g(g2);
      for (std::size_t i = 0; i < g2.size(); ++i) {
        g2.node(i, x);
        if (half.contains(x)) g.values[i] = testutil::uniform(rng, -1.0, 1.0);
      }
      auto rep = radial::chain_check(g, k_body);
      if (!(rep.identity_ok && rep.chain_ok && rep.equality_ok))
        chain_ok = false;
    }

    // radialization: fixed point on a radial function and pd preservation
    TorusGrid g3(2, 128, 6.0);
    torus::GridFunction gauss(g3);
    for (std::size_t i = 0; i < g3.size(); ++i) {
      g3.node(i, x);
      gauss.values[i] = std::exp(-(x[0] * x[0] + x[1] * x[1]) / 0.9);
    }
    torus::GridFunction gr = radial::radialize(gauss, 64);
    // fixed point holds where the rotation orbit stays inside the period
    double fixed_point = 0.0;
    for (std::size_t i = 0; i < g3.size(); ++i) {
      g3.node(i, x);
      if (std::hypot(x[0], x[1]) > 0.5 * g3.length()) continue;
      fixed_point =
          std::max(fixed_point, std::abs(gr.values[i] - gauss.values[i]));
    }
    torus::GridFunction pd =
        torus::autocorrelate(torus::rasterize(ConvexBody::ball(2, 0.8), g3));
    const double before = torus::min_spectrum(pd).value;
    const double after = torus::min_spectrum(radial::radialize(pd, 64)).value;
    const bool radial_ok = fixed_point <= 1e-3 &&
                           after >= before - 1e-3 * std::max(1.0, pd.max_abs());

    report(10,
           pd_bound_ok && autocorr_ok && parseval_ok && chain_ok && radial_ok,
           "pd bound %s, autocorrelation spectra %s, Parseval %s, chain(200) "
           "%s, radialization %s (fixed point %.1e)",
           pd_bound_ok ? "ok" : "FAIL", autocorr_ok ? "ok" : "FAIL",
           parseval_ok ? "ok" : "FAIL", chain_ok ? "ok" : "FAIL",
           radial_ok ? "ok" : "FAIL", fixed_point);
  }

  // --- 11: spectral pairs are Turan domains (headline) -------------------------
  {
    struct Entry {
      const char* name;
      ConvexBody body;
      Lattice spectrum;
      double length;
      int n;
    };
    std::vector<Entry> corpus;
    corpus.push_back({"Q1+Z", ConvexBody::box({0.5}), Lattice({1.0}, 1), 2.0, 256});
    corpus.push_back({"Q2+Z2", ConvexBody::box({0.5, 0.5}),
                      Lattice({1, 0, 0, 1}, 2), 3.0, 48});
    corpus.push_back({"square+halfZ2", square, Lattice({0.5, 0, 0, 0.5}, 2),
                      6.0, 48});
    corpus.push_back({"hexagon+dual", hex,
                      testutil::hexagon_tiling_lattice(1.0).dual(), 8.0, 64});
    corpus.push_back({"disk+Z2", disk, Lattice({1, 0, 0, 1}, 2), 6.0, 64});

    bool all_ok = true;
    std::string detail;
    for (const auto& e : corpus) {
      tiling::SpectralOptions opt;
      opt.orth_tol = 1e-10;
      opt.parseval_tol = 2e-3;
      auto spec = tiling::spectral_pair_check(e.body, e.spectrum, opt);
      if (spec.status != tiling::SpectralStatus::pass) {
        detail += std::string(e.name) + ":not-spectral ";
        continue;  // no claim for non-spectral pairs (the disk lands here)
      }
      solver::TuranProblem p(e.body, TorusGrid(e.body.dim(), e.n, e.length));
      auto sol = solver::solve_turan(p);
      const double eps_grid =
          std::abs(sol.candidate_integral - sol.candidate_value) /
          sol.candidate_value;
      const bool ok = sol.status == solver::SolveStatus::certified &&
                      sol.ratio >= 1.0 - eps_grid - 1e-9 &&
                      sol.ratio <= 1.05;
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s:ratio=%.4f%s ", e.name, sol.ratio,
                    ok ? "" : "(FAIL)");
      detail += buf;
      all_ok = all_ok && ok;
    }
    report(11, all_ok, "spectral => Turan: %s", detail.c_str());
  }

  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

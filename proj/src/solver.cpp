#include "turan/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "turan/lp.hpp"

namespace turan::solver {

int TuranProblem::effective_max_cuts() const {
  if (max_cuts > 0) return max_cuts;
  return static_cast<int>(50.0 * std::pow(grid.n(), 0.5 * grid.dim()));
}

void TuranProblem::validate() const {
  if (body.dim() != grid.dim())
    throw std::invalid_argument("TuranProblem: dimension mismatch");
  if (body.circumradius_inf() > 0.25 * grid.length() * (1.0 + 1e-12))
    throw std::invalid_argument(
        "TuranProblem: 2*Omega must fit in the period cube (need "
        "circumradius_inf <= L/4)");
  if (!(tol_pd > 0.0) || !(tol_lp > 0.0))
    throw std::invalid_argument("TuranProblem: tolerances must be positive");
  if (cuts_per_round < 1)
    throw std::invalid_argument("TuranProblem: cuts_per_round must be >= 1");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::certified: return "certified";
    case SolveStatus::cut_budget_exhausted: return "cut_budget_exhausted";
    case SolveStatus::infeasible_numerics: return "infeasible_numerics";
  }
  return "?";
}

namespace {

struct Orbits {
  // one representative per {x, -x} pair of Omega nodes, origin excluded
  std::vector<std::size_t> rep;
  std::vector<std::vector<int>> rep_k;  // signed multi-indices
};

Orbits collect_orbits(const geometry::ConvexBody& body, const TorusGrid& grid) {
  Orbits o;
  std::vector<double> x(grid.dim());
  std::vector<int> k(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == grid.origin()) continue;
    if (grid.negate(i) < i) continue;  // canonical representative only
    grid.node(i, x);
    if (!body.contains(x)) continue;
    grid.unflatten(i, k);
    o.rep.push_back(i);
    o.rep_k.push_back(k);
  }
  return o;
}

// cos(2 pi <m, k> / N) from the integer product reduced mod N
double cos_coeff(std::span<const int> m, std::span<const int> k, int n) {
  std::int64_t dot = 0;
  for (std::size_t a = 0; a < m.size(); ++a)
    dot += static_cast<std::int64_t>(m[a]) * k[a];
  std::int64_t r = dot % n;
  if (r < 0) r += n;
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

std::vector<double> cut_row(std::span<const int> m, const Orbits& orbits,
                            int n) {
  // constraint  1 + sum_r 2 cos(2 pi m.k_r / N) f_r >= 0  in p/q variables,
  // as a row of  -sum 2c (p_r - q_r) <= 1
  const std::size_t nr = orbits.rep.size();
  std::vector<double> row(2 * nr);
  for (std::size_t r = 0; r < nr; ++r) {
    const double c = 2.0 * cos_coeff(m, orbits.rep_k[r], n);
    row[2 * r] = -c;
    row[2 * r + 1] = c;
  }
  return row;
}

TuranSolution finish_trivial(const TuranProblem& p) {
  // Omega captured only the origin: f is the delta and is already optimal.
  TuranSolution s{torus::GridFunction(p.grid)};
  const double hd = std::pow(p.grid.spacing(), p.grid.dim());
  s.f.values[p.grid.origin()] = 1.0;
  s.value = hd;
  s.worst_violation = 0.0;
  s.rounds = 0;
  s.status = SolveStatus::certified;
  s.duality_gap = 0.0;
  return s;
}

TuranSolution solve_impl(const TuranProblem& p, bool all_cuts_upfront) {
  p.validate();
  const TorusGrid& grid = p.grid;
  const int n = grid.n();
  const double hd = std::pow(grid.spacing(), grid.dim());
  const Orbits orbits = collect_orbits(p.body, grid);
  const std::size_t nr = orbits.rep.size();

  const torus::GridFunction cand = candidate::turan_candidate(p.body, grid);
  double cand_sum = 0.0;
  for (double v : cand.values) cand_sum += v;
  const double cand_integral = hd * cand_sum;
  const double cand_value = candidate::candidate_value(p.body, &grid);

  TuranSolution s{torus::GridFunction(grid)};
  s.candidate_integral = cand_integral;
  s.candidate_value = cand_value;
  if (nr == 0) {
    TuranSolution t = finish_trivial(p);
    t.candidate_integral = cand_integral;
    t.candidate_value = cand_value;
    t.ratio = t.value / cand_integral;
    t.ratio_exact = t.value / cand_value;
    return t;
  }

  lp::Solver lp;
  for (std::size_t r = 0; r < nr; ++r) {
    lp.add_variable(+2.0 * hd, 1.0);  // p_r
    lp.add_variable(-2.0 * hd, 1.0);  // q_r
  }

  const int max_cuts = p.effective_max_cuts();
  std::vector<std::vector<int>> pool;            // signed frequency indices
  std::unordered_set<std::size_t> pool_idx;      // canonical storage indices
  std::vector<int> k(grid.dim());

  auto add_cut = [&](std::size_t canonical) {
    grid.unflatten(canonical, k);
    lp.add_row(cut_row(k, orbits, n), 1.0);
    pool.push_back(k);
    pool_idx.insert(canonical);
  };

  if (all_cuts_upfront) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid.negate(i) >= i) add_cut(i);
  } else {
    add_cut(grid.origin());
    for (int a = 0; a < grid.dim(); ++a) {
      std::vector<int> unit(grid.dim(), 0);
      unit[a] = 1;
      std::size_t idx = grid.flatten(unit);
      std::size_t canonical = std::min(idx, grid.negate(idx));
      if (!pool_idx.count(canonical)) add_cut(canonical);
    }
  }

  const double value_scale = std::max(1.0, cand_integral);
  double prev_value = std::numeric_limits<double>::infinity();
  bool monotonic_ok = true;

  while (true) {
    ++s.rounds;
    lp::Result res = lp.solve();
    s.lp_iterations += res.iterations;
    s.lp_bland_engaged = s.lp_bland_engaged || res.bland_engaged;
    if (res.status != lp::Status::optimal) {
      s.status = SolveStatus::infeasible_numerics;
      break;
    }

    // embed the reduced solution into the full grid
    std::fill(s.f.values.begin(), s.f.values.end(), 0.0);
    s.f.values[grid.origin()] = 1.0;
    for (std::size_t r = 0; r < nr; ++r) {
      const double fr = res.x[2 * r] - res.x[2 * r + 1];
      s.f.values[orbits.rep[r]] = fr;
      s.f.values[grid.negate(orbits.rep[r])] = fr;
    }
    s.value = hd + res.objective;
    s.duality_gap = res.duality_gap;
    s.round_values.push_back(s.value);
    if (s.value > prev_value + 1e-9 * value_scale) monotonic_ok = false;
    prev_value = s.value;

    torus::GridFunction spec = torus::dft(s.f);
    double min_val = 0.0;
    for (double v : spec.values) min_val = std::min(min_val, v);
    s.worst_violation = std::max(0.0, -min_val);

    if (min_val >= -p.tol_pd) {
      const bool gap_ok = res.duality_gap <= p.tol_lp * value_scale;
      s.status = (gap_ok && monotonic_ok) ? SolveStatus::certified
                                          : SolveStatus::infeasible_numerics;
      // dual weights on the spectral cuts, for external audit
      s.cut_duals = res.row_duals;
      break;
    }
    if (static_cast<int>(pool.size()) >= max_cuts) {
      s.status = SolveStatus::cut_budget_exhausted;
      s.cut_duals = res.row_duals;
      break;
    }

    // most negative frequencies first, ties by storage index
    std::vector<std::pair<double, std::size_t>> viol;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid.negate(i) < i) continue;
      if (spec.values[i] >= -p.tol_pd) continue;
      if (pool_idx.count(i)) continue;  // pooled rows sit at the LP tolerance
      viol.emplace_back(spec.values[i], i);
    }
    std::sort(viol.begin(), viol.end());
    if (viol.empty()) {
      // every violated frequency is already in the pool: the LP tolerance
      // and tol_pd disagree; report numerics rather than loop forever
      s.status = SolveStatus::infeasible_numerics;
      s.cut_duals = res.row_duals;
      break;
    }
    int budget = std::min<int>(p.cuts_per_round,
                               max_cuts - static_cast<int>(pool.size()));
    for (int t = 0; t < budget && t < static_cast<int>(viol.size()); ++t)
      add_cut(viol[t].second);
  }

  s.active_frequencies = pool;
  s.ratio = s.value / cand_integral;
  s.ratio_exact = s.value / cand_value;
  return s;
}

}  // namespace

TuranSolution solve_turan(const TuranProblem& p) { return solve_impl(p, false); }

TuranSolution dense_oracle(const TuranProblem& p) {
  if (p.grid.size() > 4096)
    throw std::invalid_argument("dense_oracle: grid too large (N^d <= 4096)");
  return solve_impl(p, true);
}

VerifyReport verify_solution(const TuranSolution& s, const TuranProblem& p) {
  VerifyReport r;
  const TorusGrid& grid = p.grid;
  std::vector<double> x(grid.dim());
  r.support_ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (s.f.values[i] == 0.0) continue;
    grid.node(i, x);
    if (!p.body.contains(x)) {
      r.support_ok = false;
      break;
    }
  }
  r.origin_ok = s.f.at_origin() == 1.0;
  try {
    torus::SpectrumMin sm = torus::min_spectrum(s.f);
    r.min_spectrum = sm.value;
    r.pd_ok = sm.value >= -p.tol_pd;
  } catch (const std::invalid_argument&) {
    // asymmetric f cannot be positive definite; report, don't throw
    r.min_spectrum = std::numeric_limits<double>::quiet_NaN();
    r.pd_ok = false;
  }
  double sum = 0.0;
  for (double v : s.f.values) sum += v;
  r.recomputed_value = sum * std::pow(grid.spacing(), grid.dim());
  r.value_ok =
      std::abs(r.recomputed_value - s.value) <= 1e-10 * (1.0 + std::abs(s.value));
  return r;
}

std::vector<StudyRow> refine_study(
    const geometry::ConvexBody& body,
    const std::vector<std::pair<double, int>>& grids) {
  std::vector<StudyRow> rows;
  for (const auto& [length, n] : grids) {
    StudyRow row;
    row.length = length;
    row.n = n;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      TuranProblem p(body, TorusGrid(body.dim(), n, length));
      TuranSolution s = solve_turan(p);
      row.value = s.value;
      row.ratio = s.ratio;
      row.worst_violation = s.worst_violation;
      row.rounds = s.rounds;
      row.status = to_string(s.status);
    } catch (const std::exception& e) {
      row.error = e.what();
      row.status = "error";
    }
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace turan::solver

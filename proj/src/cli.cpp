#include "turan/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "turan/candidate.hpp"
#include "turan/config.hpp"
#include "turan/geometry.hpp"
#include "turan/kernels.hpp"
#include "turan/radial.hpp"
#include "turan/report.hpp"
#include "turan/solver.hpp"
#include "turan/tiling.hpp"
#include "turan/torus.hpp"

namespace turan::cli {

namespace {

namespace fs = std::filesystem;

struct CommonOut {
  std::string out_dir;
  bool csv = false;
};

void emit_report(const report::Report& rep, const CommonOut& common,
                 std::ostream& out) {
  out << rep.text();
  if (!common.out_dir.empty()) {
    fs::create_directories(common.out_dir);
    const fs::path path = fs::path(common.out_dir) / "report.json";
    std::ofstream f(path);
    f << rep.json();
    out << "report: " << path.string() << "\n";
  }
}

void emit_csv(const torus::GridFunction& f, const CommonOut& common,
              const std::string& name, std::ostream& out) {
  if (!common.csv) return;
  const fs::path dir = common.out_dir.empty() ? fs::path(".") : fs::path(common.out_dir);
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream os(path);
  torus::write_csv(f, os);
  out << "csv: " << path.string() << "\n";
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// random symmetric 2D polytope with circumradius_inf about [0.5, 0.9]
geometry::ConvexBody random_polytope2d(std::mt19937_64& rng) {
  const int pairs = 3 + static_cast<int>(rng() % 3);
  std::vector<geometry::HalfSpace> rows;
  for (int i = 0; i < pairs; ++i) {
    const double ang =
        std::numbers::pi * (i + 0.15 + 0.7 * uniform01(rng)) / pairs;
    geometry::HalfSpace hs;
    hs.normal = {std::cos(ang), std::sin(ang)};
    hs.offset = 0.35 + 0.45 * uniform01(rng);
    rows.push_back(std::move(hs));
  }
  geometry::ConvexBody body = geometry::ConvexBody::hpolytope(2, std::move(rows));
  // normalize the sup-extent so beta*Omega stays inside the period
  const double target = 0.5 + 0.4 * uniform01(rng);
  return body.scaled(target / body.circumradius_inf());
}

void describe_solution(const solver::TuranSolution& s, report::Node& node) {
  node.put("status", solver::to_string(s.status));
  node.put("value", s.value);
  node.put("ratio", s.ratio);
  node.put("ratio_exact", s.ratio_exact);
  node.put("candidate_integral", s.candidate_integral);
  node.put("candidate_value", s.candidate_value);
  node.put("worst_violation", s.worst_violation);
  node.put("duality_gap", s.duality_gap);
  node.put("rounds", s.rounds);
  node.put("active_cuts", static_cast<long long>(s.active_frequencies.size()));
  node.put("lp_iterations", static_cast<long long>(s.lp_iterations));
  node.put("lp_bland_engaged", s.lp_bland_engaged);
  if (!s.cut_duals.empty())
    node.put_vector("cut_duals", s.cut_duals, /*json_only=*/true);
  std::vector<int> flat;
  for (const auto& m : s.active_frequencies)
    flat.insert(flat.end(), m.begin(), m.end());
  node.put_vector("active_frequencies_flat", flat, /*json_only=*/true);
}

int cmd_solve(const std::string& body_file, double length, int n,
              double tol_pd, double tol_lp, int max_cuts, int cuts_per_round,
              const CommonOut& common, std::ostream& out) {
  geometry::ConvexBody body = config::load_body(body_file);
  solver::TuranProblem prob(body, TorusGrid(body.dim(), n, length));
  prob.tol_pd = tol_pd;
  prob.tol_lp = tol_lp;
  prob.max_cuts = max_cuts;
  prob.cuts_per_round = cuts_per_round;
  prob.validate();

  solver::TuranSolution sol = solver::solve_turan(prob);
  solver::VerifyReport ver = solver::verify_solution(sol, prob);

  report::Report rep("solve");
  rep.root().put("body", body.describe());
  rep.root().put("L", length);
  rep.root().put("N", n);
  describe_solution(sol, rep.root().child("solution"));
  report::Node& v = rep.root().child("verify");
  v.put("support_ok", ver.support_ok);
  v.put("origin_ok", ver.origin_ok);
  v.put("pd_ok", ver.pd_ok);
  v.put("value_ok", ver.value_ok);
  v.put("min_spectrum", ver.min_spectrum);
  emit_report(rep, common, out);
  emit_csv(sol.f, common, "solution.csv", out);
  if (common.csv) emit_csv(torus::dft(sol.f), common, "spectrum.csv", out);

  return (sol.status == solver::SolveStatus::certified && ver.all_ok()) ? 0 : 1;
}

int cmd_candidate(const std::string& body_file, double length, int n,
                  const CommonOut& common, std::ostream& out) {
  geometry::ConvexBody body = config::load_body(body_file);
  TorusGrid grid(body.dim(), n, length);
  torus::GridFunction f = candidate::turan_candidate(body, grid);
  double sum = 0.0;
  for (double v : f.values) sum += v;
  const double integral = sum * std::pow(grid.spacing(), grid.dim());
  bool exact_used = false;
  const double closed = candidate::candidate_value(body, &grid, &exact_used);

  report::Report rep("candidate");
  rep.root().put("body", body.describe());
  rep.root().put("L", length);
  rep.root().put("N", n);
  rep.root().put("value_at_origin", f.at_origin());
  rep.root().put("grid_integral", integral);
  rep.root().put("closed_form_value", closed);
  rep.root().put("closed_form_exact", exact_used);
  rep.root().put("gap", std::abs(integral - closed));
  emit_report(rep, common, out);
  emit_csv(f, common, "candidate.csv", out);
  return 0;
}

int cmd_tiling(const std::string& body_file, const std::string& lattice_file,
               double length, int n, double min_fraction,
               const CommonOut& common, std::ostream& out) {
  geometry::ConvexBody body = config::load_body(body_file);
  geometry::Lattice lat = config::load_lattice(lattice_file);
  TorusGrid grid(body.dim(), n, length);
  tiling::CoverageReport cov = tiling::lattice_tiling_check(body, lat, grid);

  report::Report rep("tiling");
  rep.root().put("body", body.describe());
  rep.root().put("L", length);
  rep.root().put("N", n);
  rep.root().put("min_multiplicity", cov.min_multiplicity);
  rep.root().put("max_multiplicity", cov.max_multiplicity);
  rep.root().put("fraction_exactly_one", cov.fraction_exactly_one);
  rep.root().put("min_fraction_required", min_fraction);
  rep.root().put("passes", cov.passes(min_fraction));
  for (const auto& node : cov.offending_nodes)
    rep.root().append("offending_nodes").put_vector("x", node);
  emit_report(rep, common, out);
  return cov.passes(min_fraction) ? 0 : 1;
}

int cmd_spectrum(const std::string& body_file, const std::string& lattice_file,
                 double radius, int samples, unsigned long long seed,
                 double tol_orth, double tol_parseval, double length, int n,
                 const CommonOut& common, std::ostream& out) {
  geometry::ConvexBody body = config::load_body(body_file);
  geometry::Lattice lat = config::load_lattice(lattice_file);
  tiling::SpectralOptions opt;
  opt.truncation_radius = radius;
  opt.num_samples = samples;
  opt.seed = seed;
  opt.orth_tol = tol_orth;
  opt.parseval_tol = tol_parseval;
  std::optional<TorusGrid> quad;
  if (n > 0) {
    quad.emplace(body.dim(), n, length);
    opt.quad_grid = &*quad;
  }
  tiling::SpectralReport sr = tiling::spectral_pair_check(body, lat, opt);

  report::Report rep("spectrum");
  rep.root().put("body", body.describe());
  rep.root().put("truncation_radius", radius);
  rep.root().put("samples", samples);
  rep.root().put("seed", static_cast<long long>(seed));
  rep.root().put("status", tiling::to_string(sr.status));
  rep.root().put("max_offdiagonal", sr.max_offdiagonal);
  if (!sr.worst_pair.empty()) rep.root().put_vector("worst_pair", sr.worst_pair);
  rep.root().put("parseval_level_error", sr.parseval_level_error);
  rep.root().put("parseval_level_error_raw", sr.parseval_level_error_raw);
  rep.root().put("tail_estimate", sr.tail_estimate);
  rep.root().put("pairs_tested", sr.pairs_tested);
  rep.root().put("lambdas_used", sr.lambdas_used);
  emit_report(rep, common, out);
  return sr.status == tiling::SpectralStatus::pass ? 0 : 1;
}

int cmd_support(const std::string& body_file, const std::string& lattice_file,
                const CommonOut& common, std::ostream& out) {
  geometry::ConvexBody body = config::load_body(body_file);
  geometry::Lattice lat = config::load_lattice(lattice_file);
  tiling::SupportReport sr = tiling::support_condition_check(body, lat);

  report::Report rep("support");
  rep.root().put("body", body.describe());
  rep.root().put("verdict", tiling::to_string(sr.verdict));
  rep.root().put("holds", sr.holds());
  if (sr.witness) rep.root().put_vector("witness", *sr.witness);
  emit_report(rep, common, out);
  return sr.holds() ? 0 : 1;
}

int cmd_radial_demo(double length, int n, int angles, const CommonOut& common,
                    std::ostream& out) {
  radial::BallReport br = radial::ball_turan_check(length, n, angles);

  // chain demo on the half disk
  geometry::ConvexBody disk = geometry::ConvexBody::ball(2, 1.0);
  TorusGrid grid(2, n, length);
  torus::GridFunction g = torus::rasterize(disk.scaled(0.5), grid);
  radial::ChainReport cr = radial::chain_check(g, disk);

  report::Report rep("radial-demo");
  rep.root().put("L", length);
  rep.root().put("N", n);
  rep.root().put("angles", angles);
  describe_solution(br.solution, rep.root().child("disk_solution"));
  report::Node& b = rep.root().child("ball_check");
  b.put("target", br.target);
  b.put("value_vs_target", br.value_vs_target);
  b.put("radial_value", br.radial_value);
  b.put("radial_value_change", br.radial_value_change);
  b.put("radial_min_spectrum", br.radial_min_spectrum);
  b.put("radial_pd_ok", br.radial_pd_ok);
  b.put("radial_support_ok", br.radial_support_ok);
  b.put("candidate_fixed_point", br.candidate_fixed_point);
  report::Node& c = rep.root().child("chain_check");
  c.put("integral_f", cr.integral_f);
  c.put("integral_g_squared", cr.integral_g_squared);
  c.put("cauchy_schwarz", cr.cauchy_schwarz);
  c.put("brunn_minkowski", cr.brunn_minkowski);
  c.put("identity_ok", cr.identity_ok);
  c.put("chain_ok", cr.chain_ok);
  c.put("equality_ok", cr.equality_ok);
  emit_report(rep, common, out);

  const bool ok = br.solution.status == solver::SolveStatus::certified &&
                  br.radial_pd_ok && br.radial_support_ok && cr.identity_ok &&
                  cr.chain_ok;
  return ok ? 0 : 1;
}

int cmd_study(const std::string& body_file,
              const std::vector<std::string>& grid_specs, bool with_timing,
              const CommonOut& common, std::ostream& out) {
  geometry::ConvexBody body = config::load_body(body_file);
  std::vector<std::pair<double, int>> grids;
  for (const auto& spec : grid_specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw config::ConfigError("--grid", 0, "expected L:N, got '" + spec + "'");
    try {
      grids.emplace_back(std::stod(spec.substr(0, colon)),
                         std::stoi(spec.substr(colon + 1)));
    } catch (...) {
      throw config::ConfigError("--grid", 0, "expected L:N, got '" + spec + "'");
    }
  }
  auto rows = solver::refine_study(body, grids);

  report::Report rep("study");
  rep.root().put("body", body.describe());
  out << "  L        N      value        ratio        violation    rounds  seconds  status\n";
  bool any_error = false;
  for (const auto& r : rows) {
    report::Node& node = rep.root().append("rows");
    node.put("L", r.length);
    node.put("N", r.n);
    node.put("value", r.value);
    node.put("ratio", r.ratio);
    node.put("worst_violation", r.worst_violation);
    node.put("rounds", r.rounds);
    if (with_timing) node.put("seconds", r.seconds);
    node.put("status", r.status);
    if (!r.error.empty()) {
      node.put("error", r.error);
      any_error = true;
    }
    char line[160];
    std::snprintf(line, sizeof line,
                  "  %-8g %-6d %-12.6g %-12.6g %-12.3g %-7d %-8.3g %s\n",
                  r.length, r.n, r.value, r.ratio, r.worst_violation, r.rounds,
                  r.seconds, r.status.c_str());
    out << line;
  }
  emit_report(rep, common, out);
  return any_error ? 1 : 0;
}

int cmd_lemma_check(int trials, unsigned long long seed, double length, int n,
                    const CommonOut& common, std::ostream& out) {
  TorusGrid grid(2, n, length);
  const double bound = 2.0 * std::sqrt(2.0) * grid.spacing();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    geometry::ConvexBody body = random_polytope2d(rng);
    const double beta_max =
        std::min(2.0, 0.45 * length / body.circumradius_inf());
    double a = beta_max * uniform01(rng);
    double b = beta_max * uniform01(rng);
    if (a > b) std::swap(a, b);
    const double res = geometry::distance_lemma_residual(body, a, b, grid);
    worst = std::max(worst, res);
    if (res > bound) ++failures;
  }

  report::Report rep("lemma-check");
  rep.root().put("trials", trials);
  rep.root().put("seed", static_cast<long long>(seed));
  rep.root().put("L", length);
  rep.root().put("N", n);
  rep.root().put("bound", bound);
  rep.root().put("max_residual", worst);
  rep.root().put("failures", failures);
  emit_report(rep, common, out);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Discretized Turan problem toolkit"};
  app.require_subcommand(1);

  std::string kernels = "auto";
  app.add_option("--kernels", kernels,
                 "kernel variant: auto, scalar, avx2, neon");

  CommonOut common;
  std::string body_file, lattice_file;
  double length = 4.0;
  int n = 64;
  double tol_pd = 1e-8, tol_lp = 1e-9;
  int max_cuts = 0, cuts_per_round = 16;
  unsigned long long seed = 0;
  double radius = 40.0;
  int samples = 8;
  double tol_orth = 1e-9, tol_parseval = 1e-3;
  int quad_n = 0;
  double quad_length = 4.0;
  double min_fraction = 0.95;
  int angles = 64;
  int trials = 100;
  std::vector<std::string> grid_specs;
  bool with_timing = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_dir, "directory for report.json");
    sub->add_flag("--csv", common.csv, "also write CSV dumps");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the Turan LP");
  solve->add_option("--body", body_file, "body config file")->required();
  solve->add_option("--L", length, "period length");
  solve->add_option("--N", n, "grid points per axis");
  solve->add_option("--tol-pd", tol_pd, "spectrum tolerance");
  solve->add_option("--tol-lp", tol_lp, "duality gap tolerance");
  solve->add_option("--max-cuts", max_cuts, "cut budget (0 = default)");
  solve->add_option("--cuts-per-round", cuts_per_round, "cuts added per round");
  solve->add_option("--seed", seed, "seed (unused, accepted for uniformity)");
  add_common(solve);

  CLI::App* cand = app.add_subcommand("candidate", "conjectured extremal function");
  cand->add_option("--body", body_file, "body config file")->required();
  cand->add_option("--L", length, "period length");
  cand->add_option("--N", n, "grid points per axis");
  add_common(cand);

  CLI::App* til = app.add_subcommand("tiling", "lattice tiling multiplicity check");
  til->add_option("--body", body_file, "body config file")->required();
  til->add_option("--lattice", lattice_file, "lattice config file")->required();
  til->add_option("--L", length, "period length");
  til->add_option("--N", n, "grid points per axis");
  til->add_option("--min-fraction", min_fraction, "required fraction of multiplicity-1 nodes");
  add_common(til);

  CLI::App* spec = app.add_subcommand("spectrum", "spectral pair check");
  spec->add_option("--body", body_file, "body config file")->required();
  spec->add_option("--lattice", lattice_file, "spectrum lattice config file")->required();
  spec->add_option("--radius", radius, "lambda truncation radius");
  spec->add_option("--samples", samples, "Parseval sample count");
  spec->add_option("--seed", seed, "sample seed");
  spec->add_option("--tol-orth", tol_orth, "orthogonality tolerance");
  spec->add_option("--tol-parseval", tol_parseval, "Parseval level tolerance (relative)");
  spec->add_option("--N", quad_n, "quadrature grid (d>=3 polytopes)");
  spec->add_option("--L", quad_length, "quadrature period");
  add_common(spec);

  CLI::App* sup = app.add_subcommand("support", "dual-lattice support condition");
  sup->add_option("--body", body_file, "body config file")->required();
  sup->add_option("--lattice", lattice_file, "spectrum lattice config file")->required();
  add_common(sup);

  CLI::App* rad = app.add_subcommand("radial-demo", "ball check and chain inequality");
  rad->add_option("--L", length, "period length")->default_val(6.0);
  rad->add_option("--N", n, "grid points per axis");
  rad->add_option("--angles", angles, "rotation samples");
  add_common(rad);

  CLI::App* study = app.add_subcommand("study", "refinement study over grids");
  study->add_option("--body", body_file, "body config file")->required();
  study->add_option("--grid", grid_specs, "grid as L:N (repeatable)")->required();
  study->add_flag("--timing", with_timing, "include wall time in report.json");
  add_common(study);

  CLI::App* lemma = app.add_subcommand("lemma-check", "distance lemma on random polytopes");
  lemma->add_option("--trials", trials, "number of random polytopes");
  lemma->add_option("--seed", seed, "generator seed");
  lemma->add_option("--L", length, "period length");
  lemma->add_option("--N", n, "grid points per axis");
  add_common(lemma);

  std::vector<char*> argv;
  std::string prog = "turan";
  argv.push_back(prog.data());
  std::vector<std::string> owned = args;
  for (auto& a : owned) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (!kernels::select(kernels)) {
    err << "error: unknown or unsupported kernel variant '" << kernels << "'\n";
    return 2;
  }

  try {
    if (solve->parsed())
      return cmd_solve(body_file, length, n, tol_pd, tol_lp, max_cuts,
                       cuts_per_round, common, out);
    if (cand->parsed()) return cmd_candidate(body_file, length, n, common, out);
    if (til->parsed())
      return cmd_tiling(body_file, lattice_file, length, n, min_fraction,
                        common, out);
    if (spec->parsed())
      return cmd_spectrum(body_file, lattice_file, radius, samples, seed,
                          tol_orth, tol_parseval, quad_length, quad_n, common,
                          out);
    if (sup->parsed()) return cmd_support(body_file, lattice_file, common, out);
    if (rad->parsed()) return cmd_radial_demo(length, n, angles, common, out);
    if (study->parsed())
      return cmd_study(body_file, grid_specs, with_timing, common, out);
    if (lemma->parsed())
      return cmd_lemma_check(trials, seed, length, n, common, out);
  } catch (const config::ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace turan::cli

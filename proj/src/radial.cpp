#include "turan/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace turan::radial {

namespace {

// bilinear interpolation with periodic wrap; p is in grid units (x / h)
double bilinear(const torus::GridFunction& f, double px, double py) {
  const int n = f.grid.n();
  auto wrap_storage = [n](int signed_k) {
    int s = (signed_k + n / 2) % n;
    if (s < 0) s += n;
    return s;
  };
  const double fx = std::floor(px), fy = std::floor(py);
  const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
  const double tx = px - fx, ty = py - fy;
  const int x0 = wrap_storage(ix), x1 = wrap_storage(ix + 1);
  const int y0 = wrap_storage(iy), y1 = wrap_storage(iy + 1);
  const double* v = f.values.data();
  const double v00 = v[static_cast<std::size_t>(x0) * n + y0];
  const double v01 = v[static_cast<std::size_t>(x0) * n + y1];
  const double v10 = v[static_cast<std::size_t>(x1) * n + y0];
  const double v11 = v[static_cast<std::size_t>(x1) * n + y1];
  return (1.0 - tx) * ((1.0 - ty) * v00 + ty * v01) +
         tx * ((1.0 - ty) * v10 + ty * v11);
}

}  // namespace

torus::GridFunction radialize(const torus::GridFunction& f, int n_angles) {
  if (f.grid.dim() != 2)
    throw std::invalid_argument("radialize: only implemented for d = 2");
  if (n_angles < 1) throw std::invalid_argument("radialize: n_angles >= 1");

  const TorusGrid& grid = f.grid;
  const double h = grid.spacing();
  torus::GridFunction out(grid, f.domain);
  std::vector<double> x(2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    double acc = 0.0;
    for (int a = 0; a < n_angles; ++a) {
      const double th = 2.0 * std::numbers::pi * a / n_angles;
      const double c = std::cos(th), s = std::sin(th);
      const double rx = c * x[0] - s * x[1];
      const double ry = s * x[0] + c * x[1];
      acc += bilinear(f, rx / h, ry / h);
    }
    out.values[i] = acc / n_angles;
  }
  // rotation fixes the origin and the grid holds it exactly
  out.values[grid.origin()] = f.values[grid.origin()];
  out.symmetrize();
  return out;
}

ChainReport chain_check(const torus::GridFunction& g,
                        const geometry::ConvexBody& k_body) {
  const TorusGrid& grid = g.grid;
  if (k_body.dim() != grid.dim())
    throw std::invalid_argument("chain_check: dimension mismatch");
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (g.values[i] == 0.0) continue;
    grid.node(i, x);
    if (!k_body.contains(x))
      throw std::invalid_argument("chain_check: supp g reaches outside K");
  }
  const double hd = std::pow(grid.spacing(), grid.dim());
  double sum_g = 0.0, sum_g2 = 0.0;
  for (double v : g.values) {
    sum_g += v;
    sum_g2 += v * v;
  }

  torus::GridFunction f = torus::autocorrelate(g);
  double sum_f = 0.0;
  for (double v : f.values) sum_f += v;

  auto volume_of = [&](const geometry::ConvexBody& b) {
    if (auto exact = b.exact_volume()) return *exact;
    return b.grid_volume(grid);
  };
  const double vol_k = volume_of(k_body);
  const double vol_diff = volume_of(k_body.scaled(2.0));  // K - K = 2K here

  ChainReport rep;
  rep.integral_f = hd * sum_f;
  rep.integral_g_squared = (hd * sum_g) * (hd * sum_g);
  rep.cauchy_schwarz = vol_k * hd * sum_g2;
  rep.brunn_minkowski =
      std::pow(0.5, grid.dim()) * vol_diff * hd * sum_g2;
  const double scale = std::max({1.0, rep.integral_f, rep.cauchy_schwarz});
  rep.identity_ok =
      std::abs(rep.integral_f - rep.integral_g_squared) <= 1e-9 * scale;
  rep.chain_ok = rep.integral_f <= rep.cauchy_schwarz + 1e-9 * scale &&
                 rep.cauchy_schwarz <= rep.brunn_minkowski + 1e-9 * scale;
  rep.equality_ok =
      std::abs(rep.cauchy_schwarz - rep.brunn_minkowski) <= 1e-9 * scale;
  return rep;
}

BallReport ball_turan_check(double length, int n, int n_angles,
                            double tol_pd) {
  geometry::ConvexBody disk = geometry::ConvexBody::ball(2, 1.0);
  TorusGrid grid(2, n, length);
  solver::TuranProblem prob(disk, grid);
  prob.tol_pd = tol_pd;

  BallReport rep{solver::solve_turan(prob)};
  rep.target = std::numbers::pi / 4.0;
  rep.value_vs_target = std::abs(rep.solution.value - rep.target) / rep.target;

  const double h = grid.spacing();
  torus::GridFunction rad = radialize(rep.solution.f, n_angles);
  double sum = 0.0;
  for (double v : rad.values) sum += v;
  rep.radial_value = sum * h * h;
  rep.radial_value_change =
      std::abs(rep.radial_value - rep.solution.value) /
      std::max(1e-300, std::abs(rep.solution.value));

  torus::SpectrumMin sm = torus::min_spectrum(rad);
  rep.radial_min_spectrum = sm.value;
  rep.radial_pd_ok = sm.value >= -1e-6;

  // support may bleed one interpolation cell outside the disk
  const double reach = 1.0 + std::sqrt(2.0) * h + 1e-12;
  rep.radial_support_ok = true;
  std::vector<double> x(2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(rad.values[i]) <= 1e-12) continue;
    grid.node(i, x);
    if (std::hypot(x[0], x[1]) > reach) {
      rep.radial_support_ok = false;
      break;
    }
  }

  torus::GridFunction cand = candidate::turan_candidate(disk, grid);
  torus::GridFunction cand_rad = radialize(cand, n_angles);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(cand_rad.values[i] - cand.values[i]));
  rep.candidate_fixed_point = worst;
  return rep;
}

}  // namespace turan::radial

#include "turan/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace turan::tiling {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2v(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double unit_ball_volume(int d) {
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double sinc(double z) {  // sin(z)/z
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

// sin(2 pi w xi) / (pi xi), the 1D interval transform, with its xi -> 0 limit
double interval_ft(double w, double xi) {
  const double z = 2.0 * kPi * w * xi;
  return 2.0 * w * sinc(z);
}

// chi_hat of a 2D polygon by edge integration (divergence theorem):
//   chi_hat(xi) = -1/(2 pi i |xi|^2) sum_e (xi.n_e) l_e sinc(pi l_e xi.u_e)
//                 exp(-2 pi i xi.m_e)
// For small |xi| the formula loses all digits, so a quadratic Taylor step
// takes over; our polygons are symmetric so the linear moment vanishes.
std::complex<double> polygon_ft(const std::vector<std::array<double, 2>>& v,
                                double area, std::span<const double> xi) {
  const double q2 = xi[0] * xi[0] + xi[1] * xi[1];
  double diam = 0.0;
  for (const auto& p : v) diam = std::max(diam, std::hypot(p[0], p[1]));
  if (std::sqrt(q2) * diam < 1e-4) {
    // quadratic moment via the exact midpoint rule on the origin fan
    double quad = 0.0;
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % n];
      const double at = 0.5 * std::abs(a[0] * b[1] - b[0] * a[1]);
      const double da = 0.5 * (xi[0] * a[0] + xi[1] * a[1]);
      const double db = 0.5 * (xi[0] * b[0] + xi[1] * b[1]);
      const double dab = da + db;
      quad += at / 3.0 * (da * da + db * db + dab * dab);
    }
    return {area - 2.0 * kPi * kPi * quad, 0.0};
  }
  std::complex<double> total = 0.0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double len = std::hypot(ex, ey);
    const double ux = ex / len, uy = ey / len;
    double nx = uy, ny = -ux;  // outward for a CCW polygon containing 0
    const double mx = 0.5 * (a[0] + b[0]), my = 0.5 * (a[1] + b[1]);
    if (nx * mx + ny * my < 0.0) {
      nx = -nx;
      ny = -ny;
    }
    const double xin = xi[0] * nx + xi[1] * ny;
    const double xiu = xi[0] * ux + xi[1] * uy;
    const double phase = -2.0 * kPi * (xi[0] * mx + xi[1] * my);
    total += xin * len * sinc(kPi * len * xiu) *
             std::complex<double>(std::cos(phase), std::sin(phase));
  }
  // -1/(2 pi i) = i/(2 pi)
  return std::complex<double>(0.0, 1.0 / (2.0 * kPi * q2)) * total;
}

// tiny dense solve for the 3x3 tail-fit normal equations
bool solve3(double a[3][3], double b[3], double out[3]) {
  int idx[3] = {0, 1, 2};
  for (int k = 0; k < 3; ++k) {
    int piv = k;
    for (int r = k + 1; r < 3; ++r)
      if (std::abs(a[idx[r]][k]) > std::abs(a[idx[piv]][k])) piv = r;
    std::swap(idx[k], idx[piv]);
    if (std::abs(a[idx[k]][k]) < 1e-14) return false;
    for (int r = k + 1; r < 3; ++r) {
      const double f = a[idx[r]][k] / a[idx[k]][k];
      for (int c = k; c < 3; ++c) a[idx[r]][c] -= f * a[idx[k]][c];
      b[idx[r]] -= f * b[idx[k]];
    }
  }
  for (int k = 2; k >= 0; --k) {
    double s = b[idx[k]];
    for (int c = k + 1; c < 3; ++c) s -= a[idx[k]][c] * out[c];
    out[k] = s / a[idx[k]][k];
  }
  return true;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::complex<double> ft_indicator(const geometry::ConvexBody& body,
                                  std::span<const double> xi,
                                  const TorusGrid* quad_grid) {
  if (static_cast<int>(xi.size()) != body.dim())
    throw std::invalid_argument("ft_indicator: frequency dimension mismatch");
  const int d = body.dim();
  switch (body.kind()) {
    case geometry::ConvexBody::Kind::box: {
      std::complex<double> out = 1.0;
      for (int j = 0; j < d; ++j) out *= interval_ft(body.halfwidths()[j], xi[j]);
      return out;
    }
    case geometry::ConvexBody::Kind::ball: {
      const double r = body.radius();
      const double q = norm2v(xi);
      const double z = 2.0 * kPi * r * q;
      if (d == 1) return interval_ft(r, xi[0]);
      if (d == 2) {
        if (z < 1e-8) return kPi * r * r;
        return r * std::cyl_bessel_j(1.0, z) / q;
      }
      if (d == 3) {
        if (z < 1e-4) return 4.0 / 3.0 * kPi * r * r * r * (1.0 - z * z / 10.0);
        return (std::sin(z) - z * std::cos(z)) / (2.0 * kPi * kPi * q * q * q);
      }
      throw std::invalid_argument("ft_indicator: ball only up to d = 3");
    }
    case geometry::ConvexBody::Kind::hpolytope: {
      if (d == 2) {
        auto verts = body.vertices2d();
        const double area = *body.exact_volume();
        return polygon_ft(verts, area, xi);
      }
      if (!quad_grid)
        throw std::invalid_argument(
            "ft_indicator: polytope in d >= 3 needs a quadrature grid");
      // Riemann sum over the rasterized body, O(h * perimeter) accurate
      torus::GridFunction ind = torus::rasterize(body, *quad_grid);
      const double hd = std::pow(quad_grid->spacing(), d);
      std::vector<double> x(d);
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < quad_grid->size(); ++i) {
        if (ind.values[i] == 0.0) continue;
        quad_grid->node(i, x);
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase -= 2.0 * kPi * xi[j] * x[j];
        acc += std::complex<double>(std::cos(phase), std::sin(phase));
      }
      return hd * acc;
    }
  }
  throw std::logic_error("ft_indicator: unreachable");
}

std::vector<std::vector<double>> lattice_points_in_ball(
    const geometry::Lattice& lat, double radius) {
  const int d = lat.dim();
  const geometry::Lattice dual = lat.dual();
  // k = G^{-1} x and the rows of G^{-1} are the dual basis columns, so
  // |k_j| <= |dual col j| * |x|
  std::vector<int> kmax(d);
  for (int j = 0; j < d; ++j) {
    double nrm = 0.0;
    for (int r = 0; r < d; ++r) nrm += dual.entry(r, j) * dual.entry(r, j);
    kmax[j] = static_cast<int>(std::ceil(std::sqrt(nrm) * radius)) + 1;
  }
  std::vector<std::vector<double>> out;
  std::vector<int> k(d, 0);
  for (int j = 0; j < d; ++j) k[j] = -kmax[j];
  while (true) {
    std::vector<double> x = lat.point(k);
    if (norm2v(x) <= radius * (1.0 + 1e-12)) out.push_back(std::move(x));
    int axis = d - 1;
    while (axis >= 0) {
      if (++k[axis] <= kmax[axis]) break;
      k[axis] = -kmax[axis];
      --axis;
    }
    if (axis < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoverageReport lattice_tiling_check(const geometry::ConvexBody& body,
                                    const geometry::Lattice& lat,
                                    const TorusGrid& grid) {
  if (body.dim() != grid.dim() || lat.dim() != grid.dim())
    throw std::invalid_argument("lattice_tiling_check: dimension mismatch");
  const int d = grid.dim();
  // window of translates that can reach the period cell
  const double window =
      0.5 * grid.length() * std::sqrt(static_cast<double>(d)) +
      body.circumradius() + grid.spacing();
  auto lambdas = lattice_points_in_ball(lat, window);

  CoverageReport rep;
  rep.min_multiplicity = std::numeric_limits<int>::max();
  std::size_t ones = 0;
  std::vector<double> x(d), y(d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    int mult = 0;
    for (const auto& lam : lambdas) {
      for (int j = 0; j < d; ++j) y[j] = x[j] - lam[j];
      if (body.contains(y)) ++mult;
    }
    rep.min_multiplicity = std::min(rep.min_multiplicity, mult);
    rep.max_multiplicity = std::max(rep.max_multiplicity, mult);
    if (mult == 1) {
      ++ones;
    } else if (rep.offending_nodes.size() < 10) {
      rep.offending_nodes.push_back(x);
    }
  }
  rep.fraction_exactly_one =
      static_cast<double>(ones) / static_cast<double>(grid.size());
  return rep;
}

const char* to_string(SpectralStatus s) {
  switch (s) {
    case SpectralStatus::pass: return "pass";
    case SpectralStatus::fail: return "fail";
    case SpectralStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

SpectralReport spectral_pair_check(const geometry::ConvexBody& body,
                                   const geometry::Lattice& spectrum,
                                   const SpectralOptions& options) {
  if (body.dim() != spectrum.dim())
    throw std::invalid_argument("spectral_pair_check: dimension mismatch");
  const int d = body.dim();
  const double radius = options.truncation_radius;
  if (radius < 8.0)
    throw std::invalid_argument("spectral_pair_check: truncation radius too small");

  double vol;
  if (auto exact = body.exact_volume()) {
    vol = *exact;
  } else if (options.quad_grid) {
    vol = body.grid_volume(*options.quad_grid);
  } else {
    throw std::invalid_argument(
        "spectral_pair_check: need exact volume or a quadrature grid");
  }
  const double level = vol * vol;

  SpectralReport rep;
  auto lambdas = lattice_points_in_ball(spectrum, radius);
  rep.lambdas_used = static_cast<int>(lambdas.size());

  // orthogonality: differences of spectrum points are spectrum points, so
  // scanning nonzero lattice points covers every pair within the radius
  for (const auto& lam : lambdas) {
    if (norm2v(lam) == 0.0) continue;
    const double a = std::abs(ft_indicator(body, lam, options.quad_grid));
    ++rep.pairs_tested;
    if (a > rep.max_offdiagonal) {
      rep.max_offdiagonal = a;
      rep.worst_pair = lam;
    }
  }

  // Parseval level at sampled x: shell partial sums in |lambda|, then a
  // least-squares tail fit S(r) = S_inf - a/r - b/r^2 over the outer half.
  std::mt19937_64 rng(options.seed);
  const int r_hi = static_cast<int>(std::floor(radius));
  const int r_lo = std::max(4, r_hi / 2);
  bool fit_ok = true;
  std::vector<int> coeff(d);
  for (int sample = 0; sample < options.num_samples; ++sample) {
    std::vector<double> u(d);
    for (int j = 0; j < d; ++j) u[j] = uniform01(rng) - 0.5;
    std::vector<double> x(d, 0.0);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) x[r] += spectrum.entry(r, c) * u[c];

    std::vector<double> shell_sum(static_cast<std::size_t>(r_hi) + 1, 0.0);
    std::vector<double> diff(d);
    for (const auto& lam : lambdas) {
      const double rr = norm2v(lam);
      const int bucket = static_cast<int>(std::ceil(rr - 1e-12));
      if (bucket > r_hi) continue;
      for (int j = 0; j < d; ++j) diff[j] = x[j] - lam[j];
      const double a = std::abs(ft_indicator(body, diff, options.quad_grid));
      shell_sum[std::max(bucket, 0)] += a * a;
    }
    std::vector<double> cum(shell_sum.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < shell_sum.size(); ++i) {
      acc += shell_sum[i];
      cum[i] = acc;
    }
    // normal equations for (S_inf, a, b)
    double ata[3][3] = {};
    double atb[3] = {};
    for (int r = r_lo; r <= r_hi; ++r) {
      const double row[3] = {1.0, -1.0 / r, -1.0 / (double(r) * r)};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
        atb[i] += row[i] * cum[r];
      }
    }
    double coefs[3];
    if (!solve3(ata, atb, coefs)) {
      fit_ok = false;
      coefs[0] = cum[r_hi];
      coefs[1] = coefs[2] = 0.0;
    }
    const double extrapolated = coefs[0];
    const double tail = std::abs(coefs[1]) / r_hi +
                        std::abs(coefs[2]) / (double(r_hi) * r_hi);
    rep.tail_estimate = std::max(rep.tail_estimate, tail);
    rep.parseval_level_error =
        std::max(rep.parseval_level_error, std::abs(extrapolated - level));
    rep.parseval_level_error_raw =
        std::max(rep.parseval_level_error_raw, std::abs(cum[r_hi] - level));
    // residual of the fit gauges whether the extrapolation can be trusted
    double rms = 0.0;
    int cnt = 0;
    for (int r = r_lo; r <= r_hi; ++r) {
      const double pred =
          coefs[0] - coefs[1] / r - coefs[2] / (double(r) * r);
      rms += (pred - cum[r]) * (pred - cum[r]);
      ++cnt;
    }
    rms = std::sqrt(rms / std::max(cnt, 1));
    if (rms > 0.5 * options.parseval_tol * level) fit_ok = false;
  }

  const bool orth_ok = rep.max_offdiagonal <= options.orth_tol;
  const bool level_ok = rep.parseval_level_error <= options.parseval_tol * level;
  if (!fit_ok && orth_ok) {
    rep.status = SpectralStatus::inconclusive;
  } else {
    rep.status = (orth_ok && level_ok) ? SpectralStatus::pass
                                       : SpectralStatus::fail;
  }
  return rep;
}

const char* to_string(SupportVerdict v) {
  switch (v) {
    case SupportVerdict::pass: return "pass";
    case SupportVerdict::fail: return "fail";
    case SupportVerdict::boundary: return "boundary";
  }
  return "?";
}

SupportReport support_condition_check(const geometry::ConvexBody& body,
                                      const geometry::Lattice& spectrum) {
  if (body.dim() != spectrum.dim())
    throw std::invalid_argument("support_condition_check: dimension mismatch");
  const geometry::ConvexBody doubled = body.scaled(2.0);
  const geometry::ConvexBody shrunk = doubled.scaled(1.0 - 1e-9);
  const geometry::ConvexBody grown = doubled.scaled(1.0 + 1e-9);
  const geometry::Lattice dual = spectrum.dual();
  auto points =
      lattice_points_in_ball(dual, doubled.circumradius() * (1.0 + 1e-6) + 1.0);

  // witness is the smallest offending point so reports are canonical
  SupportReport rep;
  auto better = [](const std::vector<double>& a, const std::vector<double>& b) {
    const double na = norm2v(a), nb = norm2v(b);
    if (std::abs(na - nb) > 1e-12) return na < nb;
    return a < b;
  };
  std::optional<std::vector<double>> worst_fail, worst_boundary;
  for (const auto& pt : points) {
    if (norm2v(pt) == 0.0) continue;
    if (shrunk.contains(pt)) {  // strictly inside the open 2*Omega
      if (!worst_fail || better(pt, *worst_fail)) worst_fail = pt;
    } else if (grown.contains(pt)) {
      if (!worst_boundary || better(pt, *worst_boundary)) worst_boundary = pt;
    }
  }
  if (worst_fail) {
    rep.verdict = SupportVerdict::fail;
    rep.witness = worst_fail;
  } else if (worst_boundary) {
    rep.verdict = SupportVerdict::boundary;
    rep.witness = worst_boundary;
  }
  return rep;
}

DensityReport density_estimate(
    const std::vector<std::vector<double>>& points,
    const std::vector<std::vector<double>>& centers,
    const std::vector<double>& radii) {
  if (centers.empty() || radii.empty())
    throw std::invalid_argument("density_estimate: empty window set");
  for (double r : radii)
    if (!(r > 1.0)) throw std::invalid_argument("density_estimate: radii must be > 1");

  DensityReport rep;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (const auto& c : centers) {
    for (double r : radii) {
      std::size_t count = 0;
      for (const auto& p : points) {
        double s = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j)
          s += (p[j] - c[j]) * (p[j] - c[j]);
        if (s <= r * r) ++count;
      }
      const double vol =
          unit_ball_volume(static_cast<int>(c.size())) *
          std::pow(r, static_cast<double>(c.size()));
      const double density = static_cast<double>(count) / vol;
      sum += density;
      lo = std::min(lo, density);
      hi = std::max(hi, density);
      ++rep.windows;
    }
  }
  rep.mean = sum / rep.windows;
  rep.spread = hi - lo;
  return rep;
}

double at_zero_mass(const geometry::Lattice& lat) {
  // Poisson summation: the transformed lattice measure has point mass
  // dens(Lambda) = 1/|det G| at the origin.
  return lat.density();
}

}  // namespace turan::tiling

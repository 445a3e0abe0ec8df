#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "testutil.hpp"
#include "turan/tiling.hpp"
#include "turan/torus.hpp"

using namespace turan;
using geometry::ConvexBody;
using geometry::Lattice;

namespace {

constexpr double kPi = std::numbers::pi;

// brute quadrature of the indicator transform, for 2D bodies
std::complex<double> quad_ft(const ConvexBody& body, double x1, double x2,
                             int n = 600) {
  const double r = body.circumradius_inf() * 1.05;
  const double w = 2.0 * r / n;
  std::complex<double> acc = 0.0;
  std::vector<double> p(2);
  for (int i = 0; i < n; ++i) {
    p[0] = -r + (i + 0.5) * w;
    for (int j = 0; j < n; ++j) {
      p[1] = -r + (j + 0.5) * w;
      if (!body.contains(p)) continue;
      const double phase = -2.0 * kPi * (x1 * p[0] + x2 * p[1]);
      acc += std::polar(1.0, phase);
    }
  }
  return acc * (w * w);
}

}  // namespace

TEST_CASE("ft_indicator anchors: box") {
  auto q1 = ConvexBody::box({0.5});  // unit cube in 1D
  CHECK(std::abs(tiling::ft_indicator(q1, std::vector<double>{1.0})) <= 1e-15);
  CHECK(tiling::ft_indicator(q1, std::vector<double>{0.0}).real() ==
        doctest::Approx(1.0));
  // sin(2 pi w xi)/(pi xi) at w=1, xi=0.25 -> sin(pi/2)/(pi/4) = 4/pi
  auto b = ConvexBody::box({1.0});
  CHECK(tiling::ft_indicator(b, std::vector<double>{0.25}).real() ==
        doctest::Approx(4.0 / kPi).epsilon(1e-12));
}

TEST_CASE("ft_indicator anchors: ball") {
  auto disk = ConvexBody::ball(2, 1.0);
  CHECK(tiling::ft_indicator(disk, std::vector<double>{0.0, 0.0}).real() ==
        doctest::Approx(kPi).epsilon(1e-12));
  // against quadrature at a nontrivial frequency
  auto v = tiling::ft_indicator(disk, std::vector<double>{0.7, -0.3});
  auto q = quad_ft(disk, 0.7, -0.3, 900);
  CHECK(std::abs(v - q) <= 5e-3);

  auto ball3 = ConvexBody::ball(3, 1.0);
  CHECK(tiling::ft_indicator(ball3, std::vector<double>{0.0, 0.0, 0.0}).real() ==
        doctest::Approx(4.0 / 3.0 * kPi).epsilon(1e-10));
}

TEST_CASE("ft_indicator: 2D polygon edge formula against quadrature") {
  auto hex = testutil::hexagon(1.0);
  for (auto [x1, x2] : {std::pair{0.7, 0.35}, {1.3, -0.2}, {0.05, 0.02}}) {
    auto v = tiling::ft_indicator(hex, std::vector<double>{x1, x2});
    auto q = quad_ft(hex, x1, x2, 900);
    CHECK(std::abs(v - q) <= 5e-3);
    CHECK(std::abs(v.imag()) <= 1e-12);  // symmetric body, real transform
  }
  // area at frequency zero
  CHECK(tiling::ft_indicator(hex, std::vector<double>{0.0, 0.0}).real() ==
        doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("ft_indicator: d=3 polytope needs a quadrature grid") {
  auto cube3 = ConvexBody::hpolytope(3, {{{1.0, 0.0, 0.0}, 0.5},
                                         {{0.0, 1.0, 0.0}, 0.5},
                                         {{0.0, 0.0, 1.0}, 0.5}});
  std::vector<double> xi = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(tiling::ft_indicator(cube3, xi), std::invalid_argument);
  TorusGrid grid(3, 32, 2.0);
  // sinc zero at integer frequency; quadrature error is O(h)
  CHECK(std::abs(tiling::ft_indicator(cube3, xi, &grid)) <= 0.1);
}

TEST_CASE("lattice window enumeration") {
  Lattice z2({1.0, 0.0, 0.0, 1.0}, 2);
  auto pts = tiling::lattice_points_in_ball(z2, 2.5);
  CHECK(pts.size() == 21);  // integer points with |x| <= 2.5
}

TEST_CASE("tiling check: cube + Z^d in 1, 2 and 3 dimensions") {
  // L irrational-ish so no node lands on a translate boundary
  const double L = 2.0 * kPi;
  for (int d : {1, 2, 3}) {
    std::vector<double> hw(d, 0.5);
    std::vector<double> gen(d * d, 0.0);
    for (int j = 0; j < d; ++j) gen[j * d + j] = 1.0;
    TorusGrid grid(d, d == 3 ? 32 : 64, L);
    auto rep = tiling::lattice_tiling_check(ConvexBody::box(hw),
                                            Lattice(gen, d), grid);
    CHECK(rep.min_multiplicity == 1);
    CHECK(rep.max_multiplicity == 1);
    CHECK(rep.fraction_exactly_one == 1.0);
    CHECK(rep.passes(0.98));
  }
}

TEST_CASE("tiling check: disk + Z^2 fails hard") {
  TorusGrid grid(2, 64, 6.0);
  auto rep = tiling::lattice_tiling_check(ConvexBody::ball(2, 1.0),
                                          Lattice({1.0, 0.0, 0.0, 1.0}, 2),
                                          grid);
  CHECK(rep.max_multiplicity >= 2);
  CHECK_FALSE(rep.passes(0.95));
  CHECK_FALSE(rep.offending_nodes.empty());
}

TEST_CASE("tiling check: hexagon with its matching lattice") {
  TorusGrid grid(2, 64, 6.0);
  auto hex = testutil::hexagon(1.0);
  auto lat = testutil::hexagon_tiling_lattice(1.0);
  CHECK(lat.det_abs() == doctest::Approx(*hex.exact_volume()).epsilon(1e-12));
  auto rep = tiling::lattice_tiling_check(hex, lat, grid);
  CHECK(rep.fraction_exactly_one >= 0.95);
  CHECK(rep.passes(0.95));
}

TEST_CASE("tiling multiplicity agrees with periodize on a commensurate case") {
  TorusGrid grid(1, 12, 4.0);
  auto body = ConvexBody::box({0.5});
  Lattice z({1.0}, 1);
  auto rep = tiling::lattice_tiling_check(body, z, grid);
  torus::GridFunction p =
      torus::periodize(torus::rasterize(body, grid), z);
  double lo = 1e300, hi = -1e300;
  for (double v : p.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(rep.min_multiplicity == static_cast<int>(lo));
  CHECK(rep.max_multiplicity == static_cast<int>(hi));
}

TEST_CASE("spectral pair: (Q_2, Z^2) passes at tight tolerances") {
  auto q2 = ConvexBody::box({0.5, 0.5});
  Lattice z2({1.0, 0.0, 0.0, 1.0}, 2);
  tiling::SpectralOptions opt;
  opt.truncation_radius = 40.0;
  opt.orth_tol = 1e-12;
  opt.parseval_tol = 1e-4;  // |Omega|^2 = 1
  auto rep = tiling::spectral_pair_check(q2, z2, opt);
  CHECK(rep.status == tiling::SpectralStatus::pass);
  CHECK(rep.max_offdiagonal <= 1e-12);
  CHECK(rep.parseval_level_error <= 1e-4);
  CHECK(rep.parseval_level_error_raw > rep.parseval_level_error);
  CHECK(rep.pairs_tested > 1000);
}

TEST_CASE("Parseval tail extrapolation against the exact trigamma tail") {
  // for the 1D cube the truncated sinc^2 sum has the closed-form tail
  // sin^2(pi x)/pi^2 (psi_1(R+1-x) + psi_1(R+1+x)); the generic shell fit
  // must land within a few percent of it
  auto q1 = ConvexBody::box({0.5});
  Lattice z1({1.0}, 1);
  tiling::SpectralOptions opt;
  opt.truncation_radius = 40.0;
  opt.seed = 5;
  opt.num_samples = 4;
  opt.parseval_tol = 1e-4;
  auto rep = tiling::spectral_pair_check(q1, z1, opt);
  CHECK(rep.status == tiling::SpectralStatus::pass);
  CHECK(rep.parseval_level_error <= 1e-5);

  // sanity of the test oracle itself at a generic point
  const double x = 0.3;
  const double exact_tail = std::pow(std::sin(kPi * x) / kPi, 2) *
                            (testutil::trigamma(41.0 - x) +
                             testutil::trigamma(41.0 + x));
  double partial = 0.0;
  for (int k = -40; k <= 40; ++k) {
    const double z = kPi * (x - k);
    partial += std::pow(std::sin(z) / z, 2);
  }
  CHECK(partial + exact_tail == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spectral pair: square with half-integer lattice") {
  auto sq = ConvexBody::box({1.0, 1.0});
  Lattice half({0.5, 0.0, 0.0, 0.5}, 2);
  tiling::SpectralOptions opt;
  opt.orth_tol = 1e-12;
  opt.parseval_tol = 1e-3;  // relative to |Omega|^2 = 16
  auto rep = tiling::spectral_pair_check(sq, half, opt);
  CHECK(rep.status == tiling::SpectralStatus::pass);
}

TEST_CASE("spectral pair: hexagon with the dual of its tiling lattice") {
  auto hex = testutil::hexagon(1.0);
  auto spectrum = testutil::hexagon_tiling_lattice(1.0).dual();
  tiling::SpectralOptions opt;
  opt.orth_tol = 1e-10;
  opt.parseval_tol = 2e-3;
  auto rep = tiling::spectral_pair_check(hex, spectrum, opt);
  CHECK(rep.status == tiling::SpectralStatus::pass);
  CHECK(rep.max_offdiagonal <= 1e-10);
}

TEST_CASE("spectral pair: disk + Z^2 fails orthogonality loudly") {
  auto disk = ConvexBody::ball(2, 1.0);
  Lattice z2({1.0, 0.0, 0.0, 1.0}, 2);
  auto rep = tiling::spectral_pair_check(disk, z2);
  CHECK(rep.status == tiling::SpectralStatus::fail);
  // J1(2 pi)/1 at the point (1,0) is far from zero
  const double at10 =
      std::abs(tiling::ft_indicator(disk, std::vector<double>{1.0, 0.0}));
  CHECK(rep.max_offdiagonal >= at10 - 1e-12);
  CHECK(at10 > 0.01);
}

TEST_CASE("support condition: cube, scaled squares, disk") {
  auto q2 = ConvexBody::box({0.5, 0.5});
  Lattice z2({1.0, 0.0, 0.0, 1.0}, 2);
  auto rep = tiling::support_condition_check(q2, z2);
  // integer points touch the boundary of the open 2*Omega: the condition
  // holds and the contact is flagged
  CHECK(rep.holds());
  CHECK(rep.verdict == tiling::SupportVerdict::boundary);

  // [-1,1]^2 with spectrum (1/2)Z^2: dual 2Z^2 touches the boundary of
  // [-2,2]^2, same flag, with a witness
  auto sq = ConvexBody::box({1.0, 1.0});
  Lattice half({0.5, 0.0, 0.0, 0.5}, 2);
  auto rep2 = tiling::support_condition_check(sq, half);
  CHECK(rep2.holds());
  CHECK(rep2.verdict == tiling::SupportVerdict::boundary);
  REQUIRE(rep2.witness.has_value());
  CHECK(std::abs((*rep2.witness)[0]) + std::abs((*rep2.witness)[1]) ==
        doctest::Approx(2.0).epsilon(1e-9));

  // disk + Z^2: (1,0) sits strictly inside the doubled disk
  auto disk = ConvexBody::ball(2, 1.0);
  auto rep3 = tiling::support_condition_check(disk, z2);
  CHECK_FALSE(rep3.holds());
  CHECK(rep3.verdict == tiling::SupportVerdict::fail);
  REQUIRE(rep3.witness.has_value());
  CHECK(std::hypot((*rep3.witness)[0], (*rep3.witness)[1]) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // shrink the spectrum: dual moves outward and the flag clears
  Lattice fine({0.4, 0.0, 0.0, 0.4}, 2);  // dual = 2.5 Z^2, outside [-2,2]^2
  auto rep4 = tiling::support_condition_check(sq, fine);
  CHECK(rep4.verdict == tiling::SupportVerdict::pass);
}

TEST_CASE("spectral implies support condition on the corpus") {
  struct Pair {
    ConvexBody body;
    Lattice spectrum;
  };
  std::vector<Pair> corpus;
  corpus.push_back({ConvexBody::box({0.5, 0.5}), Lattice({1, 0, 0, 1}, 2)});
  corpus.push_back({ConvexBody::box({1.0, 1.0}), Lattice({0.5, 0, 0, 0.5}, 2)});
  corpus.push_back(
      {testutil::hexagon(1.0), testutil::hexagon_tiling_lattice(1.0).dual()});
  for (const auto& pair : corpus) {
    tiling::SpectralOptions opt;
    opt.orth_tol = 1e-10;
    opt.parseval_tol = 2e-3;
    auto spec = tiling::spectral_pair_check(pair.body, pair.spectrum, opt);
    REQUIRE(spec.status == tiling::SpectralStatus::pass);
    CHECK(tiling::support_condition_check(pair.body, pair.spectrum).holds());
  }
}

TEST_CASE("density estimates and the zero mass") {
  Lattice z2({1.0, 0.0, 0.0, 1.0}, 2);
  auto pts = tiling::lattice_points_in_ball(z2, 45.0);
  auto rep = tiling::density_estimate(
      pts, {{0.0, 0.0}, {5.0, 7.0}}, {20.0, 24.0});
  CHECK(rep.mean == doctest::Approx(1.0).epsilon(0.03));
  CHECK(tiling::at_zero_mass(z2) == doctest::Approx(1.0));

  Lattice diag({2.0, 0.0, 0.0, 2.0}, 2);
  auto pts2 = tiling::lattice_points_in_ball(diag, 45.0);
  auto rep2 = tiling::density_estimate(pts2, {{0.0, 0.0}}, {20.0});
  CHECK(rep2.mean == doctest::Approx(0.25).epsilon(0.05));
  CHECK(tiling::at_zero_mass(diag) == doctest::Approx(0.25));
  // the empirical density brackets the Poisson point mass
  CHECK(std::abs(rep2.mean - tiling::at_zero_mass(diag)) <=
        rep2.spread + 0.02);

  CHECK_THROWS_AS(tiling::density_estimate(pts, {}, {20.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tiling::density_estimate(pts, {{0.0, 0.0}}, {0.5}),
                  std::invalid_argument);
}

TEST_CASE("lattice density matches window counting within 2 percent") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> gen(4);
    do {
      for (auto& g : gen) g = testutil::uniform(rng, -1.5, 1.5);
    } while (std::abs(gen[0] * gen[3] - gen[1] * gen[2]) < 0.4);
    Lattice lat(gen, 2);
    double colnorm = std::max(std::hypot(gen[0], gen[1]),
                              std::hypot(gen[2], gen[3]));
    const double r = 20.0 * colnorm;
    auto pts = tiling::lattice_points_in_ball(lat, r * 1.3);
    auto rep = tiling::density_estimate(pts, {{0.0, 0.0}}, {r});
    CHECK(rep.mean == doctest::Approx(lat.density()).epsilon(0.02));
  }
}

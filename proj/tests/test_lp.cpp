#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "testutil.hpp"
#include "turan/lp.hpp"

using namespace turan;
using lp::Result;
using lp::Solver;
using lp::Status;

TEST_CASE("textbook LP") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6)
  Solver s;
  s.add_variable(3.0, lp::kInf);
  s.add_variable(5.0, lp::kInf);
  s.add_row({1.0, 0.0}, 4.0);
  s.add_row({0.0, 2.0}, 12.0);
  s.add_row({3.0, 2.0}, 18.0);
  Result r = s.solve();
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective == doctest::Approx(36.0).epsilon(1e-10));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
  CHECK(r.duality_gap <= 1e-9);
}

TEST_CASE("upper bounds push variables to their box limits") {
  // max x + y, x + y <= 10, x <= 2, y <= 3 (bounds, not rows)
  Solver s;
  s.add_variable(1.0, 2.0);
  s.add_variable(1.0, 3.0);
  s.add_row({1.0, 1.0}, 10.0);
  Result r = s.solve();
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective == doctest::Approx(5.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(3.0));
}

TEST_CASE("unbounded detection") {
  Solver s;
  s.add_variable(1.0, lp::kInf);
  s.add_variable(1.0, lp::kInf);
  s.add_row({1.0, -1.0}, 1.0);
  Result r = s.solve();
  CHECK(r.status == Status::unbounded);
}

TEST_CASE("no rows: variables go to their favorable bounds") {
  Solver s;
  s.add_variable(2.0, 1.5);
  s.add_variable(-1.0, 4.0);
  Result r = s.solve();
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.x[0] == doctest::Approx(1.5));
  CHECK(r.x[1] == doctest::Approx(0.0));
}

TEST_CASE("Beale cycling example terminates") {
  // classic cycling instance for Dantzig pricing without safeguards
  Solver s;
  s.add_variable(0.75, lp::kInf);
  s.add_variable(-150.0, lp::kInf);
  s.add_variable(0.02, lp::kInf);
  s.add_variable(-6.0, lp::kInf);
  s.add_row({0.25, -60.0, -1.0 / 25.0, 9.0}, 0.0);
  s.add_row({0.5, -90.0, -1.0 / 50.0, 3.0}, 0.0);
  s.add_row({0.0, 0.0, 1.0, 0.0}, 1.0);
  Result r = s.solve();
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("degenerate rhs zeros do not cycle") {
  Solver s;
  s.add_variable(1.0, 1.0);
  s.add_variable(1.0, 1.0);
  s.add_variable(1.0, 1.0);
  s.add_row({1.0, -1.0, 0.0}, 0.0);
  s.add_row({0.0, 1.0, -1.0}, 0.0);
  s.add_row({1.0, 1.0, 1.0}, 2.0);
  Result r = s.solve();
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.duality_gap <= 1e-9);
}

namespace {

// feasibility + sign conditions + near-zero duality gap certify optimality
// (weak duality), independent of the pivot path taken
void check_certificate(const Solver& s, const Result& r,
                       const std::vector<std::vector<double>>& rows,
                       const std::vector<double>& rhs,
                       const std::vector<double>& upper) {
  REQUIRE(r.status == Status::optimal);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < r.x.size(); ++j) ax += rows[i][j] * r.x[j];
    CHECK(ax <= rhs[i] + 1e-7);
    CHECK(r.row_duals[i] >= 0.0);
  }
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    CHECK(r.x[j] >= -1e-9);
    CHECK(r.x[j] <= upper[j] + 1e-9);
  }
  CHECK(r.duality_gap <= 1e-7 * (1.0 + std::abs(r.objective)));
  (void)s;
}

}  // namespace

TEST_CASE("random LPs carry valid optimality certificates") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int m = 1 + static_cast<int>(rng() % 8);
    Solver s;
    std::vector<double> upper;
    for (int j = 0; j < n; ++j) {
      const double u = (rng() % 3 == 0) ? lp::kInf : testutil::uniform(rng, 0.5, 3.0);
      upper.push_back(u);
      s.add_variable(testutil::uniform(rng, -2.0, 2.0), u);
    }
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int i = 0; i < m; ++i) {
      std::vector<double> row(n);
      for (auto& a : row) a = testutil::uniform(rng, -2.0, 2.0);
      rows.push_back(row);
      rhs.push_back(testutil::uniform(rng, 0.0, 3.0));
      s.add_row(std::move(row), rhs.back());
    }
    Result r = s.solve();
    if (r.status == Status::unbounded) continue;  // legit with free columns
    check_certificate(s, r, rows, rhs, upper);
  }
}

TEST_CASE("appending rows after a solve warm-starts through dual steps") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Solver s;
    std::vector<double> upper;
    for (int j = 0; j < n; ++j) {
      upper.push_back(1.0);
      s.add_variable(testutil::uniform(rng, -1.0, 2.0), 1.0);
    }
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    auto add_random_row = [&]() {
      std::vector<double> row(n);
      for (auto& a : row) a = testutil::uniform(rng, -2.0, 2.0);
      rows.push_back(row);
      rhs.push_back(testutil::uniform(rng, 0.1, 2.0));
      s.add_row(std::move(row), rhs.back());
    };
    add_random_row();
    add_random_row();
    Result r1 = s.solve();
    REQUIRE(r1.status == Status::optimal);
    // three more batches of cuts, re-solving in place
    for (int batch = 0; batch < 3; ++batch) {
      add_random_row();
      add_random_row();
      Result r2 = s.solve();
      check_certificate(s, r2, rows, rhs, upper);
      CHECK(r2.objective <= r1.objective + 1e-8);  // rows only cut the set
      r1 = r2;
    }
  }
}

TEST_CASE("warm-started optimum equals a cold solve of the same LP") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    std::vector<double> obj(n);
    for (auto& c : obj) c = testutil::uniform(rng, -1.0, 2.0);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int i = 0; i < 6; ++i) {
      std::vector<double> row(n);
      for (auto& a : row) a = testutil::uniform(rng, -2.0, 2.0);
      rows.push_back(row);
      rhs.push_back(testutil::uniform(rng, 0.1, 2.0));
    }

    Solver warm;
    for (double c : obj) warm.add_variable(c, 1.0);
    warm.add_row(std::vector<double>(rows[0]), rhs[0]);
    warm.add_row(std::vector<double>(rows[1]), rhs[1]);
    REQUIRE(warm.solve().status == Status::optimal);
    for (int i = 2; i < 6; ++i) {
      warm.add_row(std::vector<double>(rows[i]), rhs[i]);
      REQUIRE(warm.solve().status == Status::optimal);
    }

    Solver cold;
    for (double c : obj) cold.add_variable(c, 1.0);
    for (int i = 0; i < 6; ++i) cold.add_row(std::vector<double>(rows[i]), rhs[i]);

    const double a = warm.solve().objective;
    const double b = cold.solve().objective;
    CHECK(a == doctest::Approx(b).epsilon(1e-8));
  }
}

#pragma once
// Dense revised simplex for  max c.x  s.t.  A x <= b,  0 <= x <= u,
// with b >= 0 so the slack basis is primal feasible from the start.
//
// The solver keeps its basis between calls: rows appended after a solve are
// absorbed by dual simplex steps (the old basis stays dual feasible), which
// is what the cutting-plane loop in the Turan solver relies on. Pricing is
// largest-coefficient with an automatic switch to Bland's rule when the
// objective stalls, so runs are deterministic and cannot cycle.

#include <cstddef>
#include <limits>
#include <vector>

namespace turan::lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status { optimal, iteration_limit, unbounded, numerical };

struct Options {
  double reduced_cost_tol = 1e-10;
  double pivot_tol = 1e-11;
  double feas_tol = 1e-10;
  int refactor_every = 75;
  long max_iterations = 2'000'000;
  // iterations without objective progress before Bland's rule engages
  int stall_limit = 600;
};

struct Result {
  Status status = Status::numerical;
  double objective = 0.0;
  std::vector<double> x;          // structural variables
  std::vector<double> row_duals;  // y >= 0, one per row
  double duality_gap = 0.0;       // |primal - dual| certificate residual
  long iterations = 0;
  bool bland_engaged = false;
};

class Solver {
 public:
  explicit Solver(Options opt = {});

  int add_variable(double objective, double upper);  // returns column index
  // coeffs has one entry per structural variable; rhs must be >= 0
  void add_row(std::vector<double> coeffs, double rhs);

  int num_variables() const { return nvars_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  // Solve from the current basis (slack basis on first call). Rows added
  // since the last solve enter with their slack basic, possibly infeasible;
  // dual simplex restores feasibility before primal finishes.
  Result solve();

  // Drop basis information and restart from the slack basis.
  void reset_basis();

 private:
  Result solve_inner();
  enum class VarState : unsigned char { at_lower, at_upper, basic };

  double upper_of(int col) const;
  double obj_of(int col) const;
  const double* column(int col) const;  // structural columns only
  double col_dot(const double* v, int col) const;   // v . A_col
  double col_entry(const double* rowvec, int col) const;

  void ensure_state();
  void refactorize();                  // rebuild binv_ from basis_
  double basic_value(int row) const { return xb_[row]; }
  void compute_basics();               // xb_ from nonbasic values
  void pivot(int row, int col_in, const std::vector<double>& w);

  bool price(int& col_in, double& dir, std::vector<double>& y, bool bland);
  bool ratio_test(int col_in, double dir, const std::vector<double>& w,
                  int& row_out, double& step, bool& bound_flip, bool bland);
  bool dual_step(std::vector<double>& y, bool bland, bool& progressed);

  Options opt_;
  int nvars_ = 0;
  std::vector<double> obj_;
  std::vector<double> upper_;
  std::vector<std::vector<double>> cols_;  // structural columns, padded to m
  std::vector<double> rhs_;

  // basis state
  bool started_ = false;
  std::vector<int> basis_;              // column index per row (slack = nvars_+i)
  std::vector<VarState> state_;         // per column (structural + slack)
  std::vector<double> nonbasic_value_;  // value of nonbasic columns
  std::vector<double> binv_;            // m x m row-major
  std::vector<double> xb_;              // basic variable values
  int pivots_since_refactor_ = 0;
};

}  // namespace turan::lp

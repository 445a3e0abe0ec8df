#include "turan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "turan/kernels.hpp"

namespace turan::lp {

namespace {
constexpr int kSlackBase = 1 << 30;  // never a real column count
}

Solver::Solver(Options opt) : opt_(opt) {}

int Solver::add_variable(double objective, double upper) {
  if (!rhs_.empty())
    throw std::logic_error("lp: add all variables before rows");
  obj_.push_back(objective);
  upper_.push_back(upper);
  cols_.emplace_back();
  return nvars_++;
}

void Solver::add_row(std::vector<double> coeffs, double rhs) {
  if (static_cast<int>(coeffs.size()) != nvars_)
    throw std::invalid_argument("lp: row size mismatch");
  if (!(rhs >= 0.0))
    throw std::invalid_argument("lp: rhs must be nonnegative");
  for (int j = 0; j < nvars_; ++j) cols_[j].push_back(coeffs[j]);
  rhs_.push_back(rhs);
}

double Solver::upper_of(int col) const {
  return col < nvars_ ? upper_[col] : kInf;
}

double Solver::obj_of(int col) const { return col < nvars_ ? obj_[col] : 0.0; }

const double* Solver::column(int col) const { return cols_[col].data(); }

double Solver::col_dot(const double* v, int col) const {
  const std::size_t m = rhs_.size();
  if (col < nvars_) return kernels::active().dot(v, column(col), m);
  return v[col - nvars_];  // slack column e_i
}

void Solver::ensure_state() {
  const std::size_t m = rhs_.size();
  if (!started_) {
    basis_.resize(m);
    state_.assign(nvars_ + m, VarState::at_lower);
    nonbasic_value_.assign(nvars_ + m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      basis_[i] = nvars_ + static_cast<int>(i);
      state_[nvars_ + i] = VarState::basic;
    }
    binv_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) binv_[i * m + i] = 1.0;
    xb_ = rhs_;
    started_ = true;
    pivots_since_refactor_ = 0;
    return;
  }
  const std::size_t m_old = basis_.size();
  if (m_old == m) return;

  // Rows were appended after a solve: extend the basis with the new slacks.
  // B_new = [[B, 0], [C, I]] so B_new^{-1} = [[B^{-1}, 0], [-C B^{-1}, I]].
  std::vector<double> binv(m * m, 0.0);
  for (std::size_t r = 0; r < m_old; ++r)
    for (std::size_t c = 0; c < m_old; ++c)
      binv[r * m + c] = binv_[r * m_old + c];
  for (std::size_t r = m_old; r < m; ++r) {
    // C row = entries of the old basic columns in new row r
    for (std::size_t c = 0; c < m_old; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m_old; ++j) {
        int bj = basis_[j];
        double a = bj < nvars_ ? cols_[bj][r] : 0.0;  // old slacks are 0 here
        acc += a * binv_[j * m_old + c];
      }
      binv[r * m + c] = -acc;
    }
    binv[r * m + r] = 1.0;
  }
  binv_ = std::move(binv);
  for (std::size_t i = m_old; i < m; ++i) {
    basis_.push_back(nvars_ + static_cast<int>(i));
    state_.push_back(VarState::basic);
    nonbasic_value_.push_back(0.0);
  }
  compute_basics();
}

void Solver::refactorize() {
  const std::size_t m = rhs_.size();
  // Gauss-Jordan inversion of the basis matrix with partial pivoting.
  std::vector<double> a(m * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    int col = basis_[j];
    if (col < nvars_) {
      for (std::size_t r = 0; r < m; ++r) a[r * m + j] = cols_[col][r];
    } else {
      a[(col - nvars_) * m + j] = 1.0;
    }
  }
  std::vector<double> inv(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < m; ++r)
      if (std::abs(a[r * m + k]) > std::abs(a[piv * m + k])) piv = r;
    if (std::abs(a[piv * m + k]) < 1e-13)
      throw std::runtime_error("lp: singular basis during refactorization");
    if (piv != k) {
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(a[piv * m + c], a[k * m + c]);
        std::swap(inv[piv * m + c], inv[k * m + c]);
      }
    }
    const double p = 1.0 / a[k * m + k];
    kernels::active().scal(p, &a[k * m], m);
    kernels::active().scal(p, &inv[k * m], m);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == k) continue;
      const double f = a[r * m + k];
      if (f == 0.0) continue;
      kernels::active().axpy(-f, &a[k * m], &a[r * m], m);
      kernels::active().axpy(-f, &inv[k * m], &inv[r * m], m);
    }
  }
  binv_ = std::move(inv);
  pivots_since_refactor_ = 0;
  compute_basics();
}

void Solver::compute_basics() {
  const std::size_t m = rhs_.size();
  std::vector<double> r = rhs_;
  for (int j = 0; j < nvars_ + static_cast<int>(m); ++j) {
    if (state_[j] == VarState::basic) continue;
    const double v = nonbasic_value_[j];
    if (v == 0.0) continue;
    if (j < nvars_)
      kernels::active().axpy(-v, column(j), r.data(), m);
    else
      r[j - nvars_] -= v;
  }
  xb_.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    xb_[i] = kernels::active().dot(&binv_[i * m], r.data(), m);
}

void Solver::pivot(int row, int col_in, const std::vector<double>& w) {
  const std::size_t m = rhs_.size();
  const double p = w[row];
  kernels::active().scal(1.0 / p, &binv_[row * m], m);
  for (std::size_t r = 0; r < m; ++r) {
    if (static_cast<int>(r) == row) continue;
    const double f = w[r];
    if (f == 0.0) continue;
    kernels::active().axpy(-f, &binv_[row * m], &binv_[r * m], m);
  }
  basis_[row] = col_in;
  state_[col_in] = VarState::basic;
  // refactorization costs O(m^3); spacing it with m keeps the amortized
  // cost per pivot near the O(m^2) of the update without letting the
  // product-form inverse drift too far
  if (++pivots_since_refactor_ >=
      std::max(opt_.refactor_every, static_cast<int>(rhs_.size()) / 4))
    refactorize();
}

// Pick an entering column. Returns false when the basis is primal optimal.
bool Solver::price(int& col_in, double& dir, std::vector<double>& y,
                   bool bland) {
  const std::size_t m = rhs_.size();
  y.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const double cb = obj_of(basis_[r]);
    if (cb != 0.0) kernels::active().axpy(cb, &binv_[r * m], y.data(), m);
  }
  col_in = -1;
  dir = 0.0;
  double best = opt_.reduced_cost_tol;
  const int ncols = nvars_ + static_cast<int>(m);
  for (int j = 0; j < ncols; ++j) {
    if (state_[j] == VarState::basic) continue;
    const double d = obj_of(j) - col_dot(y.data(), j);
    double score = 0.0;
    double candidate_dir = 0.0;
    if (state_[j] == VarState::at_lower && d > opt_.reduced_cost_tol) {
      score = d;
      candidate_dir = 1.0;
    } else if (state_[j] == VarState::at_upper && d < -opt_.reduced_cost_tol) {
      score = -d;
      candidate_dir = -1.0;
    } else {
      continue;
    }
    if (bland) {
      col_in = j;
      dir = candidate_dir;
      return true;  // smallest eligible index
    }
    if (score > best) {
      best = score;
      col_in = j;
      dir = candidate_dir;
    }
  }
  return col_in >= 0;
}

bool Solver::ratio_test(int col_in, double dir, const std::vector<double>& w,
                        int& row_out, double& step, bool& bound_flip,
                        bool bland) {
  const std::size_t m = rhs_.size();
  double t_min = upper_of(col_in);  // bound flip distance (lower bounds are 0)
  bool flip = std::isfinite(t_min);
  if (!flip) t_min = kInf;
  row_out = -1;
  for (std::size_t r = 0; r < m; ++r) {
    const double dw = dir * w[r];
    double t;
    if (dw > opt_.pivot_tol) {
      t = xb_[r] / dw;  // basic falls to its lower bound 0
    } else if (dw < -opt_.pivot_tol && std::isfinite(upper_of(basis_[r]))) {
      t = (xb_[r] - upper_of(basis_[r])) / dw;
    } else {
      continue;
    }
    if (t < 0.0) t = 0.0;  // tolerate slightly out-of-bound basics
    bool better;
    if (t < t_min - 1e-12) {
      better = true;
    } else if (t <= t_min + 1e-12 && row_out >= 0) {
      // tie-break: Bland takes the smallest variable index, otherwise the
      // most stable pivot
      better = bland ? basis_[r] < basis_[row_out]
                     : std::abs(w[r]) > std::abs(w[row_out]);
    } else {
      better = row_out < 0 && t <= t_min + 1e-12;
    }
    if (better) {
      t_min = std::min(t, t_min);
      row_out = static_cast<int>(r);
      flip = false;
    }
  }
  if (row_out < 0 && !flip) return false;  // unbounded direction
  step = t_min;
  bound_flip = flip;
  return true;
}

// One dual simplex step; returns false if no infeasible basic remains.
// Sets progressed=false when the step failed (treated as numerical).
bool Solver::dual_step(std::vector<double>& y, bool bland, bool& progressed) {
  const std::size_t m = rhs_.size();
  progressed = true;
  int row = -1;
  double worst = opt_.feas_tol;
  bool leaves_at_lower = true;
  for (std::size_t r = 0; r < m; ++r) {
    const double u = upper_of(basis_[r]);
    double viol_low = -xb_[r];
    double viol_up = std::isfinite(u) ? xb_[r] - u : -kInf;
    if (viol_low > worst || viol_up > worst) {
      if (bland && row >= 0 && basis_[r] >= basis_[row]) continue;
      double v = std::max(viol_low, viol_up);
      if (bland || v > worst || row < 0) {
        if (!bland && row >= 0 && v <= worst) continue;
        row = static_cast<int>(r);
        worst = bland ? worst : v;
        leaves_at_lower = viol_low >= viol_up;
      }
    }
  }
  if (row < 0) return false;

  // reduced costs against the current y
  const int ncols = nvars_ + static_cast<int>(m);
  const double* rho = &binv_[row * m];
  int col_in = -1;
  double best_ratio = kInf;
  double alpha_in = 0.0;
  for (int j = 0; j < ncols; ++j) {
    if (state_[j] == VarState::basic) continue;
    const double alpha = col_dot(rho, j);
    // eligibility: moving j in its allowed direction must push x_B[row]
    // toward the violated bound
    bool ok;
    if (leaves_at_lower) {  // x_B[row] < 0, must increase
      ok = (state_[j] == VarState::at_lower && alpha < -opt_.pivot_tol) ||
           (state_[j] == VarState::at_upper && alpha > opt_.pivot_tol);
    } else {  // x_B[row] > u, must decrease
      ok = (state_[j] == VarState::at_lower && alpha > opt_.pivot_tol) ||
           (state_[j] == VarState::at_upper && alpha < -opt_.pivot_tol);
    }
    if (!ok) continue;
    const double d = obj_of(j) - col_dot(y.data(), j);
    const double ratio = std::abs(d) / std::abs(alpha);
    if (ratio < best_ratio - 1e-12 ||
        (ratio < best_ratio + 1e-12 &&
         (col_in < 0 || (bland ? j < col_in
                               : std::abs(alpha) > std::abs(alpha_in))))) {
      best_ratio = ratio;
      col_in = j;
      alpha_in = alpha;
    }
  }
  if (col_in < 0) {
    progressed = false;  // primal infeasible or numerics; caller restarts
    return true;
  }

  std::vector<double> w(m);
  if (col_in < nvars_) {
    for (std::size_t r = 0; r < m; ++r)
      w[r] = kernels::active().dot(&binv_[r * m], column(col_in), m);
  } else {
    for (std::size_t r = 0; r < m; ++r) w[r] = binv_[r * m + (col_in - nvars_)];
  }
  const double target = leaves_at_lower ? 0.0 : upper_of(basis_[row]);
  const double dx = (xb_[row] - target) / w[row];
  const double new_entering_value = nonbasic_value_[col_in] + dx;

  const int leaving = basis_[row];
  state_[leaving] = leaves_at_lower ? VarState::at_lower : VarState::at_upper;
  nonbasic_value_[leaving] = target;
  for (std::size_t r = 0; r < m; ++r) xb_[r] -= dx * w[r];
  xb_[row] = new_entering_value;
  pivot(row, col_in, w);
  return true;
}

Result Solver::solve() {
  try {
    return solve_inner();
  } catch (const std::runtime_error&) {
    // a degenerate pivot slipped through and the basis went singular;
    // one cold restart from the slack basis settles it or we give up
    reset_basis();
    try {
      return solve_inner();
    } catch (const std::runtime_error&) {
      Result res;
      res.status = Status::numerical;
      return res;
    }
  }
}

Result Solver::solve_inner() {
  const std::size_t m = rhs_.size();
  Result res;
  if (m == 0) {
    // only box constraints: each variable goes to its favorable bound
    res.status = Status::optimal;
    res.x.assign(nvars_, 0.0);
    for (int j = 0; j < nvars_; ++j) {
      if (obj_[j] > 0.0) {
        if (!std::isfinite(upper_[j])) {
          res.status = Status::unbounded;
          return res;
        }
        res.x[j] = upper_[j];
      }
      res.objective += obj_[j] * res.x[j];
    }
    return res;
  }

  ensure_state();
  bool bland = false;
  long stall = 0;
  double last_obj = -kInf;
  std::vector<double> y;
  bool restarted = false;

  for (long iter = 0;; ++iter) {
    res.iterations = iter;
    if (iter >= opt_.max_iterations) {
      res.status = Status::iteration_limit;
      return res;
    }

    // restore primal feasibility first (warm starts after added rows)
    bool infeasible = false;
    for (std::size_t r = 0; r < m; ++r) {
      const double u = upper_of(basis_[r]);
      if (xb_[r] < -opt_.feas_tol ||
          (std::isfinite(u) && xb_[r] > u + opt_.feas_tol)) {
        infeasible = true;
        break;
      }
    }
    if (infeasible) {
      // keep y in sync for the dual ratio test
      y.assign(m, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        const double cb = obj_of(basis_[r]);
        if (cb != 0.0) kernels::active().axpy(cb, &binv_[r * m], y.data(), m);
      }
      bool progressed = true;
      if (!dual_step(y, bland, progressed)) continue;
      if (!progressed) {
        if (restarted) {
          res.status = Status::numerical;
          res.iterations = iter;
          return res;
        }
        reset_basis();
        ensure_state();
        restarted = true;
      }
      if (++stall > opt_.stall_limit) bland = true;
      continue;
    }

    int col_in;
    double dir;
    if (!price(col_in, dir, y, bland)) break;  // optimal

    std::vector<double> w(m);
    if (col_in < nvars_) {
      for (std::size_t r = 0; r < m; ++r)
        w[r] = kernels::active().dot(&binv_[r * m], column(col_in), m);
    } else {
      for (std::size_t r = 0; r < m; ++r)
        w[r] = binv_[r * m + (col_in - nvars_)];
    }

    int row_out;
    double step;
    bool flip;
    if (!ratio_test(col_in, dir, w, row_out, step, flip, bland)) {
      res.status = Status::unbounded;
      res.iterations = iter;
      return res;
    }

    const double d_e = obj_of(col_in) - col_dot(y.data(), col_in);
    const double gain = std::abs(d_e) * step;

    if (flip) {
      const double delta = dir * step;
      for (std::size_t r = 0; r < m; ++r) xb_[r] -= delta * w[r];
      nonbasic_value_[col_in] += delta;
      state_[col_in] = state_[col_in] == VarState::at_lower
                           ? VarState::at_upper
                           : VarState::at_lower;
    } else {
      const int leaving = basis_[row_out];
      const double dw = dir * w[row_out];
      if (dw > 0.0) {
        state_[leaving] = VarState::at_lower;
        nonbasic_value_[leaving] = 0.0;
      } else {
        state_[leaving] = VarState::at_upper;
        nonbasic_value_[leaving] = upper_of(leaving);
      }
      const double delta = dir * step;
      const double entering_value = nonbasic_value_[col_in] + delta;
      for (std::size_t r = 0; r < m; ++r) xb_[r] -= delta * w[r];
      xb_[row_out] = entering_value;
      pivot(row_out, col_in, w);
    }

    // stall detection feeds the Bland switch
    double cur = 0.0;
    for (std::size_t r = 0; r < m; ++r) cur += obj_of(basis_[r]) * xb_[r];
    for (int j = 0; j < nvars_; ++j)
      if (state_[j] != VarState::basic) cur += obj_[j] * nonbasic_value_[j];
    if (gain <= 1e-13 * (1.0 + std::abs(cur)) && cur <= last_obj + 1e-13) {
      if (++stall > opt_.stall_limit) bland = true;
    } else {
      stall = 0;
    }
    last_obj = cur;

  }

  // refresh the factorization for the certificate once enough product-form
  // updates have stacked up; below that the drift is far inside tolerance
  if (pivots_since_refactor_ > std::max(16, num_rows() / 16)) refactorize();
  res.bland_engaged = bland;
  res.x.assign(nvars_, 0.0);
  for (int j = 0; j < nvars_; ++j)
    if (state_[j] != VarState::basic) res.x[j] = nonbasic_value_[j];
  for (std::size_t r = 0; r < m; ++r)
    if (basis_[r] < nvars_) res.x[basis_[r]] = xb_[r];
  res.objective = 0.0;
  for (int j = 0; j < nvars_; ++j) res.objective += obj_[j] * res.x[j];

  y.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const double cb = obj_of(basis_[r]);
    if (cb != 0.0) kernels::active().axpy(cb, &binv_[r * m], y.data(), m);
  }
  res.row_duals.assign(m, 0.0);
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    res.row_duals[i] = std::max(0.0, y[i]);
    dual_obj += res.row_duals[i] * rhs_[i];
  }
  for (int j = 0; j < nvars_; ++j) {
    if (!std::isfinite(upper_[j])) continue;
    const double d = obj_[j] - col_dot(y.data(), j);
    if (d > 0.0) dual_obj += d * upper_[j];
  }
  res.duality_gap = std::abs(dual_obj - res.objective);
  res.status = Status::optimal;
  return res;
}

void Solver::reset_basis() {
  started_ = false;
  basis_.clear();
  state_.clear();
  nonbasic_value_.clear();
  binv_.clear();
  xb_.clear();
}

}  // namespace turan::lp

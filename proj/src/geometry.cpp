#include "turan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "turan/lp.hpp"

namespace turan::geometry {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// max e.x over {A x <= b} with x free (split into positive parts). Returns
// +inf if the polytope is unbounded in that direction.
double support_value(std::span<const HalfSpace> rows, int dim,
                     std::span<const double> e) {
  lp::Solver s;
  for (int j = 0; j < dim; ++j) s.add_variable(e[j], lp::kInf);   // x+
  for (int j = 0; j < dim; ++j) s.add_variable(-e[j], lp::kInf);  // x-
  for (const HalfSpace& hs : rows) {
    std::vector<double> coeffs(2 * dim);
    for (int j = 0; j < dim; ++j) {
      coeffs[j] = hs.normal[j];
      coeffs[dim + j] = -hs.normal[j];
    }
    s.add_row(std::move(coeffs), hs.offset);
  }
  lp::Result r = s.solve();
  if (r.status == lp::Status::unbounded)
    return std::numeric_limits<double>::infinity();
  if (r.status != lp::Status::optimal)
    throw std::runtime_error("support_value: bounding LP failed");
  return r.objective;
}

}  // namespace

ConvexBody ConvexBody::box(std::vector<double> halfwidths) {
  if (halfwidths.empty())
    throw std::invalid_argument("box: needs at least one halfwidth");
  for (double w : halfwidths)
    if (!(w > 0.0)) throw std::invalid_argument("box: halfwidths must be positive");
  ConvexBody b;
  b.kind_ = Kind::box;
  b.dim_ = static_cast<int>(halfwidths.size());
  b.halfwidths_ = std::move(halfwidths);
  return b;
}

ConvexBody ConvexBody::ball(int dim, double radius) {
  if (dim < 1) throw std::invalid_argument("ball: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  ConvexBody b;
  b.kind_ = Kind::ball;
  b.dim_ = dim;
  b.radius_ = radius;
  return b;
}

ConvexBody ConvexBody::hpolytope(int dim, std::vector<HalfSpace> rows) {
  if (dim < 1) throw std::invalid_argument("hpolytope: dimension must be >= 1");
  if (rows.empty()) throw std::invalid_argument("hpolytope: needs rows");
  ConvexBody b;
  b.kind_ = Kind::hpolytope;
  b.dim_ = dim;
  b.rows_.reserve(2 * rows.size());
  for (HalfSpace& hs : rows) {
    if (static_cast<int>(hs.normal.size()) != dim)
      throw std::invalid_argument("hpolytope: normal dimension mismatch");
    if (!(hs.offset > 0.0))
      throw std::invalid_argument("hpolytope: offsets must be positive (0 interior)");
    if (norm2(hs.normal) == 0.0)
      throw std::invalid_argument("hpolytope: zero normal");
    HalfSpace neg{hs.normal, hs.offset};
    for (double& x : neg.normal) x = -x;
    b.rows_.push_back(std::move(hs));
    b.rows_.push_back(std::move(neg));
  }
  // bounded iff every coordinate direction has a finite support value
  std::vector<double> e(dim, 0.0);
  for (int j = 0; j < dim; ++j) {
    e[j] = 1.0;
    if (!std::isfinite(support_value(b.rows_, dim, e)))
      throw std::invalid_argument("hpolytope: unbounded (normals do not positively span)");
    e[j] = 0.0;
  }
  return b;
}

bool ConvexBody::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("contains: dimension mismatch");
  if (point_only_) {
    for (double v : x)
      if (v != 0.0) return false;
    return true;
  }
  switch (kind_) {
    case Kind::box:
      for (int j = 0; j < dim_; ++j)
        if (std::abs(x[j]) > halfwidths_[j]) return false;
      return true;
    case Kind::ball:
      return norm2(x) <= radius_;
    case Kind::hpolytope:
      for (const HalfSpace& hs : rows_) {
        double dot = 0.0;
        for (int j = 0; j < dim_; ++j) dot += hs.normal[j] * x[j];
        if (dot > hs.offset) return false;
      }
      return true;
  }
  return false;
}

ConvexBody ConvexBody::scaled(double t) const {
  if (t < 0.0) throw std::invalid_argument("scale: factor must be >= 0");
  ConvexBody b = *this;
  if (t == 0.0) {
    b.point_only_ = true;
    return b;
  }
  for (double& w : b.halfwidths_) w *= t;
  b.radius_ *= t;
  for (HalfSpace& hs : b.rows_) hs.offset *= t;
  return b;
}

double ConvexBody::inradius() const {
  if (point_only_) return 0.0;
  switch (kind_) {
    case Kind::box:
      return *std::min_element(halfwidths_.begin(), halfwidths_.end());
    case Kind::ball:
      return radius_;
    case Kind::hpolytope: {
      double r = std::numeric_limits<double>::infinity();
      for (const HalfSpace& hs : rows_)
        r = std::min(r, hs.offset / norm2(hs.normal));
      return r;
    }
  }
  return 0.0;
}

std::vector<std::array<double, 2>> ConvexBody::vertices2d() const {
  if (kind_ != Kind::hpolytope || dim_ != 2)
    throw std::logic_error("vertices2d: only for 2D polytopes");
  std::vector<std::array<double, 2>> verts;
  const int m = static_cast<int>(rows_.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& a = rows_[i];
      const auto& b = rows_[j];
      double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
      double scale = std::max({std::abs(a.normal[0]), std::abs(a.normal[1]),
                               std::abs(b.normal[0]), std::abs(b.normal[1])});
      if (std::abs(det) <= 1e-12 * scale * scale) continue;
      double x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
      double y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
      bool feasible = true;
      for (const HalfSpace& hs : rows_) {
        if (hs.normal[0] * x + hs.normal[1] * y >
            hs.offset * (1.0 + 1e-9) + 1e-12) {
          feasible = false;
          break;
        }
      }
      if (feasible) verts.push_back({x, y});
    }
  }
  // dedupe and sort counter-clockwise
  std::vector<std::array<double, 2>> out;
  for (const auto& v : verts) {
    bool dup = false;
    for (const auto& w : out)
      if (std::hypot(v[0] - w[0], v[1] - w[1]) < 1e-9) dup = true;
    if (!dup) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
  });
  return out;
}

std::optional<double> ConvexBody::exact_volume() const {
  if (point_only_) return 0.0;
  switch (kind_) {
    case Kind::box: {
      double v = 1.0;
      for (double w : halfwidths_) v *= 2.0 * w;
      return v;
    }
    case Kind::ball:
      return unit_ball_volume(dim_) * std::pow(radius_, dim_);
    case Kind::hpolytope: {
      if (dim_ != 2) return std::nullopt;
      auto verts = vertices2d();
      double area = 0.0;  // shoelace
      const int n = static_cast<int>(verts.size());
      for (int i = 0; i < n; ++i) {
        const auto& p = verts[i];
        const auto& q = verts[(i + 1) % n];
        area += p[0] * q[1] - q[0] * p[1];
      }
      return 0.5 * std::abs(area);
    }
  }
  return std::nullopt;
}

double ConvexBody::grid_volume(const TorusGrid& grid) const {
  if (grid.dim() != dim_)
    throw std::invalid_argument("grid_volume: dimension mismatch");
  std::vector<double> x(dim_);
  std::size_t count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    if (contains(x)) ++count;
  }
  return static_cast<double>(count) * std::pow(grid.spacing(), dim_);
}

double ConvexBody::circumradius() const {
  if (point_only_) return 0.0;
  switch (kind_) {
    case Kind::box:
      return norm2(halfwidths_);
    case Kind::ball:
      return radius_;
    case Kind::hpolytope: {
      if (dim_ == 2) {
        double r = 0.0;
        for (const auto& v : vertices2d()) r = std::max(r, std::hypot(v[0], v[1]));
        return r;
      }
      // upper bound from the bounding box; enough for enumeration windows
      double s = 0.0;
      std::vector<double> e(dim_, 0.0);
      for (int j = 0; j < dim_; ++j) {
        e[j] = 1.0;
        double w = support_value(rows_, dim_, e);
        s += w * w;
        e[j] = 0.0;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

double ConvexBody::circumradius_inf() const {
  if (point_only_) return 0.0;
  switch (kind_) {
    case Kind::box:
      return *std::max_element(halfwidths_.begin(), halfwidths_.end());
    case Kind::ball:
      return radius_;
    case Kind::hpolytope: {
      if (dim_ == 2) {
        double r = 0.0;
        for (const auto& v : vertices2d())
          r = std::max({r, std::abs(v[0]), std::abs(v[1])});
        return r;
      }
      double r = 0.0;
      std::vector<double> e(dim_, 0.0);
      for (int j = 0; j < dim_; ++j) {
        e[j] = 1.0;
        r = std::max(r, support_value(rows_, dim_, e));
        e[j] = 0.0;
      }
      return r;  // symmetric body: max over +-e_j coincide
    }
  }
  return 0.0;
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::box: {
      os << "box halfwidths=[";
      for (std::size_t i = 0; i < halfwidths_.size(); ++i)
        os << (i ? "," : "") << halfwidths_[i];
      os << "]";
      break;
    }
    case Kind::ball:
      os << "ball dim=" << dim_ << " radius=" << radius_;
      break;
    case Kind::hpolytope:
      os << "hpolytope dim=" << dim_ << " rows=" << rows_.size();
      break;
  }
  if (point_only_) os << " (degenerate point)";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// LU decomposition with partial pivoting; returns |det| and leaves the
// factorization in a (row-major), permutation in perm.
double lu_factor(std::vector<double>& a, std::vector<int>& perm, int d) {
  perm.resize(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  double det = 1.0;
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a[i * d + k]) > std::abs(a[piv * d + k])) piv = i;
    if (piv != k) {
      for (int j = 0; j < d; ++j) std::swap(a[k * d + j], a[piv * d + j]);
      std::swap(perm[k], perm[piv]);
      det = -det;
    }
    double p = a[k * d + k];
    det *= p;
    if (p == 0.0) return 0.0;
    for (int i = k + 1; i < d; ++i) {
      double f = a[i * d + k] / p;
      a[i * d + k] = f;
      for (int j = k + 1; j < d; ++j) a[i * d + j] -= f * a[k * d + j];
    }
  }
  return std::abs(det);
}

void lu_solve(const std::vector<double>& a, const std::vector<int>& perm,
              int d, std::span<const double> rhs, std::span<double> out) {
  std::vector<double> y(d);
  for (int i = 0; i < d; ++i) y[i] = rhs[perm[i]];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) y[i] -= a[i * d + j] * y[j];
  for (int i = d - 1; i >= 0; --i) {
    for (int j = i + 1; j < d; ++j) y[i] -= a[i * d + j] * y[j];
    y[i] /= a[i * d + i];
  }
  for (int i = 0; i < d; ++i) out[i] = y[i];
}

}  // namespace

Lattice::Lattice(std::vector<double> generator_colmajor, int dim)
    : dim_(dim), gen_(std::move(generator_colmajor)) {
  if (dim < 1) throw std::invalid_argument("Lattice: dimension must be >= 1");
  if (gen_.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("Lattice: generator size mismatch");
  // row-major copy for the LU
  std::vector<double> a(dim_ * dim_);
  double scale = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) {
      a[r * dim_ + c] = entry(r, c);
      scale = std::max(scale, std::abs(entry(r, c)));
    }
  std::vector<int> perm;
  det_abs_ = lu_factor(a, perm, dim_);
  if (!(det_abs_ > 1e-12 * std::max(1.0, std::pow(scale, dim_))))
    throw std::invalid_argument("Lattice: generator is numerically singular");
}

Lattice Lattice::dual() const {
  // columns of the dual generator solve G^T y = e_j
  std::vector<double> at(dim_ * dim_);  // row-major G^T
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) at[r * dim_ + c] = entry(c, r);
  std::vector<int> perm;
  lu_factor(at, perm, dim_);
  std::vector<double> dual_gen(dim_ * dim_);
  std::vector<double> e(dim_, 0.0), col(dim_);
  for (int j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    lu_solve(at, perm, dim_, e, col);
    for (int r = 0; r < dim_; ++r) dual_gen[j * dim_ + r] = col[r];
    e[j] = 0.0;
  }
  return Lattice(std::move(dual_gen), dim_);
}

std::vector<double> Lattice::point(std::span<const int> coeffs) const {
  std::vector<double> x(dim_, 0.0);
  for (int c = 0; c < dim_; ++c)
    for (int r = 0; r < dim_; ++r) x[r] += entry(r, c) * coeffs[c];
  return x;
}

std::vector<double> Lattice::coordinates(std::span<const double> x) const {
  std::vector<double> a(dim_ * dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) a[r * dim_ + c] = entry(r, c);
  std::vector<int> perm;
  lu_factor(a, perm, dim_);
  std::vector<double> y(dim_);
  lu_solve(a, perm, dim_, x, y);
  return y;
}

double lattice_density(const Lattice& lat) { return lat.density(); }

double distance_lemma_residual(const ConvexBody& body, double alpha,
                               double beta, const TorusGrid& grid) {
  if (!(alpha >= 0.0) || alpha > beta)
    throw std::invalid_argument("distance_lemma_residual: need 0 <= alpha <= beta");
  if (grid.dim() != body.dim())
    throw std::invalid_argument("distance_lemma_residual: dimension mismatch");
  const double h = grid.spacing();
  const double ext = beta * body.circumradius_inf();
  if (ext >= 0.5 * grid.length())
    throw std::invalid_argument("distance_lemma_residual: beta*Omega exceeds the period cube");

  ConvexBody inner = body.scaled(alpha);
  ConvexBody outer = body.scaled(beta);
  const double exact = body.inradius() * (beta - alpha);

  const int d = grid.dim();
  std::vector<double> x(d);

  // nodes of alpha*Omega
  std::vector<std::vector<double>> ps;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    bool in_box = true;
    for (int j = 0; j < d; ++j)
      if (std::abs(x[j]) > alpha * body.circumradius_inf() + h) in_box = false;
    if (in_box && inner.contains(x)) ps.push_back(x);
  }
  if (ps.empty()) ps.push_back(std::vector<double>(d, 0.0));  // alpha = 0

  // shell of nodes just outside beta*Omega
  std::vector<std::vector<double>> qs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    bool in_box = true;
    for (int j = 0; j < d; ++j)
      if (std::abs(x[j]) > ext + 3.0 * h) in_box = false;
    if (in_box && !outer.contains(x)) qs.push_back(x);
  }
  if (qs.empty())
    throw std::runtime_error("distance_lemma_residual: empty outer shell");

  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
      best = std::min(best, s);
    }
  }
  return std::abs(std::sqrt(best) - exact);
}

}  // namespace turan::geometry

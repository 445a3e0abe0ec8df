#include "turan/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "turan/kernels.hpp"
#include "turan/report.hpp"

namespace turan::torus {

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_symmetric(double tol) const {
  const double scale = std::max(1.0, max_abs());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t j = grid.negate(i);
    if (std::abs(values[i] - values[j]) > tol * scale) return false;
  }
  return true;
}

void GridFunction::symmetrize() {
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t j = grid.negate(i);
    if (j > i) {
      double avg = 0.5 * (values[i] + values[j]);
      values[i] = avg;
      values[j] = avg;
    }
  }
}

GridFunction rasterize(const geometry::ConvexBody& body,
                       const TorusGrid& grid) {
  if (body.dim() != grid.dim())
    throw std::invalid_argument("rasterize: dimension mismatch");
  if (body.circumradius_inf() >= 0.5 * grid.length())
    throw std::invalid_argument(
        "rasterize: body does not fit in the open period cube");
  GridFunction f(grid, Domain::space);
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    if (body.contains(x)) f.values[i] = 1.0;
  }
  return f;
}

namespace {

// Dense N x N cosine/sine tables for one axis; entry (a, b) is the angle
// 2 pi sk(a) sk(b) / N with sk the signed index. The integer product is
// reduced mod N before the trig call to keep arguments small.
struct TrigTable {
  int n;
  std::vector<double> c, s;
  explicit TrigTable(int n_) : n(n_), c(std::size_t(n_) * n_), s(c.size()) {
    const double w = 2.0 * std::numbers::pi / n;
    for (int a = 0; a < n; ++a) {
      const std::int64_t sa = a - n / 2;
      for (int b = 0; b < n; ++b) {
        const std::int64_t sb = b - n / 2;
        std::int64_t m = (sa * sb) % n;
        if (m < 0) m += n;
        c[std::size_t(a) * n + b] = std::cos(w * m);
        s[std::size_t(a) * n + b] = std::sin(w * m);
      }
    }
  }
};

struct ComplexField {
  std::vector<double> re, im;
};

// One separable pass over every line of one axis. sign = -1 forward, +1
// inverse. No normalization (applied once by the caller).
void axis_pass(const TorusGrid& grid, int axis, const TrigTable& table,
               int sign, ComplexField& field) {
  const int n = grid.n();
  const std::size_t size = grid.size();
  std::size_t stride = 1;
  for (int a = grid.dim() - 1; a > axis; --a) stride *= n;
  const std::size_t outer = size / (stride * n);

  std::vector<double> re_line(n), im_line(n), re_out(n), im_out(n);
  const auto& ops = kernels::active();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < stride; ++i) {
      const std::size_t base = o * stride * n + i;
      for (int b = 0; b < n; ++b) {
        re_line[b] = field.re[base + b * stride];
        im_line[b] = field.im[base + b * stride];
      }
      for (int a = 0; a < n; ++a) {
        double acc[4];
        ops.trig_row(&table.c[std::size_t(a) * n], &table.s[std::size_t(a) * n],
                     re_line.data(), im_line.data(), n, acc);
        // acc = {c.re, c.im, s.re, s.im}
        re_out[a] = acc[0] - sign * acc[3];
        im_out[a] = acc[1] + sign * acc[2];
      }
      for (int a = 0; a < n; ++a) {
        field.re[base + a * stride] = re_out[a];
        field.im[base + a * stride] = im_out[a];
      }
    }
  }
}

ComplexField transform(const TorusGrid& grid, const std::vector<double>& re,
                       const std::vector<double>* im, int sign) {
  ComplexField field;
  field.re = re;
  field.im = im ? *im : std::vector<double>(grid.size(), 0.0);
  TrigTable table(grid.n());
  for (int axis = 0; axis < grid.dim(); ++axis)
    axis_pass(grid, axis, table, sign, field);
  const double weight = sign < 0 ? std::pow(grid.spacing(), grid.dim())
                                 : std::pow(1.0 / grid.length(), grid.dim());
  kernels::active().scal(weight, field.re.data(), field.re.size());
  kernels::active().scal(weight, field.im.data(), field.im.size());
  return field;
}

void require_symmetric(const GridFunction& f, const char* who) {
  if (!f.is_symmetric(1e-10))
    throw std::invalid_argument(std::string(who) +
                                ": input is not symmetric, transform would "
                                "not be real");
}

}  // namespace

GridFunction dft(const GridFunction& f) {
  if (f.domain != Domain::space)
    throw std::invalid_argument("dft: expected a space-domain function");
  require_symmetric(f, "dft");
  ComplexField out = transform(f.grid, f.values, nullptr, -1);
  GridFunction F(f.grid, Domain::frequency);
  F.values = std::move(out.re);
  return F;
}

GridFunction idft(const GridFunction& F) {
  if (F.domain != Domain::frequency)
    throw std::invalid_argument("idft: expected a frequency-domain function");
  require_symmetric(F, "idft");
  ComplexField out = transform(F.grid, F.values, nullptr, +1);
  GridFunction f(F.grid, Domain::space);
  f.values = std::move(out.re);
  return f;
}

GridFunction autocorrelate(const GridFunction& g, bool* wrap_warning) {
  if (g.domain != Domain::space)
    throw std::invalid_argument("autocorrelate: expected space domain");
  if (wrap_warning) {
    *wrap_warning = false;
    std::vector<double> x(g.grid.dim());
    const double quarter = 0.25 * g.grid.length();
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
      if (g.values[i] == 0.0) continue;
      g.grid.node(i, x);
      for (double v : x)
        if (std::abs(v) > quarter) *wrap_warning = true;
    }
  }
  ComplexField spec = transform(g.grid, g.values, nullptr, -1);
  std::vector<double> power(g.grid.size());
  kernels::active().sqmag(spec.re.data(), spec.im.data(), power.data(),
                          power.size());
  ComplexField back = transform(g.grid, power, nullptr, +1);
  GridFunction f(g.grid, Domain::space);
  f.values = std::move(back.re);
  f.symmetrize();  // remove roundoff asymmetry
  return f;
}

SpectrumMin min_spectrum(const GridFunction& f) {
  GridFunction F = dft(f);
  std::size_t arg = 0;
  double best = F.values[0];
  for (std::size_t i = 1; i < F.values.size(); ++i) {
    if (F.values[i] < best) {
      best = F.values[i];
      arg = i;
    }
  }
  SpectrumMin out;
  out.value = best;
  out.frequency.resize(f.grid.dim());
  f.grid.unflatten(arg, out.frequency);
  return out;
}

bool is_positive_definite(const GridFunction& f, double tol) {
  return min_spectrum(f).value >= -tol;
}

std::vector<std::vector<int>> lattice_grid_points(const geometry::Lattice& lat,
                                                  const TorusGrid& grid) {
  const int d = grid.dim();
  if (lat.dim() != d)
    throw std::invalid_argument("periodize: lattice dimension mismatch");
  const double h = grid.spacing();
  const int n = grid.n();

  // generator columns in grid units must be integer
  std::vector<std::vector<int>> gens(d, std::vector<int>(d));
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double v = lat.entry(r, c) / h;
      const double rounded = std::round(v);
      if (std::abs(v - rounded) > 1e-9 * std::max(1.0, std::abs(v)))
        throw std::invalid_argument(
            "periodize: lattice column " + std::to_string(c) +
            " is not commensurate with the grid spacing");
      gens[c][r] = static_cast<int>(rounded);
    }
  }
  // L e_j must be a lattice point, otherwise the translate sum is not
  // periodic on this torus
  for (int j = 0; j < d; ++j) {
    std::vector<double> lej(d, 0.0);
    lej[j] = grid.length();
    std::vector<double> coords = lat.coordinates(lej);
    for (double y : coords)
      if (std::abs(y - std::round(y)) > 1e-9 * std::max(1.0, std::abs(y)))
        throw std::invalid_argument(
            "periodize: L*e_" + std::to_string(j) +
            " is not a lattice point (lattice not torus-periodic)");
  }

  // closure of the generators inside (Z mod N)^d
  auto wrap_mod = [n](int v) {
    int w = v % n;
    if (w < 0) w += n;
    return w;
  };
  std::vector<char> seen(grid.size(), 0);
  std::vector<std::vector<int>> points;  // storage offsets per axis (0..n-1)
  std::vector<std::vector<int>> queue;
  std::vector<int> zero(d, 0);
  auto offset_of = [&](const std::vector<int>& p) {
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) idx = idx * n + p[a];
    return idx;
  };
  seen[offset_of(zero)] = 1;
  queue.push_back(zero);
  points.push_back(zero);
  while (!queue.empty()) {
    std::vector<int> cur = std::move(queue.back());
    queue.pop_back();
    for (int c = 0; c < d; ++c) {
      for (int sgn : {+1, -1}) {
        std::vector<int> nxt(d);
        for (int r = 0; r < d; ++r) nxt[r] = wrap_mod(cur[r] + sgn * gens[c][r]);
        std::size_t idx = offset_of(nxt);
        if (!seen[idx]) {
          seen[idx] = 1;
          points.push_back(nxt);
          queue.push_back(std::move(nxt));
        }
      }
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

GridFunction periodize(const GridFunction& f, const geometry::Lattice& lat) {
  if (f.domain != Domain::space)
    throw std::invalid_argument("periodize: expected space domain");
  const TorusGrid& grid = f.grid;
  const int d = grid.dim();
  const int n = grid.n();
  auto points = lattice_grid_points(lat, grid);

  std::vector<std::size_t> strides(d, 1);
  for (int a = d - 2; a >= 0; --a) strides[a] = strides[a + 1] * n;

  GridFunction out(grid, Domain::space);
  for (const auto& p : points) {
    // out(x) += f(x - lambda): walk every node once per lattice point
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::size_t src = 0;
      std::size_t rem = i;
      for (int a = d - 1; a >= 0; --a) {
        int sa = static_cast<int>(rem % n);
        rem /= n;
        int shifted = sa - p[a];
        if (shifted < 0) shifted += n;
        src += shifted * strides[a];
      }
      out.values[i] += f.values[src];
    }
  }
  return out;
}

void write_csv(const GridFunction& f, std::ostream& os) {
  const int d = f.grid.dim();
  for (int a = 0; a < d; ++a) os << "k" << a << ",";
  for (int a = 0; a < d; ++a) os << "x" << a << ",";
  os << "value\n";
  std::vector<int> k(d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    f.grid.unflatten(i, k);
    f.grid.node(i, x);
    for (int a = 0; a < d; ++a) os << k[a] << ",";
    for (int a = 0; a < d; ++a) os << report::format_double(x[a]) << ",";
    os << report::format_double(f.values[i]) << "\n";
  }
}

void write_binary(const GridFunction& f, std::ostream& os) {
  const std::uint32_t dim = static_cast<std::uint32_t>(f.grid.dim());
  const std::uint32_t n = static_cast<std::uint32_t>(f.grid.n());
  const double length = f.grid.length();
  os.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(&length), sizeof length);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

GridFunction read_binary(std::istream& is) {
  std::uint32_t dim = 0, n = 0;
  double length = 0.0;
  is.read(reinterpret_cast<char*>(&dim), sizeof dim);
  is.read(reinterpret_cast<char*>(&n), sizeof n);
  is.read(reinterpret_cast<char*>(&length), sizeof length);
  if (!is) throw std::runtime_error("read_binary: truncated header");
  TorusGrid grid(static_cast<int>(dim), static_cast<int>(n), length);
  GridFunction f(grid, Domain::space);
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!is) throw std::runtime_error("read_binary: truncated values");
  return f;
}

}  // namespace turan::torus

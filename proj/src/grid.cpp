#include "turan/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace turan {

TorusGrid::TorusGrid(int dim, int points_per_axis, double length)
    : dim_(dim), n_(points_per_axis), length_(length) {
  if (dim < 1) throw std::invalid_argument("TorusGrid: dimension must be >= 1");
  if (n_ < 4 || n_ % 2 != 0)
    throw std::invalid_argument("TorusGrid: N must be even and >= 4");
  if (!(length > 0.0))
    throw std::invalid_argument("TorusGrid: period length must be positive");
  size_ = 1;
  strides_.assign(dim_, 1);
  for (int a = dim_ - 1; a >= 0; --a) {
    strides_[a] = size_;
    size_ *= static_cast<std::size_t>(n_);
  }
  std::vector<int> zero(dim_, 0);
  origin_ = flatten(zero);
}

void TorusGrid::unflatten(std::size_t idx, std::span<int> k) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = signed_of(static_cast<int>(idx % n_));
    idx /= n_;
  }
}

std::size_t TorusGrid::flatten(std::span<const int> k) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a)
    idx += strides_[a] * static_cast<std::size_t>(storage_of(k[a]));
  return idx;
}

std::size_t TorusGrid::negate(std::size_t idx) const {
  std::size_t out = 0;
  for (int a = dim_ - 1; a >= 0; --a) {
    int s = static_cast<int>(idx % n_);
    idx /= n_;
    int k = signed_of(s);
    int nk = (k == -n_ / 2) ? k : -k;  // -N/2 is its own negative mod N
    out += strides_[a] * static_cast<std::size_t>(storage_of(nk));
  }
  return out;
}

void TorusGrid::node(std::size_t idx, std::span<double> x) const {
  const double h = spacing();
  for (int a = dim_ - 1; a >= 0; --a) {
    x[a] = h * signed_of(static_cast<int>(idx % n_));
    idx /= n_;
  }
}

void TorusGrid::frequency(std::size_t idx, std::span<double> xi) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    xi[a] = signed_of(static_cast<int>(idx % n_)) / length_;
    idx /= n_;
  }
}

double TorusGrid::wrap(double x) const {
  double y = std::fmod(x + 0.5 * length_, length_);
  if (y < 0) y += length_;
  return y - 0.5 * length_;
}

}  // namespace turan

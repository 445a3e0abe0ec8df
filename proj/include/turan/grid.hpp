#pragma once
// Periodic grid on the torus [-L/2, L/2)^d with N points per axis.
//
// Storage is lexicographic over the signed multi-index k in
// {-N/2, ..., N/2-1}^d (axis 0 slowest). Nodes sit at k*h with h = L/N and
// dual frequencies at k/L over the same index range. N must be even so
// that negation is a grid symmetry.

#include <cstddef>
#include <span>
#include <vector>

namespace turan {

class TorusGrid {
 public:
  TorusGrid(int dim, int points_per_axis, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  std::size_t size() const { return size_; }

  // signed index component for storage offset along one axis
  int signed_of(int storage) const { return storage - n_ / 2; }
  int storage_of(int signed_k) const { return signed_k + n_ / 2; }

  void unflatten(std::size_t idx, std::span<int> k) const;  // signed k
  std::size_t flatten(std::span<const int> k) const;
  std::size_t origin() const { return origin_; }

  // index of -k; the half-period component -N/2 is its own negative
  std::size_t negate(std::size_t idx) const;

  void node(std::size_t idx, std::span<double> x) const;       // k*h
  void frequency(std::size_t idx, std::span<double> xi) const;  // k/L

  // wrap an arbitrary real coordinate into [-L/2, L/2)
  double wrap(double x) const;

  bool operator==(const TorusGrid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
  }

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  std::size_t origin_;
  std::vector<std::size_t> strides_;
};

}  // namespace turan

#ifndef VLMULT_CUBES_HPP
#define VLMULT_CUBES_HPP

// Exhaustive family of grid-aligned cubes (intervals in 1D, squares in 2D)
// plus the prefix-sum and sliding-max machinery used to take sups over it.

#include "vlmult/grid.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <span>
#include <vector>

namespace vlm {

struct Cube {
  std::array<int, 2> start;  // first node along each axis
  int side;                  // side length in nodes

  bool contains(int i, int j = 0) const {
    return i >= start[0] && i < start[0] + side && (j >= start[1] && j < start[1] + side);
  }
};

class CubeFamily {
 public:
  explicit CubeFamily(const GridSpec& g) : grid_(g) {}

  const GridSpec& grid() const { return grid_; }
  int max_side() const { return grid_.samples(); }
  int positions(int side) const { return grid_.samples() - side + 1; }
  std::size_t positions_total(int side) const {
    std::size_t p = static_cast<std::size_t>(positions(side));
    return grid_.dim() == 1 ? p : p * p;
  }

  Cube cube(int side, std::size_t pos) const {
    if (grid_.dim() == 1) return Cube{{static_cast<int>(pos), 0}, side};
    const auto p = static_cast<std::size_t>(positions(side));
    return Cube{{static_cast<int>(pos / p), static_cast<int>(pos % p)}, side};
  }

  double measure(int side) const { return std::pow(side * grid_.spacing(), grid_.dim()); }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int s = 1; s <= max_side(); ++s) {
      for (std::size_t p = 0; p < positions_total(s); ++p) fn(cube(s, p));
    }
  }

 private:
  GridSpec grid_;
};

// O(1) sums over any grid-aligned cube.
class PrefixSums {
 public:
  PrefixSums(const GridSpec& g, std::span<const double> values)
      : dim_(g.dim()), n_(g.samples()) {
    if (dim_ == 1) {
      table_.assign(n_ + 1, 0.0);
      for (int i = 0; i < n_; ++i) table_[i + 1] = table_[i] + values[i];
    } else {
      const int w = n_ + 1;
      table_.assign(static_cast<std::size_t>(w) * w, 0.0);
      for (int a = 0; a < n_; ++a) {
        double row = 0.0;
        for (int b = 0; b < n_; ++b) {
          row += values[static_cast<std::size_t>(a) * n_ + b];
          table_[idx(a + 1, b + 1)] = table_[idx(a, b + 1)] + row;
        }
      }
    }
  }

  double sum(const Cube& q) const {
    const int a0 = q.start[0], a1 = q.start[0] + q.side;
    if (dim_ == 1) return table_[a1] - table_[a0];
    const int b0 = q.start[1], b1 = q.start[1] + q.side;
    return table_[idx(a1, b1)] - table_[idx(a0, b1)] - table_[idx(a1, b0)] + table_[idx(a0, b0)];
  }

  double mean(const Cube& q) const {
    return sum(q) / (dim_ == 1 ? q.side : static_cast<double>(q.side) * q.side);
  }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * (n_ + 1) + b; }

  int dim_;
  int n_;
  std::vector<double> table_;
};

namespace detail {

// out[i] = max over window positions [i - side + 1, i] clipped to [0, len_in).
inline void window_max_1d(std::span<const double> in, int side, std::span<double> out) {
  const int len_in = static_cast<int>(in.size());
  const int len_out = static_cast<int>(out.size());
  std::deque<int> dq;
  int next = 0;
  for (int i = 0; i < len_out; ++i) {
    while (next <= i && next < len_in) {
      while (!dq.empty() && in[dq.back()] <= in[next]) dq.pop_back();
      dq.push_back(next++);
    }
    while (!dq.empty() && dq.front() < i - side + 1) dq.pop_front();
    out[i] = dq.empty() ? -std::numeric_limits<double>::infinity() : in[dq.front()];
  }
}

}  // namespace detail

// For one side length, folds per-position cube values into a per-node max
// over the cubes of that side containing the node.
inline void fold_containing_max(const CubeFamily& fam, int side, std::span<const double> per_position,
                                std::span<double> node_max) {
  const int n = fam.grid().samples();
  const int p = fam.positions(side);
  if (fam.grid().dim() == 1) {
    std::vector<double> tmp(n);
    detail::window_max_1d(per_position, side, tmp);
    for (int i = 0; i < n; ++i) node_max[i] = std::max(node_max[i], tmp[i]);
    return;
  }
  // along the second axis, then the first
  std::vector<double> stage(static_cast<std::size_t>(p) * n);
  for (int a = 0; a < p; ++a) {
    detail::window_max_1d(per_position.subspan(static_cast<std::size_t>(a) * p, p), side,
                          std::span<double>(stage).subspan(static_cast<std::size_t>(a) * n, n));
  }
  std::vector<double> col_in(p), col_out(n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < p; ++a) col_in[a] = stage[static_cast<std::size_t>(a) * n + b];
    detail::window_max_1d(col_in, side, col_out);
    for (int a = 0; a < n; ++a) {
      auto& dst = node_max[static_cast<std::size_t>(a) * n + b];
      dst = std::max(dst, col_out[a]);
    }
  }
}

// Per-node sup over all cubes containing the node of value(cube).
template <class Fn>
std::vector<double> sup_over_containing_cubes(const CubeFamily& fam, Fn&& value) {
  std::vector<double> node_max(fam.grid().size(), -std::numeric_limits<double>::infinity());
  std::vector<double> per_pos;
  for (int s = 1; s <= fam.max_side(); ++s) {
    per_pos.resize(fam.positions_total(s));
    for (std::size_t q = 0; q < per_pos.size(); ++q) per_pos[q] = value(fam.cube(s, q));
    fold_containing_max(fam, s, per_pos, node_max);
  }
  return node_max;
}

// Sup of value(cube) over the whole family.
template <class Fn>
double sup_over_cubes(const CubeFamily& fam, Fn&& value) {
  double best = -std::numeric_limits<double>::infinity();
  fam.for_each([&](const Cube& q) { best = std::max(best, value(q)); });
  return best;
}

}  // namespace vlm

#endif  // VLMULT_CUBES_HPP

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "slidekit/sym_matrix.hpp"

namespace slidekit {

using Index = std::array<int, 3>;

/// Uniform grid on [-1,1]^n with N (odd, >= 9) nodes per axis. Node coordinate
/// along an axis is (2i - (N-1))/(N-1): the center node is exactly 0 and the
/// end nodes exactly -1 and 1. Flat indices are row-major, axis 0 slowest.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, int resolution);

  int dim() const { return dim_; }
  int resolution() const { return n_; }
  double spacing() const { return h_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return stride_[axis]; }
  /// h^n, the measure carried by one node.
  double cell_volume() const { return cell_; }
  int center_index() const { return (n_ - 1) / 2; }

  double coordinate(int i) const { return static_cast<double>(2 * i - (n_ - 1)) / (n_ - 1); }
  std::size_t flat(const Index& m) const;
  Index multi(std::size_t idx) const;
  Point point(std::size_t idx) const;
  /// Nearest node to x, clamped into the grid; ties round toward -inf.
  Index nearest(const Point& x) const;
  /// Distance in nodes from the grid boundary, minimised over active axes.
  int boundary_margin(std::size_t idx) const;

  bool operator==(const Grid& o) const { return dim_ == o.dim_ && n_ == o.n_; }

 private:
  int dim_ = 0;
  int n_ = 0;
  double h_ = 0;
  double cell_ = 0;
  std::size_t size_ = 0;
  std::array<std::size_t, 3> stride_{};
};

void require_same_grid(const Grid& a, const Grid& b);

/// Boolean node set over a grid.
class Mask {
 public:
  Mask() = default;
  explicit Mask(const Grid& g, bool value = false);

  static Mask ball(const Grid& g, const Point& center, double radius);
  /// Default domain: the closed unit ball.
  static Mask unit_ball(const Grid& g) { return ball(g, Point{}, 1.0); }

  const Grid& grid() const { return grid_; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  std::size_t count() const;
  double measure() const { return static_cast<double>(count()) * grid_.cell_volume(); }
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> indices() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  Mask operator|(const Mask& o) const;
  Mask operator&(const Mask& o) const;
  /// Set difference this \ o.
  Mask operator-(const Mask& o) const;
  /// Complement within the grid.
  Mask operator~() const;
  bool subset_of(const Mask& o) const;
  bool operator==(const Mask& o) const { return grid_ == o.grid_ && bits_ == o.bits_; }

 private:
  Grid grid_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace slidekit

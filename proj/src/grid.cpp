#include "slidekit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slidekit/error.hpp"

namespace slidekit {

Grid::Grid(int dim, int resolution) : dim_(dim), n_(resolution) {
  require(dim >= 1 && dim <= 3, ErrorKind::precondition, "grid dimension must be 1, 2 or 3");
  require(resolution >= 9 && resolution % 2 == 1, ErrorKind::precondition,
          "grid resolution must be odd and >= 9");
  h_ = 2.0 / (n_ - 1);
  cell_ = std::pow(h_, dim_);
  size_ = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    stride_[a] = size_;
    size_ *= static_cast<std::size_t>(n_);
  }
}

std::size_t Grid::flat(const Index& m) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx += static_cast<std::size_t>(m[a]) * stride_[a];
  return idx;
}

Index Grid::multi(std::size_t idx) const {
  Index m{};
  for (int a = 0; a < dim_; ++a) {
    m[a] = static_cast<int>(idx / stride_[a]);
    idx %= stride_[a];
  }
  return m;
}

Point Grid::point(std::size_t idx) const {
  const Index m = multi(idx);
  Point x{};
  for (int a = 0; a < dim_; ++a) x[a] = coordinate(m[a]);
  return x;
}

Index Grid::nearest(const Point& x) const {
  Index m{};
  for (int a = 0; a < dim_; ++a) {
    const double s = (x[a] + 1.0) / h_;
    int i = static_cast<int>(std::ceil(s - 0.5));
    m[a] = std::clamp(i, 0, n_ - 1);
  }
  return m;
}

int Grid::boundary_margin(std::size_t idx) const {
  const Index m = multi(idx);
  int margin = n_;
  for (int a = 0; a < dim_; ++a) margin = std::min({margin, m[a], n_ - 1 - m[a]});
  return margin;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b))
    fail(ErrorKind::grid_mismatch, "grids differ (" + std::to_string(a.dim()) + "d/" +
                                       std::to_string(a.resolution()) + " vs " +
                                       std::to_string(b.dim()) + "d/" + std::to_string(b.resolution()) + ")");
}

Mask::Mask(const Grid& g, bool value) : grid_(g), bits_(g.size(), value ? 1 : 0) {}

Mask Mask::ball(const Grid& g, const Point& center, double radius) {
  Mask m(g);
  const double r2 = radius * radius + 1e-12;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (dist2(g.point(i), center) <= r2) m.bits_[i] = 1;
  return m;
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Mask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

Mask Mask::operator|(const Mask& o) const {
  require_same_grid(grid_, o.grid_);
  Mask r(grid_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
  return r;
}

Mask Mask::operator&(const Mask& o) const {
  require_same_grid(grid_, o.grid_);
  Mask r(grid_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
  return r;
}

Mask Mask::operator-(const Mask& o) const {
  require_same_grid(grid_, o.grid_);
  Mask r(grid_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & !o.bits_[i];
  return r;
}

Mask Mask::operator~() const {
  Mask r(grid_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = !bits_[i];
  return r;
}

bool Mask::subset_of(const Mask& o) const {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_[i]) return false;
  return true;
}

}  // namespace slidekit

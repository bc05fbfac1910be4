#include "slidekit/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slidekit/error.hpp"

namespace slidekit {

GridFunction::GridFunction(const Grid& g, double value)
    : grid_(g), values_(g.size(), value), domain_(Mask::unit_ball(g)) {}

GridFunction::GridFunction(const Grid& g, std::vector<double> values)
    : GridFunction(g, std::move(values), Mask::unit_ball(g)) {}

GridFunction::GridFunction(const Grid& g, std::vector<double> values, Mask domain)
    : grid_(g), values_(std::move(values)), domain_(std::move(domain)) {
  require(values_.size() == g.size(), ErrorKind::precondition, "value count does not match grid");
  require_same_grid(g, domain_.grid());
}

void GridFunction::set_domain(Mask m) {
  require_same_grid(grid_, m.grid());
  domain_ = std::move(m);
}

namespace {

void check_margin(const Grid& g, std::size_t i) {
  if (g.boundary_margin(i) < kStencilMargin)
    fail(ErrorKind::stencil_out_of_range,
         "node " + std::to_string(i) + " is closer than " + std::to_string(kStencilMargin) +
             " nodes to the grid boundary");
}

}  // namespace

SymMatrix hessian_at(const GridFunction& u, std::size_t i) {
  const Grid& g = u.grid();
  check_margin(g, i);
  const int n = g.dim();
  const double h = g.spacing();
  const double ih2 = 1.0 / (h * h);
  const auto& v = u.values();
  SymMatrix H(n);
  for (int a = 0; a < n; ++a) {
    const std::size_t sa = g.stride(a);
    H.set(a, a, (v[i + sa] - 2.0 * v[i] + v[i - sa]) * ih2);
    for (int b = a + 1; b < n; ++b) {
      const std::size_t sb = g.stride(b);
      H.set(a, b, (v[i + sa + sb] - v[i + sa - sb] - v[i - sa + sb] + v[i - sa - sb]) * (0.25 * ih2));
    }
  }
  return H;
}

Point gradient_at(const GridFunction& u, std::size_t i) {
  const Grid& g = u.grid();
  check_margin(g, i);
  const double inv = 0.5 / g.spacing();
  const auto& v = u.values();
  Point p{};
  for (int a = 0; a < g.dim(); ++a) p[a] = (v[i + g.stride(a)] - v[i - g.stride(a)]) * inv;
  return p;
}

double min_over(const GridFunction& u, const Mask& m) {
  require_same_grid(u.grid(), m.grid());
  double lo = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (m[i]) { lo = std::min(lo, u[i]); any = true; }
  require(any, ErrorKind::empty_region, "minimum over an empty mask");
  return lo;
}

double max_over(const GridFunction& u, const Mask& m) {
  require_same_grid(u.grid(), m.grid());
  double hi = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (m[i]) { hi = std::max(hi, u[i]); any = true; }
  require(any, ErrorKind::empty_region, "maximum over an empty mask");
  return hi;
}

double oscillation(const GridFunction& u, const Mask& m) { return max_over(u, m) - min_over(u, m); }

double distribution_measure(const GridFunction& u, const Mask& m, double t) {
  require_same_grid(u.grid(), m.grid());
  std::size_t c = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (m[i] && u[i] > t) ++c;
  return static_cast<double>(c) * u.grid().cell_volume();
}

double sup_norm(const GridFunction& u) {
  double s = 0;
  const Mask& d = u.domain();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (d[i]) s = std::max(s, std::abs(u[i]));
  return s;
}

}  // namespace slidekit

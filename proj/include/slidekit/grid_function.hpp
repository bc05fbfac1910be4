#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "slidekit/grid.hpp"
#include "slidekit/sym_matrix.hpp"

namespace slidekit {

/// Derivative stencils need this many nodes between the evaluation node and
/// the grid edge along every axis.
inline constexpr int kStencilMargin = 2;

/// Real values on every node of a grid plus a domain mask (default: the
/// closed unit ball). Values must be finite on the domain; outside it they
/// are carried along but ignored by domain-restricted operations.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const Grid& g, double value = 0.0);
  GridFunction(const Grid& g, std::vector<double> values);
  GridFunction(const Grid& g, std::vector<double> values, Mask domain);

  template <class Fn>
  static GridFunction sample(const Grid& g, Fn&& fn) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.point(i));
    return GridFunction(g, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  const Mask& domain() const { return domain_; }
  void set_domain(Mask m);
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  Mask domain_;
};

/// Central second differences; the mixed entries use the four-point cross.
/// Throws stencil_out_of_range within kStencilMargin nodes of the grid edge.
SymMatrix hessian_at(const GridFunction& u, std::size_t i);
/// Central first differences, same margin rule as hessian_at.
Point gradient_at(const GridFunction& u, std::size_t i);

double oscillation(const GridFunction& u, const Mask& m);
/// h^n * #{i in m : u(i) > t}.
double distribution_measure(const GridFunction& u, const Mask& m, double t);
/// Sup of |u| over the domain mask.
double sup_norm(const GridFunction& u);
double min_over(const GridFunction& u, const Mask& m);
double max_over(const GridFunction& u, const Mask& m);

}  // namespace slidekit

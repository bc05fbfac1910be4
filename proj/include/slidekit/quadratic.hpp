#pragma once

#include "slidekit/sym_matrix.hpp"

namespace slidekit {

/// P(x) = a0 + b.x + x^T C x. Note the Hessian is 2C.
class Quadratic {
 public:
  Quadratic() = default;
  explicit Quadratic(int dim) : C_(dim) {}
  Quadratic(double a0, const Point& b, const SymMatrix& C) : a0_(a0), b_(b), C_(C) {}

  static Quadratic zero(int dim) { return Quadratic(dim); }
  /// v + g.(x - x0) + 0.5 (x - x0)^T H (x - x0), expanded about the origin.
  static Quadratic taylor(const Point& x0, double v, const Point& g, const SymMatrix& H);

  int dim() const { return C_.dim(); }
  double a0() const { return a0_; }
  const Point& b() const { return b_; }
  const SymMatrix& C() const { return C_; }

  double operator()(const Point& x) const { return a0_ + dot(b_, x) + C_.quad(x); }
  Point gradient(const Point& x) const { return b_ + 2.0 * C_.apply(x); }
  SymMatrix hessian() const { return 2.0 * C_; }

  /// |a0| + r|b| + r^2 ||C|| with the spectral norm.
  double norm(double r) const;
  /// x -> P(s x).
  Quadratic scaled(double s) const;
  /// x -> P(x0 + x).
  Quadratic recentered(const Point& x0) const;

  Quadratic& operator+=(const Quadratic& o);
  Quadratic& operator-=(const Quadratic& o);
  friend Quadratic operator+(Quadratic a, const Quadratic& b) { return a += b; }
  friend Quadratic operator-(Quadratic a, const Quadratic& b) { return a -= b; }
  friend Quadratic operator*(double s, const Quadratic& q) { return Quadratic(s * q.a0_, s * q.b_, s * q.C_); }

 private:
  double a0_ = 0;
  Point b_{};
  SymMatrix C_;
};

/// -(a/2)|x - y|^2 + c: concave, Hessian -aI.
struct Paraboloid {
  double opening = 1;
  Point center{};
  double constant = 0;

  double operator()(const Point& x) const { return -0.5 * opening * dist2(x, center) + constant; }
  Quadratic to_quadratic(int dim) const;
};

}  // namespace slidekit

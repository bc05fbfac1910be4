#include "slidekit/quadratic.hpp"

#include <cmath>

namespace slidekit {

Quadratic Quadratic::taylor(const Point& x0, double v, const Point& g, const SymMatrix& H) {
  const Point Hx0 = H.apply(x0);
  return Quadratic(v - dot(g, x0) + 0.5 * dot(x0, Hx0), g - Hx0, 0.5 * H);
}

double Quadratic::norm(double r) const { return std::abs(a0_) + r * slidekit::norm(b_) + r * r * spectral_norm(C_); }

Quadratic Quadratic::scaled(double s) const { return Quadratic(a0_, s * b_, (s * s) * C_); }

Quadratic Quadratic::recentered(const Point& x0) const {
  return Quadratic((*this)(x0), gradient(x0), C_);
}

Quadratic& Quadratic::operator+=(const Quadratic& o) {
  a0_ += o.a0_;
  b_ = b_ + o.b_;
  C_ += o.C_;
  return *this;
}

Quadratic& Quadratic::operator-=(const Quadratic& o) {
  a0_ -= o.a0_;
  b_ = b_ - o.b_;
  C_ -= o.C_;
  return *this;
}

Quadratic Paraboloid::to_quadratic(int dim) const {
  return Quadratic(constant - 0.5 * opening * dot(center, center), opening * center,
                   SymMatrix::identity(dim, -0.5 * opening));
}

}  // namespace slidekit

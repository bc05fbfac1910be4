#include "slidekit/constants.hpp"

#include <algorithm>
#include <cmath>

#include "slidekit/error.hpp"

namespace slidekit {

void EllipticityParams::validate() const {
  require(lambda > 0 && Lambda >= lambda, ErrorKind::precondition, "need 0 < lambda <= Lambda");
  require(b0 >= 0 && c0 >= 0, ErrorKind::precondition, "need b0, c0 >= 0");
  require(rho > 0, ErrorKind::precondition, "need rho > 0");
}

double gamma_constant(int n, const EllipticityParams& p) {
  return ((n - 1) * p.Lambda + 2.0 * p.b0 + 1.0) / p.lambda + 1.0;
}

DerivedConstants derive_constants(int n, const EllipticityParams& prm, double sigma) {
  require(n >= 1 && n <= 3, ErrorKind::precondition, "dimension must be 1, 2 or 3");
  prm.validate();
  DerivedConstants d;
  d.n = n;
  d.Gamma = gamma_constant(n, prm);
  d.rho0 = 8.0 * d.Gamma;
  d.p = static_cast<int>(std::ceil((2.0 * (n - 1) * prm.Lambda + 4.0 * prm.b0 + 1.0) / prm.lambda));
  d.p = std::max(d.p, 1);
  require(d.p <= 40, ErrorKind::precondition, "barrier exponent too large (lambda too small relative to Lambda, b0)");
  d.C0 = (std::ldexp(1.0, d.p) - 1.0) / d.p;

  // 2*C0/(M-1) <= 3/64  <=>  M - 1 >= 128*C0/3
  long m_ratio = static_cast<long>(std::ceil(1.0 + 128.0 * d.C0 / 3.0));
  while (2.0 * d.C0 / (m_ratio - 1) + 1.0 / 64 > 1.0 / 16) ++m_ratio;
  while (m_ratio > 2 && 2.0 * d.C0 / (m_ratio - 2) + 1.0 / 64 <= 1.0 / 16) --m_ratio;
  const long m_size = 1 + static_cast<long>(d.p + 1) * (1L << (d.p + 2));
  d.M = std::max(m_ratio, m_size);

  const double shrink = static_cast<double>(d.M - 1) / (8.0 * d.M);
  d.mu = std::pow(shrink, n) * std::pow(1.0 + d.Gamma, -n);
  d.theta = std::pow(5.0, -n) * d.mu;
  d.eps = -std::log1p(-d.theta) / std::log(static_cast<double>(d.M));
  d.eps0 = d.eps / 2.0;
  d.sigma = std::min(1.0, sigma);
  return d;
}

}  // namespace slidekit

#pragma once

#include "slidekit/params.hpp"

namespace slidekit {

/// The explicit constant cascade used by the measure-decay estimates.
struct DerivedConstants {
  int n = 0;
  double Gamma = 0;
  double rho0 = 0;
  int p = 0;
  double C0 = 0;
  long M = 0;
  double mu = 0;
  double theta = 0;
  double eps = 0;
  double eps0 = 0;
  /// Hoelder smallness; not computable from the estimates, so it is a
  /// declared default and always reported as empirical.
  double sigma = 0.5;
  bool sigma_empirical = true;
};

double gamma_constant(int n, const EllipticityParams& p);

/// M is the least integer with 2*C0/(M-1) + 1/64 <= 1/16 and
/// M >= 1 + (p+1)*2^(p+2).
DerivedConstants derive_constants(int n, const EllipticityParams& p, double sigma = 0.5);

}  // namespace slidekit

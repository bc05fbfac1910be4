#pragma once

namespace slidekit {

/// Structural constants: ellipticity bounds lambda <= Lambda, first- and
/// zeroth-order Lipschitz constants b0, c0, and the size rho on which the
/// ellipticity is assumed.
struct EllipticityParams {
  double lambda = 1.0;
  double Lambda = 1.0;
  double b0 = 0.0;
  double c0 = 0.0;
  double rho = 1.0;

  /// Throws precondition unless 0 < lambda <= Lambda, b0, c0 >= 0, rho > 0.
  void validate() const;
};

}  // namespace slidekit

#pragma once

#include <optional>
#include <vector>

#include "slidekit/constants.hpp"
#include "slidekit/grid_function.hpp"
#include "slidekit/params.hpp"
#include "slidekit/report.hpp"

namespace slidekit {

/// Checks the enlargement barrier psi = P_{a,y1} + a r^2 phi(|x - x0|/r),
/// phi(t) = (t^-p - 1)/p, on the annulus 1/2 < t <= 1 with exact derivatives:
/// M-(D2 psi) - b0|D psi| >= a and ||D2 psi||, |D psi| <= M a. Without y1 the
/// center in the closed unit ball maximising |D psi| is used at every sample.
CheckReport barrier_check(const Point& x0, double r, double a, const DerivedConstants& dc,
                          const EllipticityParams& p, int samples, std::optional<Point> y1 = std::nullopt);

/// |T_a(V)| >= (1 + Gamma)^-n |V| (1 - tol_factor h). `f` is taken as the
/// declared right-hand side; class membership of u is not certified here.
CheckReport verify_measure_lemma(const GridFunction& u, double a, const Mask& V, const DerivedConstants& dc,
                                 const EllipticityParams& p, const GridFunction& f, double tol_factor = 10.0);

/// Densities of T_8 and {u <= 2} in B_1 against 4^-n (1 + Gamma)^-n.
CheckReport verify_density(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& p,
                           const GridFunction& f, double tol_factor = 10.0);

struct Ball {
  Point center{};
  double radius = 0;
};

/// Centers on the 2^-j lattice, radius 2^-j, contained in B_1, for
/// j = 0 .. floor(log2(1/(4h))).
std::vector<Ball> dyadic_ball_family(const Grid& g);

/// Gate: |B n F| > mu |B| for every family ball meeting E. If the gate
/// holds, asserts |B_1 \ F| <= (1 - mu 5^-n) |B_1 \ E|; otherwise vacuous.
/// Throws precondition if E is empty or E, F are not nested in B_1.
CheckReport covering_step(const Mask& E, const Mask& F, double mu, const std::vector<Ball>& family);

/// |B_1 \ T_{8 M^k}| for k = 1..kmax against (1 - theta)^k |B_1|. kmax beyond
/// floor(ln(rho/rho0)/ln M) is truncated with a note.
CheckReport decay_iteration(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& p,
                            const GridFunction& f, int kmax);

/// Distribution curve |{u > t} n B_1| at `t_values` (default 17 M^j up to
/// 17 rho/rho0) and the least-squares decay exponent (+inf if fewer than
/// two positive measures).
CheckReport weak_Leps(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& p,
                      std::vector<double> t_values = {});

/// u where u <= threshold, 0 elsewhere.
GridFunction truncate_above(const GridFunction& u, double threshold);

/// ||u_rho||_{L^eps0(B_1/4)} against inf_{B_1/4} u + ||f||_inf, evaluated in
/// log space (the quasi-norm underflows for small eps0). The ratio is logged.
CheckReport weak_harnack(const GridFunction& u, const GridFunction& f, const DerivedConstants& dc,
                         const EllipticityParams& p);

/// osc over B_{4^-k}(0) down to max(sqrt(2 rho0/rho), 8h), with the fitted
/// exponent (+inf when every oscillation is zero).
CheckReport holder_decay(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& p,
                         const GridFunction& f);

/// Least-squares slope of log(y) against log(x) over pairs with y > 0.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slidekit

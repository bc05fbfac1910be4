#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slidekit/elliptic.hpp"
#include "slidekit/envelope.hpp"
#include "slidekit/grid_function.hpp"
#include "slidekit/quadratic.hpp"
#include "slidekit/report.hpp"

namespace slidekit {

struct FlatnessConfig {
  double alpha = 0.5;
  double eta = 0.5;
  double r0 = 0.25;
  /// Smallness used as the eps of the twice-differentiability gate.
  double delta = 8e-4;
  int kmax = 32;
  double fit_tol = 1e-10;
  /// Cauchy-bound constant; <= 0 means calibrate (10x the largest ratio seen
  /// on a smooth unit-amplitude family).
  double cauchy_C = 0.0;
  /// Largest radius tried by the twice-differentiability gate; <= 0 means r0.
  double gate_radius = 0.0;

  void validate() const;
};

struct QuadraticSeed {
  double t = 0;
  Quadratic P0;
};

/// Solves F(tI,0,0,0) = f0 by bisection on [-B, B], B = |f0|/(n lambda) +
/// tol, to residual 1e-10; P0 = (t/2)|x|^2. Throws bracket_failure if F does
/// not change sign on the bracket.
QuadraticSeed initial_quadratic(const OperatorSpec& F, double f0, int n, double lambda);

/// Finds a with F(D2P + scale a I, DP(0), P(0), x) = f0 (0 if the equation
/// already holds to 1e-10). The starting bracket is |residual|/(n lambda
/// scale) when lambda_hint > 0, doubled until the sign changes.
double compat_adjust(const OperatorSpec& F, const Quadratic& P, double f0, double scale, const Point& x = {},
                     double lambda_hint = 0.0);

/// v(x) = (u - P)(x0 + r x) / r^(2+alpha) at the nodes of the unit ball, with
/// u - P interpolated multilinearly from the nodes. Throws precondition if
/// r < 8h or x0 + r B_1 leaves the unit ball.
GridFunction rescale_v(const GridFunction& u, const Quadratic& P, double r, double alpha, const Point& x0 = {});

struct QuadraticFit {
  Quadratic P;
  /// max |u - P| over the fitted nodes.
  double residual = 0;
  std::size_t nodes = 0;
};

/// Least-squares quadratic over the domain nodes in B_r(center), in global
/// coordinates. Throws precondition with fewer than 3^n nodes.
QuadraticFit fit_quadratic(const GridFunction& u, const Point& center, double r);

struct PointClassification {
  enum class Verdict { regular, undetermined };
  std::size_t index = 0;
  Verdict verdict = Verdict::undetermined;
  /// Deepest k whose residual and Cauchy tests both passed (-1 if none).
  int deepest_k = -1;
  std::vector<double> residual_ratios;
  std::vector<double> cauchy_ratios;
  std::vector<double> scales;
  /// Global limit quadratic (the last P_k).
  Quadratic limit;
  bool twice_differentiable = false;
  double r_witness = 0;
  std::string note;
};

/// Improvement-of-flatness iteration at node x0 with the operator recentred
/// on the discrete Taylor quadratic Q at x0. Verdict regular iff the
/// twice-differentiability gate passes and every residual ratio
/// |u - P_k|/s_k^(2+alpha) and Cauchy ratio |P_k - P_{k-1}|_{s_k}/(C s_k^(2+alpha))
/// is <= 1 for s_k = eta^k r0 >= 8h.
PointClassification caffarelli_iterate(const GridFunction& u, const GridFunction& f, const OperatorSpec& F,
                                       std::size_t x0, const FlatnessConfig& cfg);

struct SingularSet {
  Mask mask;
  double measure = 0;
  std::size_t examined = 0;
  int stride = 1;
  double cauchy_C = 0;
  std::vector<PointClassification> points;
};

/// Nodes x0 with |x0| + r0 <= 1 whose multi-index is congruent to the center
/// modulo `stride`. The measure counts each undetermined node as (stride h)^n.
SingularSet classify_singular_set(const GridFunction& u, const GridFunction& f, const OperatorSpec& F,
                                  const FlatnessConfig& cfg, int stride = 1, Exec exec = Exec::parallel,
                                  bool keep_points = false);

/// 10x the largest Cauchy ratio (with C = 1) observed on a fixed smooth
/// unit-amplitude family on grid g.
double calibrate_cauchy_constant(const OperatorSpec& F, const Grid& g, const FlatnessConfig& cfg);

struct TwiceDiffResult {
  bool pass = false;
  double r_witness = 0;
  /// (r, sup_{B_{r/2}} |h| / (2 r^2)) from the largest radius down.
  std::vector<std::pair<double, double>> levels;
};

/// h(y) = u(y) - u(x) - grad.(y - x) - (y - x)^T hess (y - x)/2 against
/// 2 eps r^2 on B_{r/2}(x) for dyadic r <= min(1 - |x|, r_max) down to the
/// smallest dyadic r >= 8h.
TwiceDiffResult twice_diff_test(const GridFunction& u, std::size_t x, const Point& grad, const SymMatrix& hess,
                                double eps, double r_max = 1.0);

struct Seminorms {
  double zero_norm = 0;
  double lip_seminorm = 0;
};

/// sup d_x^n |u(x)| and sup d_{x,y}^{n+1} |u(x) - u(y)|/|x - y| over nodes of
/// B_R with |x - y| >= h, d_x = R - |x|.
Seminorms weighted_seminorms(const GridFunction& u, double R, int n, Exec exec = Exec::parallel);

/// Both sides of |u|_0 <= eps [u]_{0,1} + C eps^-n int|u| with the given C;
/// extras carry the smallest C that makes it hold.
CheckReport interpolation_check(const GridFunction& u, double R, double eps_interp, double C_n = 1.0);

}  // namespace slidekit

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slidekit/grid_function.hpp"
#include "slidekit/params.hpp"
#include "slidekit/sym_matrix.hpp"

namespace slidekit {

enum class PucciSide { minus, plus };

/// M-(M) = lambda * sum(e > 0) + Lambda * sum(e < 0); M+ swaps the weights.
double pucci(const SymMatrix& m, PucciSide side, double lambda, double Lambda);
inline double pucci(const SymMatrix& m, PucciSide side, const EllipticityParams& p) {
  return pucci(m, side, p.lambda, p.Lambda);
}

/// k-th elementary symmetric polynomial of the eigenvalues, computed as the
/// sum of k x k principal minors.
double sigma_k(const SymMatrix& m, int k);
/// True iff sigma_i(M) > 0 for every i <= k.
bool gamma_k_test(const SymMatrix& m, int k);

/// A user operator F(M, p, z, x).
struct OperatorSpec {
  using Eval = std::function<double(const SymMatrix&, const Point&, double, const Point&)>;
  std::string name;
  /// True when F depends on M alone.
  bool matrix_only = true;
  /// True when F(0,0,0,x) = 0 is claimed for every x.
  bool vanishes_at_zero = true;
  Eval eval;
  /// Optional modulus of continuity of D_M F.
  std::function<double(double)> modulus;
  /// Declared ellipticity on the operator's natural range; bisection
  /// brackets and seeds are built from these. lambda == 0 marks a degenerate
  /// operator.
  double lambda = 0.0;
  double Lambda = 0.0;
  int dim = 0;

  double operator()(const SymMatrix& m, const Point& p, double z, const Point& x) const { return eval(m, p, z, x); }
  double operator()(const SymMatrix& m) const { return eval(m, Point{}, 0.0, Point{}); }
};

/// Registry: "trace", "pucci-minus", "pucci-plus", "sigma-k:K",
/// "shifted-sigma-k:K:T" (G(M) = sigma_k(M + T I) - sigma_k(T I)).
/// Pucci entries take lambda, Lambda from `p`; shifted sigma-k declares the
/// ellipticity it has for ||M|| <= p.rho.
OperatorSpec make_operator(const std::string& name, int n, const EllipticityParams& p = {});
std::vector<std::string> registry_examples(int n);

struct EllipticityReport {
  int samples = 0;
  /// Largest amount by which lambda*||N|| exceeded the increment.
  double worst_lower = 0;
  /// Largest amount by which the increment exceeded Lambda*||N||.
  double worst_upper = 0;
  double tolerance = 1e-9;
  /// Largest |F(0,0,0,x)| seen, when the operator claims to vanish at zero.
  double zero_violation = 0;
  bool passed() const { return worst_lower <= tolerance && worst_upper <= tolerance && zero_violation <= tolerance; }
};

/// Samples M, N with ||M||, ||M + N|| <= rho, |p|, |z| <= rho and checks
/// lambda ||N|| <= F(M+N,p,z,x) - F(M,p,z,x) <= Lambda ||N||. N = A^T A with
/// A of the given row count; rank 1 makes ||N|| the trace of N.
EllipticityReport check_rho_ellipticity(const OperatorSpec& F, const EllipticityParams& p, int sample_count,
                                        std::uint64_t seed, int rank = 1);

/// Smooth test function with exact derivatives.
struct TestFunction {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;
  std::function<SymMatrix(const Point&)> hessian;
};

TestFunction zero_test_function(int n);
/// phi(x) = c + b.x + 0.5 x^T H x.
TestFunction quadratic_test_function(double c, const Point& b, const SymMatrix& H);

struct ShiftedRhs {
  GridFunction f_bar;
  GridFunction f_under;
};

/// f_bar = f + c0|u - phi| - F(D2phi, Dphi, phi, x) and
/// f_under = f - c0|u - phi| - F(...), on the common domain of f and u.
/// Throws precondition if sup|phi|, sup|Dphi| or sup||D2phi|| exceeds rho.
ShiftedRhs shifted_rhs(const OperatorSpec& F, const EllipticityParams& p, const GridFunction& f, const GridFunction& u,
                       const TestFunction& phi);

enum class ClassSide { super, sub, star };

struct ClassViolation {
  std::size_t node = 0;
  double opening = 0;
  /// "super" or "sub"
  std::string side;
  /// Pucci side of the inequality and its bound.
  double value = 0;
  double bound = 0;
};

struct PucciClassReport {
  double tolerance = 0;
  std::vector<double> openings;
  /// Interior contact nodes examined, per opening and side.
  std::vector<std::size_t> examined;
  std::vector<ClassViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Tests the one-sided Pucci inequalities at interior contact nodes of
/// sliding paraboloids (from below for "super", from above for "sub").
/// Tolerance is c_tol * h. Throws precondition if an opening exceeds rho/Gamma.
PucciClassReport pucci_class_test(const GridFunction& u, const EllipticityParams& p, const GridFunction& f,
                                  ClassSide side, const std::vector<double>& openings, double c_tol = 10.0);

}  // namespace slidekit

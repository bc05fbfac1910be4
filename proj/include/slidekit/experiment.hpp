#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slidekit/elliptic.hpp"
#include "slidekit/flatness.hpp"
#include "slidekit/grid_function.hpp"
#include "slidekit/params.hpp"
#include "slidekit/report.hpp"

namespace slidekit {

struct Generated {
  GridFunction u;
  GridFunction f;
  /// Operator the pair (u, f) satisfies.
  std::string op;
  /// Closed forms and parameter values.
  std::map<std::string, std::string> metadata;
};

/// Registered generators and their numeric parameters:
///   radial-sigma-k      k, t             u = (t/2)|x|^2, operator sigma-k:k
///   small-perturbation  delta, w         u = delta w, w in {x1x2, x1^2-x2^2, x1, harmonic-cubic}
///   paraboloid-family   b, center_*, c   u = (b/2)|x - center|^2 + c
///   c11-crease          delta            u = delta x1|x1|, trace, f = 2 delta sign(x1)
///   power-radial        gamma            u = |x|^gamma
///   constant            c                u = c
/// `op` overrides the generator's default operator; f is F applied to the
/// closed-form derivatives at every node. `w` is passed as a string.
Generated generate(const std::string& name, const std::map<std::string, double>& params, const Grid& g,
                   const std::string& op = "", const EllipticityParams& p = {},
                   const std::map<std::string, std::string>& string_params = {});
std::vector<std::string> generator_names();

struct SolveResult {
  GridFunction u;
  bool converged = false;
  int iterations = 0;
  double residual = 0;
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200000;
  /// Solve on coarser grids first and interpolate as the initial guess.
  bool nested = true;
  /// Safety factor on dt = h^2 / (2 Lambda stencil_count).
  double dt_factor = 1.0;
};

/// Nodes of the unit ball with a wide-stencil neighbour outside it; these
/// carry the Dirichlet data.
Mask solver_boundary(const Grid& g);

/// Pseudo-time marching u <- u + dt (F(D2u, Du, u, x) - f) on the interior
/// nodes, with boundary values taken from `boundary`. Second derivatives use
/// the axis and 45-degree diagonal directions. Stops when the residual sup is
/// <= tol. Throws divergence if the residual grows for 100 consecutive
/// iterations.
SolveResult relax_solve(const OperatorSpec& F, const GridFunction& f, const GridFunction& boundary,
                        const SolveOptions& opt = {});

struct CheckSpec {
  std::string name;
  std::map<std::string, double> params;
};

struct ExperimentConfig {
  std::string generator;
  std::map<std::string, double> generator_params;
  std::map<std::string, std::string> generator_strings;
  std::string op;
  EllipticityParams ellipticity;
  FlatnessConfig flatness;
  int dim = 2;
  int resolution = 129;
  std::vector<CheckSpec> checks;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::string prefix = "run";
};

/// Parses a JSON config; malformed text or fields raise config_parse.
ExperimentConfig parse_config(const std::string& json_text);

/// Check names accepted in ExperimentConfig::checks.
std::vector<std::string> check_names();

struct RunResult {
  std::vector<CheckReport> reports;
  std::vector<std::string> files;
  /// 0 iff no report has verdict fail.
  int exit_code = 0;
};

/// generator -> checks -> `<out_dir>/<prefix>_<check>.json` (+ `.csv` when a
/// series exists) and `<out_dir>/<prefix>_summary.json`. Errors are rethrown
/// with the failing stage named.
RunResult run(const ExperimentConfig& cfg);

}  // namespace slidekit

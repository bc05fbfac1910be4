#pragma once

#include <cstdint>
#include <vector>

#include "slidekit/grid.hpp"
#include "slidekit/grid_function.hpp"

namespace slidekit {

/// Serial runs the same kernels without an OpenMP team; results are
/// bit-identical either way.
enum class Exec { serial, parallel };

struct EnvelopeResult {
  /// min_j src[j] + w |x_i - x_j|^2 over finite src[j]; +inf if none.
  std::vector<double> value;
  /// Flat index of the minimising j (lexicographically smallest on ties),
  /// -1 where value is +inf. Empty unless witnesses were requested.
  std::vector<std::int64_t> argmin;
};

/// Separable lower envelope of paraboloids, one axis at a time, linear in the
/// grid size. Non-finite entries of `src` are not sources. The objective is
/// accumulated as src + c*d_{n-1}^2 + ... + c*d_0^2 with c = w h^2 and
/// integer offsets d, in that order.
EnvelopeResult lower_envelope(const Grid& g, const std::vector<double>& src, double w, bool witnesses,
                              Exec exec = Exec::parallel);

/// Reference O(size^2) evaluation with the same accumulation order and tie
/// rule; for tests.
EnvelopeResult lower_envelope_bruteforce(const Grid& g, const std::vector<double>& src, double w,
                                         const Mask& targets, Exec exec = Exec::parallel);

/// u_eps(x) = min over domain nodes y of u(y) + |y - x|^2 / eps, at every node.
GridFunction jensen_envelope(const GridFunction& u, double eps, Exec exec = Exec::parallel);

}  // namespace slidekit

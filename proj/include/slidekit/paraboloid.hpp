#pragma once

#include <cstddef>
#include <vector>

#include "slidekit/envelope.hpp"
#include "slidekit/grid_function.hpp"
#include "slidekit/quadratic.hpp"

namespace slidekit {

struct SlideResult {
  /// Every domain node attaining the minimum, ascending.
  std::vector<std::size_t> touches;
  /// min over the domain of u(z) + (a/2)|z - y|^2.
  double value = 0;
};

/// Slides P_{a,y} up from below until it touches u on the domain.
SlideResult slide_contact(const GridFunction& u, double a, const Point& y);

struct ContactPair {
  std::size_t touch = 0;
  std::size_t center = 0;
  /// u(touch) + (a/2)|touch - center|^2.
  double value = 0;
};

/// Touch nodes T_a(V) of paraboloids of opening a centred at nodes of V.
/// Each center contributes its lexicographically smallest minimiser.
struct ContactSet {
  Grid grid;
  double opening = 0;
  Mask touch;
  /// Touch nodes with |x| < 1 - 2h.
  Mask interior;
  /// One entry per center of V, ascending by center.
  std::vector<ContactPair> pairs;

  std::size_t boundary_touch_count() const { return touch.count() - interior.count(); }
  /// Centers served by a touch node.
  std::vector<std::size_t> centers_of(std::size_t touch_node) const;
};

bool is_interior_node(const Grid& g, std::size_t i);

/// One envelope sweep with witnesses; V may be any mask on u's grid.
ContactSet contact_set(const GridFunction& u, double a, const Mask& V, Exec exec = Exec::parallel);
/// Per-center scan; same tie rule as contact_set. Test oracle.
ContactSet contact_set_bruteforce(const GridFunction& u, double a, const Mask& V, Exec exec = Exec::parallel);

/// x + Du(x)/a with the central-difference gradient. Throws precondition if
/// x is not an interior node.
Point vertex_recovery(const GridFunction& u, double a, std::size_t x);

struct HessianViolation {
  std::size_t node = 0;
  double min_eig = 0;
  double max_eig = 0;
};

struct ContactHessianReport {
  std::size_t examined = 0;
  double tolerance = 0;
  std::vector<HessianViolation> lower;
  std::vector<HessianViolation> upper;
  double worst_min_eig = 0;
  double worst_max_eig = 0;
  bool passed() const { return lower.empty() && upper.empty(); }
};

/// Eigenvalues of the discrete Hessian at interior touch nodes against
/// [-a - tol, Gamma a + tol], tol = c_tol h.
ContactHessianReport contact_hessian_check(const ContactSet& cs, const GridFunction& u, double a, double Gamma,
                                           double c_tol = 10.0);

struct DirectionalBoundReport {
  std::size_t examined = 0;
  std::size_t violations = 0;
  /// Smallest (second difference + a) over all nodes and directions.
  double worst_margin = 0;
};

/// At each interior touch node, every second difference along the axis and
/// diagonal directions e in {-1,0,1}^n, divided by |e|^2 h^2, is >= -a. This
/// follows from the touching paraboloid and holds for arbitrary u.
DirectionalBoundReport contact_directional_check(const ContactSet& cs, const GridFunction& u, double a);

}  // namespace slidekit

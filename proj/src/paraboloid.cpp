#include "slidekit/paraboloid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slidekit/error.hpp"

namespace slidekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> domain_source(const GridFunction& u) {
  std::vector<double> src(u.size(), kInf);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.domain()[i]) src[i] = u[i];
  return src;
}

ContactSet assemble(const GridFunction& u, double a, const Mask& V, const EnvelopeResult& env) {
  const Grid& g = u.grid();
  ContactSet cs;
  cs.grid = g;
  cs.opening = a;
  cs.touch = Mask(g);
  cs.interior = Mask(g);
  for (std::size_t y = 0; y < g.size(); ++y) {
    if (!V[y] || env.argmin[y] < 0) continue;
    const auto x = static_cast<std::size_t>(env.argmin[y]);
    cs.pairs.push_back({x, y, env.value[y]});
    cs.touch.set(x, true);
    if (is_interior_node(g, x)) cs.interior.set(x, true);
  }
  return cs;
}

}  // namespace

bool is_interior_node(const Grid& g, std::size_t i) {
  const Point x = g.point(i);
  const double lim = 1.0 - 2.0 * g.spacing();
  return dot(x, x) < lim * lim;
}

std::vector<std::size_t> ContactSet::centers_of(std::size_t touch_node) const {
  std::vector<std::size_t> out;
  for (const auto& p : pairs)
    if (p.touch == touch_node) out.push_back(p.center);
  return out;
}

SlideResult slide_contact(const GridFunction& u, double a, const Point& y) {
  require(a > 0, ErrorKind::precondition, "opening must be positive");
  const Grid& g = u.grid();
  SlideResult r;
  r.value = kInf;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!u.domain()[i]) continue;
    const double v = u[i] + 0.5 * a * dist2(g.point(i), y);
    if (v < r.value) {
      r.value = v;
      r.touches.assign(1, i);
    } else if (v == r.value) {
      r.touches.push_back(i);
    }
  }
  if (r.touches.empty()) fail(ErrorKind::empty_region, "slide_contact: empty domain");
  return r;
}

ContactSet contact_set(const GridFunction& u, double a, const Mask& V, Exec exec) {
  require(a > 0, ErrorKind::precondition, "opening must be positive");
  require_same_grid(u.grid(), V.grid());
  const EnvelopeResult env = lower_envelope(u.grid(), domain_source(u), 0.5 * a, true, exec);
  return assemble(u, a, V, env);
}

ContactSet contact_set_bruteforce(const GridFunction& u, double a, const Mask& V, Exec exec) {
  require(a > 0, ErrorKind::precondition, "opening must be positive");
  require_same_grid(u.grid(), V.grid());
  const EnvelopeResult env = lower_envelope_bruteforce(u.grid(), domain_source(u), 0.5 * a, V, exec);
  return assemble(u, a, V, env);
}

Point vertex_recovery(const GridFunction& u, double a, std::size_t x) {
  require(a > 0, ErrorKind::precondition, "opening must be positive");
  if (!is_interior_node(u.grid(), x)) fail(ErrorKind::precondition, "vertex_recovery: node is not interior");
  return u.grid().point(x) + (1.0 / a) * gradient_at(u, x);
}

ContactHessianReport contact_hessian_check(const ContactSet& cs, const GridFunction& u, double a, double Gamma,
                                           double c_tol) {
  require_same_grid(cs.grid, u.grid());
  ContactHessianReport rep;
  rep.tolerance = c_tol * u.grid().spacing();
  rep.worst_min_eig = kInf;
  rep.worst_max_eig = -kInf;
  for (std::size_t x : cs.interior.indices()) {
    ++rep.examined;
    const Spectrum s = sym_eigenvalues(hessian_at(u, x));
    rep.worst_min_eig = std::min(rep.worst_min_eig, s.min());
    rep.worst_max_eig = std::max(rep.worst_max_eig, s.max());
    if (s.min() < -a - rep.tolerance) rep.lower.push_back({x, s.min(), s.max()});
    if (s.max() > Gamma * a + rep.tolerance) rep.upper.push_back({x, s.min(), s.max()});
  }
  return rep;
}

DirectionalBoundReport contact_directional_check(const ContactSet& cs, const GridFunction& u, double a) {
  require_same_grid(cs.grid, u.grid());
  const Grid& g = u.grid();
  const int n = g.dim();
  const double h2 = g.spacing() * g.spacing();
  // directions up to sign: first nonzero component positive
  std::vector<Index> dirs;
  int total = 1;
  for (int k = 0; k < n; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    Index e{};
    int c = code;
    for (int k = 0; k < n; ++k) {
      e[k] = c % 3 - 1;
      c /= 3;
    }
    int first = 0;
    for (int k = 0; k < n && first == 0; ++k) first = e[k];
    if (first > 0) dirs.push_back(e);
  }
  DirectionalBoundReport rep;
  rep.worst_margin = kInf;
  for (std::size_t x : cs.interior.indices()) {
    ++rep.examined;
    const Index m = g.multi(x);
    for (const Index& e : dirs) {
      Index mp = m, mm = m;
      int len2 = 0;
      for (int k = 0; k < n; ++k) {
        mp[k] += e[k];
        mm[k] -= e[k];
        len2 += e[k] * e[k];
      }
      const std::size_t ip = g.flat(mp), im = g.flat(mm);
      if (!u.domain()[ip] || !u.domain()[im]) continue;
      const double d2 = (u[ip] - 2.0 * u[x] + u[im]) / (len2 * h2);
      const double margin = d2 + a;
      rep.worst_margin = std::min(rep.worst_margin, margin);
      // rounding in the difference quotient is the only slack
      const double slack = 1e-9 * (1.0 + std::abs(u[x]) / h2);
      if (margin < -slack) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace slidekit

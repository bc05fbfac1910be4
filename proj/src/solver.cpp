#include <algorithm>
#include <cmath>
#include <limits>

#include "slidekit/error.hpp"
#include "slidekit/experiment.hpp"

namespace slidekit {

namespace {

struct Direction {
  Index d{};
  std::ptrdiff_t flat = 0;
};

std::vector<Direction> wide_directions(const Grid& g) {
  const int n = g.dim();
  std::vector<Direction> out;
  auto add = [&](Index d) {
    std::ptrdiff_t f = 0;
    for (int a = 0; a < n; ++a) f += d[a] * static_cast<std::ptrdiff_t>(g.stride(a));
    out.push_back({d, f});
  };
  for (int a = 0; a < n; ++a) {
    Index d{};
    d[a] = 1;
    add(d);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Index d{};
      d[a] = 1;
      d[b] = 1;
      add(d);
      d[b] = -1;
      add(d);
    }
  return out;
}

// Second difference along each direction, then the Hessian: axis entries
// directly, mixed entries from the two diagonals.
SymMatrix wide_hessian(const std::vector<double>& u, std::size_t i, const std::vector<Direction>& dirs, int n,
                       double inv_h2) {
  SymMatrix H(n);
  const double c = u[i];
  auto second = [&](const Direction& d) {
    return (u[i + d.flat] - 2.0 * c + u[i - d.flat]) * inv_h2;
  };
  for (int a = 0; a < n; ++a) H.set(a, a, second(dirs[a]));
  std::size_t k = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double plus = second(dirs[k++]);
      const double minus = second(dirs[k++]);
      H.set(a, b, 0.25 * (plus - minus));
    }
  return H;
}

Point central_gradient(const std::vector<double>& u, std::size_t i, const std::vector<Direction>& dirs, int n,
                       double inv_2h) {
  Point p{};
  for (int a = 0; a < n; ++a) p[a] = (u[i + dirs[a].flat] - u[i - dirs[a].flat]) * inv_2h;
  return p;
}

// Coarse grid sharing every other node, or N = 0 if none fits.
int coarse_resolution(int N) {
  const int Nc = (N + 1) / 2;
  return (Nc >= 17 && Nc % 2 == 1) ? Nc : 0;
}

GridFunction restrict_to(const GridFunction& fine, const Grid& coarse) {
  const Grid& g = fine.grid();
  std::vector<double> v(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    Index m = coarse.multi(i);
    for (int a = 0; a < g.dim(); ++a) m[a] *= 2;
    v[i] = fine[g.flat(m)];
  }
  return GridFunction(coarse, std::move(v));
}

std::vector<double> prolong(const GridFunction& coarse, const Grid& fine) {
  const Grid& gc = coarse.grid();
  const int n = fine.dim();
  std::vector<double> v(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const Index m = fine.multi(i);
    Index lo{};
    int odd = 0;
    for (int a = 0; a < n; ++a) {
      lo[a] = m[a] / 2;
      if (m[a] % 2) odd |= 1 << a;
    }
    double acc = 0;
    int cnt = 0;
    for (int corner = 0; corner < (1 << n); ++corner) {
      if ((corner & ~odd) != 0) continue;
      Index c = lo;
      for (int a = 0; a < n; ++a)
        if ((corner >> a) & 1) ++c[a];
      acc += coarse[gc.flat(c)];
      ++cnt;
    }
    v[i] = acc / cnt;
  }
  return v;
}

}  // namespace

Mask solver_boundary(const Grid& g) {
  const Mask dom = Mask::unit_ball(g);
  const auto dirs = wide_directions(g);
  const int n = g.dim();
  const int N = g.resolution();
  Mask out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!dom[i]) continue;
    const Index m = g.multi(i);
    bool edge = false;
    for (const auto& d : dirs) {
      for (int s = -1; s <= 1 && !edge; s += 2) {
        Index q = m;
        bool inside = true;
        for (int a = 0; a < n; ++a) {
          q[a] += s * d.d[a];
          inside = inside && q[a] >= 0 && q[a] < N;
        }
        edge = !inside || !dom[g.flat(q)];
      }
      if (edge) break;
    }
    if (edge) out.set(i, true);
  }
  return out;
}

SolveResult relax_solve(const OperatorSpec& F, const GridFunction& f, const GridFunction& boundary,
                        const SolveOptions& opt) {
  require_same_grid(f.grid(), boundary.grid());
  require(opt.tol > 0 && opt.max_iter > 0, ErrorKind::precondition, "relax_solve needs tol > 0 and max_iter > 0");
  require(F.Lambda > 0, ErrorKind::precondition, "relax_solve needs a declared Lambda > 0");
  const Grid& g = f.grid();
  const int n = g.dim();
  const double h = g.spacing();
  const auto dirs = wide_directions(g);
  const Mask dom = Mask::unit_ball(g);
  const Mask bnd = solver_boundary(g);
  const Mask inner = dom - bnd;
  const std::vector<std::size_t> nodes = inner.indices();
  require(!nodes.empty(), ErrorKind::empty_region, "relax_solve: no interior nodes");

  std::vector<double> u = boundary.values();
  if (opt.nested) {
    if (const int Nc = coarse_resolution(g.resolution())) {
      const Grid gc(n, Nc);
      SolveOptions copt = opt;
      copt.max_iter = opt.max_iter;
      try {
        const SolveResult cr = relax_solve(F, restrict_to(f, gc), restrict_to(boundary, gc), copt);
        const std::vector<double> guess = prolong(cr.u, g);
        for (std::size_t i : nodes) u[i] = guess[i];
      } catch (const Error&) {
        // a failed coarse solve only costs the initial guess
      }
    }
  }

  const double count = static_cast<double>(dirs.size());
  const double dt = opt.dt_factor * h * h / (2.0 * F.Lambda * count);
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 0.5 / h;
  std::vector<double> next = u;
  std::vector<Point> pts(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) pts[k] = g.point(nodes[k]);

  SolveResult out;
  double prev = std::numeric_limits<double>::infinity();
  int growth = 0;
  const std::ptrdiff_t K = static_cast<std::ptrdiff_t>(nodes.size());
  const bool par = K > 4096;
  for (int it = 0;; ++it) {
    double res = 0;
#pragma omp parallel for reduction(max : res) schedule(static) if (par)
    for (std::ptrdiff_t k = 0; k < K; ++k) {
      const std::size_t i = nodes[k];
      const SymMatrix H = wide_hessian(u, i, dirs, n, inv_h2);
      const Point Du = central_gradient(u, i, dirs, n, inv_2h);
      const double r = F(H, Du, u[i], pts[k]) - f[i];
      next[i] = u[i] + dt * r;
      res = std::max(res, std::abs(r));
    }
    if (!std::isfinite(res)) fail(ErrorKind::divergence, "relax_solve: non-finite residual at iteration " + std::to_string(it));
    out.residual = res;
    out.iterations = it;
    if (res <= opt.tol) {
      out.converged = true;
      break;
    }
    if (it >= opt.max_iter) break;
    growth = res > prev ? growth + 1 : 0;
    if (growth >= 100)
      fail(ErrorKind::divergence, "relax_solve: residual grew for 100 consecutive iterations (now " +
                                      std::to_string(res) + ")");
    prev = res;
    u.swap(next);
  }
  out.u = GridFunction(g, std::move(u));
  return out;
}

}  // namespace slidekit

#include <algorithm>
#include <cmath>

#include "slidekit/error.hpp"
#include "slidekit/flatness.hpp"

namespace slidekit {

Seminorms weighted_seminorms(const GridFunction& u, double R, int n, Exec exec) {
  const Grid& g = u.grid();
  require(R > 0, ErrorKind::precondition, "R must be positive");
  std::vector<Point> pts;
  std::vector<double> vals, dist;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    const double r = norm(x);
    if (r > R + 1e-12 || !u.domain()[i]) continue;
    pts.push_back(x);
    vals.push_back(u[i]);
    dist.push_back(std::max(0.0, R - r));
  }
  Seminorms s;
  const std::ptrdiff_t K = static_cast<std::ptrdiff_t>(pts.size());
  double zero = 0, lip = 0;
  const double h2 = g.spacing() * g.spacing() * (1 - 1e-12);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : zero, lip) if (par)
  for (std::ptrdiff_t i = 0; i < K; ++i) {
    zero = std::max(zero, std::pow(dist[i], n) * std::abs(vals[i]));
    for (std::ptrdiff_t j = i + 1; j < K; ++j) {
      const double d2 = dist2(pts[i], pts[j]);
      if (d2 < h2) continue;
      const double d = std::min(dist[i], dist[j]);
      lip = std::max(lip, std::pow(d, n + 1) * std::abs(vals[i] - vals[j]) / std::sqrt(d2));
    }
  }
  s.zero_norm = zero;
  s.lip_seminorm = lip;
  return s;
}

CheckReport interpolation_check(const GridFunction& u, double R, double eps_interp, double C_n) {
  const Grid& g = u.grid();
  const int n = g.dim();
  CheckReport r;
  r.check = "interpolation";
  r.hypotheses["eps_in_unit_interval"] = eps_interp > 0 && eps_interp <= 1;
  const Seminorms s = weighted_seminorms(u, R, n);
  double integral = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (u.domain()[i] && norm(g.point(i)) <= R + 1e-12) integral += std::abs(u[i]);
  integral *= g.cell_volume();
  const double tail = std::pow(eps_interp, -n) * integral;
  r.lhs = s.zero_norm;
  r.rhs = eps_interp * s.lip_seminorm + C_n * tail;
  r.tolerance = 1e-12 * std::max(1.0, r.rhs);
  r.extras["zero_norm"] = s.zero_norm;
  r.extras["lip_seminorm"] = s.lip_seminorm;
  r.extras["integral"] = integral;
  r.extras["C"] = C_n;
  r.extras["minimal_C"] = tail > 0 ? std::max(0.0, r.lhs - eps_interp * s.lip_seminorm) / tail : 0.0;
  if (!r.hypotheses_hold())
    r.verdict = Verdict::vacuous;
  else
    r.verdict = r.lhs <= r.rhs + r.tolerance ? Verdict::pass : Verdict::fail;
  return r;
}

}  // namespace slidekit

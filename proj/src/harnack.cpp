#include "slidekit/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "slidekit/elliptic.hpp"
#include "slidekit/error.hpp"
#include "slidekit/paraboloid.hpp"

namespace slidekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point> sphere_directions(int n, int count) {
  std::vector<Point> dirs;
  if (n == 1) return {Point{1, 0, 0}, Point{-1, 0, 0}};
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * k / count;
      dirs.push_back({std::cos(t), std::sin(t), 0});
    }
    return dirs;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double s = std::sqrt(1.0 - z * z);
    dirs.push_back({s * std::cos(golden * k), s * std::sin(golden * k), z});
  }
  return dirs;
}

}  // namespace

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0) || !(x[i] > 0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = m * sxx - sx * sx;
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / den;
}

CheckReport barrier_check(const Point& x0, double r, double a, const DerivedConstants& dc,
                          const EllipticityParams& prm, int samples, std::optional<Point> y1) {
  require(a > 0 && r > 0, ErrorKind::precondition, "barrier_check needs a, r > 0");
  require(norm(x0) + r <= 1.0 + 1e-12, ErrorKind::precondition, "B_r(x0) must lie in the unit ball");
  require(samples >= 1, ErrorKind::precondition, "samples must be >= 1");
  const int n = dc.n;
  const int p = dc.p;
  const double Ma = static_cast<double>(dc.M) * a;

  const int ndir = n == 1 ? 2 : std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples)))));
  const int nt = (samples + ndir - 1) / ndir;
  const auto dirs = sphere_directions(n, ndir);

  CheckReport rep;
  rep.check = "barrier";
  rep.rhs = a;
  rep.tolerance = 1e-9;
  double worst = kInf, worst_t = 0, max_hess = 0, max_grad = 0;
  int count = 0;
  for (int it = 0; it < nt && count < samples; ++it) {
    // t in (1/2, 1], endpoint t = 1 included
    const double t = 0.5 + 0.5 * (it + 1.0) / nt;
    const double tp2 = std::pow(t, -p - 2);
    for (const Point& e : dirs) {
      if (count >= samples) break;
      ++count;
      const Point x = x0 + (r * t) * e;
      SymMatrix H = SymMatrix::outer(e, n);
      // a[(p+1) t^{-p-2} e(x)e - t^{-p-2}(I - e(x)e)] - aI
      H = (a * ((p + 1) * tp2 + tp2)) * H - SymMatrix::identity(n, a * tp2 + a);
      Point yc;
      if (y1) {
        yc = *y1;
      } else {
        // farthest center along e maximises |D psi|: x - y1 parallel to e
        const double xe = dot(x, e);
        const double s = xe + std::sqrt(std::max(0.0, xe * xe + 1.0 - dot(x, x)));
        yc = x - s * e;
      }
      const Point grad = (-a) * (x - yc) + (-a * r * std::pow(t, -p - 1)) * e;
      const double val = pucci(H, PucciSide::minus, prm) - prm.b0 * norm(grad);
      if (val < worst) {
        worst = val;
        worst_t = t;
      }
      max_hess = std::max(max_hess, spectral_norm(H));
      max_grad = std::max(max_grad, norm(grad));
    }
  }
  rep.lhs = worst;
  rep.hypotheses["ball_inside_unit_ball"] = true;
  rep.extras["samples"] = count;
  rep.extras["worst_t"] = worst_t;
  rep.extras["max_hessian_norm"] = max_hess;
  rep.extras["max_gradient_norm"] = max_grad;
  rep.extras["M_times_a"] = Ma;
  rep.extras["p"] = p;
  const bool pucci_ok = worst >= a * (1.0 - rep.tolerance);
  const bool size_ok = max_hess <= Ma * (1.0 + rep.tolerance) && max_grad <= Ma * (1.0 + rep.tolerance);
  rep.extras["pucci_bound_ok"] = pucci_ok;
  rep.extras["size_bound_ok"] = size_ok;
  rep.verdict = pucci_ok && size_ok ? Verdict::pass : Verdict::fail;
  return rep;
}

CheckReport verify_measure_lemma(const GridFunction& u, double a, const Mask& V, const DerivedConstants& dc,
                                 const EllipticityParams& prm, const GridFunction& f, double tol_factor) {
  require_same_grid(u.grid(), V.grid());
  require_same_grid(u.grid(), f.grid());
  const Grid& g = u.grid();
  CheckReport rep;
  rep.check = "measure";
  rep.hypotheses["u_bounded_by_rho"] = sup_norm(u) <= prm.rho;
  rep.hypotheses["f_below_opening"] = sup_norm(f) < a;
  rep.hypotheses["opening_admissible"] = a <= prm.rho / dc.Gamma;
  rep.hypotheses["centers_in_closed_ball"] = V.subset_of(u.domain());

  const ContactSet cs = contact_set(u, a, V);
  rep.hypotheses["touches_interior"] = cs.boundary_touch_count() == 0;

  const double h = g.spacing();
  rep.tolerance = tol_factor * h;
  rep.lhs = cs.interior.measure();
  rep.rhs = std::pow(1.0 + dc.Gamma, -dc.n) * V.measure() * (1.0 - rep.tolerance);
  rep.extras["ratio"] = V.count() ? static_cast<double>(cs.interior.count()) / V.count() : 0.0;
  rep.extras["bound_ratio"] = std::pow(1.0 + dc.Gamma, -dc.n);
  rep.extras["excluded_boundary_touches"] = static_cast<double>(cs.boundary_touch_count());
  rep.extras["interior_touches"] = static_cast<double>(cs.interior.count());
  rep.extras["centers"] = static_cast<double>(V.count());

  // the Hessian claim at touch nodes, for information
  const ContactHessianReport claim = contact_hessian_check(cs, u, a, dc.Gamma);
  rep.extras["claim_lower_violations"] = static_cast<double>(claim.lower.size());
  rep.extras["claim_upper_violations"] = static_cast<double>(claim.upper.size());

  if (!rep.hypotheses_hold()) {
    rep.verdict = Verdict::vacuous;
    return rep;
  }
  rep.verdict = rep.lhs >= rep.rhs ? Verdict::pass : Verdict::fail;
  return rep;
}

namespace {

void density_hypotheses(CheckReport& rep, const GridFunction& u, const DerivedConstants& dc,
                        const EllipticityParams& prm, const GridFunction& f) {
  const Grid& g = u.grid();
  const Mask quarter = Mask::ball(g, Point{}, 0.25) & u.domain();
  rep.hypotheses["u_nonnegative"] = min_over(u, u.domain()) >= 0;
  rep.hypotheses["f_bounded_by_8"] = sup_norm(f) <= 8.0;
  rep.hypotheses["u_bounded_by_rho"] = sup_norm(u) <= prm.rho;
  rep.hypotheses["inf_quarter_ball_at_most_1"] = min_over(u, quarter) <= 1.0;
  rep.hypotheses["rho_at_least_rho0"] = prm.rho >= dc.rho0;
}

}  // namespace

CheckReport verify_density(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& prm,
                           const GridFunction& f, double tol_factor) {
  require_same_grid(u.grid(), f.grid());
  CheckReport rep;
  rep.check = "density";
  density_hypotheses(rep, u, dc, prm, f);
  const Grid& g = u.grid();
  const Mask& B1 = u.domain();
  const ContactSet cs = contact_set(u, 8.0, B1);
  const double b1 = B1.measure();
  const double touch_ratio = cs.interior.measure() / b1;
  std::size_t low = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (B1[i] && u[i] <= 2.0) ++low;
  const double low_ratio = static_cast<double>(low) * g.cell_volume() / b1;
  const double mu_prime = std::pow(4.0, -dc.n) * std::pow(1.0 + dc.Gamma, -dc.n);
  rep.tolerance = tol_factor * g.spacing();
  rep.lhs = std::min(touch_ratio, low_ratio);
  rep.rhs = mu_prime;
  rep.extras["touch_ratio"] = touch_ratio;
  rep.extras["sublevel_ratio"] = low_ratio;
  rep.extras["mu_prime"] = mu_prime;
  rep.extras["excluded_boundary_touches"] = static_cast<double>(cs.boundary_touch_count());
  if (!rep.hypotheses_hold()) {
    rep.verdict = Verdict::vacuous;
    return rep;
  }
  rep.verdict = rep.lhs > mu_prime * (1.0 - rep.tolerance) ? Verdict::pass : Verdict::fail;
  return rep;
}

std::vector<Ball> dyadic_ball_family(const Grid& g) {
  std::vector<Ball> out;
  const int jmax = static_cast<int>(std::floor(std::log2(1.0 / (4.0 * g.spacing())) + 1e-12));
  const int n = g.dim();
  for (int j = 0; j <= jmax; ++j) {
    const double r = std::ldexp(1.0, -j);
    const int span = 1 << j;
    Index lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
      lo[a] = a < n ? -span : 0;
      hi[a] = a < n ? span : 0;
    }
    for (int i0 = lo[0]; i0 <= hi[0]; ++i0)
      for (int i1 = lo[1]; i1 <= hi[1]; ++i1)
        for (int i2 = lo[2]; i2 <= hi[2]; ++i2) {
          const Point c{i0 * r, i1 * r, i2 * r};
          if (norm(c) + r <= 1.0 + 1e-12) out.push_back({c, r});
        }
  }
  return out;
}

CheckReport covering_step(const Mask& E, const Mask& F, double mu, const std::vector<Ball>& family) {
  require_same_grid(E.grid(), F.grid());
  require(mu > 0 && mu < 1, ErrorKind::precondition, "mu must lie in (0,1)");
  require(!E.empty(), ErrorKind::precondition, "covering_step: E must be nonempty");
  const Grid& g = E.grid();
  const Mask B1 = Mask::unit_ball(g);
  require(E.subset_of(F) && F.subset_of(B1), ErrorKind::precondition, "covering_step: need E in F in B_1");

  CheckReport rep;
  rep.check = "covering";
  const int n = g.dim();
  const double h = g.spacing();
  std::size_t tested = 0, failing = 0;
  double worst_density = kInf;
  for (const Ball& b : family) {
    // scan the bounding box of the ball
    Index lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
      if (a < n) {
        lo[a] = std::max(0, static_cast<int>(std::floor((b.center[a] - b.radius + 1.0) / h)) - 1);
        hi[a] = std::min(g.resolution() - 1, static_cast<int>(std::ceil((b.center[a] + b.radius + 1.0) / h)) + 1);
      }
    }
    const double r2 = b.radius * b.radius + 1e-12;
    std::size_t in_ball = 0, in_f = 0;
    bool meets_e = false;
    for (int i0 = lo[0]; i0 <= hi[0]; ++i0)
      for (int i1 = lo[1]; i1 <= hi[1]; ++i1)
        for (int i2 = lo[2]; i2 <= hi[2]; ++i2) {
          const std::size_t idx = g.flat({i0, i1, i2});
          if (dist2(g.point(idx), b.center) > r2) continue;
          ++in_ball;
          if (F[idx]) ++in_f;
          if (E[idx]) meets_e = true;
        }
    if (!meets_e || in_ball == 0) continue;
    ++tested;
    const double density = static_cast<double>(in_f) / in_ball;
    worst_density = std::min(worst_density, density);
    if (!(density > mu)) ++failing;
  }
  rep.hypotheses["E_nonempty_and_nested"] = true;
  rep.hypotheses["ball_density_above_mu"] = failing == 0;
  rep.extras["balls_tested"] = static_cast<double>(tested);
  rep.extras["balls_failing"] = static_cast<double>(failing);
  rep.extras["worst_density"] = worst_density;
  rep.lhs = (B1 - F).measure();
  rep.rhs = (1.0 - mu * std::pow(5.0, -n)) * (B1 - E).measure();
  if (failing) {
    rep.notes.push_back("hypothesis not satisfied");
    rep.verdict = Verdict::vacuous;
    return rep;
  }
  rep.verdict = rep.lhs <= rep.rhs ? Verdict::pass : Verdict::fail;
  return rep;
}

CheckReport decay_iteration(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& prm,
                            const GridFunction& f, int kmax) {
  require_same_grid(u.grid(), f.grid());
  CheckReport rep;
  rep.check = "decay";
  density_hypotheses(rep, u, dc, prm, f);
  const int admissible =
      prm.rho > dc.rho0 ? static_cast<int>(std::floor(std::log(prm.rho / dc.rho0) / std::log(double(dc.M)))) : 0;
  if (kmax > admissible) {
    rep.notes.push_back("kmax " + std::to_string(kmax) + " truncated to admissible " + std::to_string(admissible));
    kmax = admissible;
  }
  rep.extras["kmax"] = kmax;
  rep.extras["admissible_kmax"] = admissible;
  const Mask& B1 = u.domain();
  const double b1 = B1.measure();
  bool ok = true, monotone = true;
  double prev = kInf;
  for (int k = 1; k <= kmax; ++k) {
    const double a = 8.0 * std::pow(double(dc.M), k);
    const ContactSet cs = contact_set(u, a, B1);
    // every touch counts here, boundary ones included: the complement is
    // taken against the closed ball
    const double comp = (B1 - cs.touch).measure();
    const double bound = std::pow(1.0 - dc.theta, k) * b1;
    ok = ok && comp <= bound;
    monotone = monotone && comp <= prev;
    prev = comp;
    rep.series.push_back({{"k", double(k)}, {"opening", a}, {"complement", comp}, {"bound", bound},
                          {"pass", comp <= bound ? 1.0 : 0.0}});
  }
  rep.extras["nonincreasing"] = monotone;
  if (!rep.series.empty()) {
    rep.lhs = rep.series.back().at("complement");
    rep.rhs = rep.series.back().at("bound");
  }
  if (!rep.hypotheses_hold() || kmax < 1) {
    if (kmax < 1) rep.notes.push_back("no admissible k (rho too small relative to rho0 * M)");
    rep.verdict = Verdict::vacuous;
    return rep;
  }
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  return rep;
}

CheckReport weak_Leps(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& prm,
                      std::vector<double> t_values) {
  CheckReport rep;
  rep.check = "weak-leps";
  const Grid& g = u.grid();
  const Mask quarter = Mask::ball(g, Point{}, 0.25) & u.domain();
  rep.hypotheses["u_nonnegative"] = min_over(u, u.domain()) >= 0;
  rep.hypotheses["u_bounded_by_rho"] = sup_norm(u) <= prm.rho;
  rep.hypotheses["inf_quarter_ball_at_most_1"] = min_over(u, quarter) <= 1.0;
  if (t_values.empty()) {
    const double top = 17.0 * prm.rho / dc.rho0;
    for (double t = 17.0; t <= top * (1 + 1e-12); t *= double(dc.M)) t_values.push_back(t);
    if (t_values.empty()) t_values.push_back(17.0);
  }
  std::vector<double> ms;
  bool monotone = true;
  for (double t : t_values) {
    const double m = distribution_measure(u, u.domain(), t);
    if (!ms.empty() && m > ms.back()) monotone = false;
    ms.push_back(m);
    rep.series.push_back({{"t", t}, {"measure", m}});
  }
  const double slope = log_log_slope(t_values, ms);
  rep.extras["fitted_exponent"] = std::isnan(slope) ? kInf : -slope;
  rep.extras["eps"] = dc.eps;
  rep.lhs = ms.back();
  rep.rhs = u.domain().measure();
  if (!rep.hypotheses_hold()) {
    rep.verdict = Verdict::vacuous;
    return rep;
  }
  rep.verdict = monotone ? Verdict::pass : Verdict::fail;
  return rep;
}

GridFunction truncate_above(const GridFunction& u, double threshold) {
  GridFunction out = u;
  for (auto& v : out.values())
    if (v > threshold) v = 0.0;
  return out;
}

CheckReport weak_harnack(const GridFunction& u, const GridFunction& f, const DerivedConstants& dc,
                         const EllipticityParams& prm) {
  require_same_grid(u.grid(), f.grid());
  const Grid& g = u.grid();
  CheckReport rep;
  rep.check = "weak-harnack";
  const Mask quarter = Mask::ball(g, Point{}, 0.25) & u.domain();
  const double inf_q = min_over(u, quarter);
  const double fsup = sup_norm(f);
  rep.hypotheses["u_nonnegative"] = min_over(u, u.domain()) >= 0;
  rep.hypotheses["u_bounded_by_rho"] = sup_norm(u) <= prm.rho;
  rep.hypotheses["inf_plus_f_over_8_small"] = inf_q + fsup / 8.0 <= prm.rho / dc.rho0;
  rep.hypotheses["rho_at_least_rho0"] = prm.rho >= dc.rho0;

  const double threshold = 17.0 * prm.rho / dc.rho0;
  const GridFunction ut = truncate_above(u, threshold);
  // log of sum_i h^n u_i^eps0 over B_1/4, by log-sum-exp
  const double logcell = std::log(g.cell_volume());
  double mx = -kInf;
  std::vector<double> terms;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!quarter[i] || !(ut[i] > 0)) continue;
    terms.push_back(logcell + dc.eps0 * std::log(ut[i]));
    mx = std::max(mx, terms.back());
  }
  double log_lhs = -kInf;
  if (!terms.empty()) {
    double s = 0;
    for (double t : terms) s += std::exp(t - mx);
    log_lhs = (mx + std::log(s)) / dc.eps0;
  }
  const double rhs = inf_q + fsup;
  const double log_rhs = std::log(rhs);
  rep.lhs = std::exp(log_lhs);
  rep.rhs = rhs;
  rep.extras["threshold"] = threshold;
  rep.extras["log_lhs"] = log_lhs;
  rep.extras["log_rhs"] = log_rhs;
  rep.extras["log_ratio"] = log_lhs - log_rhs;
  rep.extras["eps0"] = dc.eps0;
  std::size_t truncated = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (u.domain()[i] && u[i] > threshold) ++truncated;
  rep.extras["truncated_nodes"] = static_cast<double>(truncated);
  rep.notes.push_back("ratio is logged only; the constant is not explicit");
  rep.verdict = rep.hypotheses_hold() ? Verdict::pass : Verdict::vacuous;
  return rep;
}

CheckReport holder_decay(const GridFunction& u, const DerivedConstants& dc, const EllipticityParams& prm,
                         const GridFunction& f) {
  require_same_grid(u.grid(), f.grid());
  const Grid& g = u.grid();
  CheckReport rep;
  rep.check = "holder";
  rep.hypotheses["u_bounded_by_1"] = sup_norm(u) <= 1.0;
  rep.hypotheses["f_bounded_by_sigma"] = sup_norm(f) <= dc.sigma;
  rep.hypotheses["rho_above_2rho0"] = prm.rho > 2.0 * dc.rho0;
  const double floor_r = std::max(std::sqrt(2.0 * dc.rho0 / prm.rho), 8.0 * g.spacing());
  std::vector<double> rs, oscs;
  for (int k = 0;; ++k) {
    const double r = std::pow(4.0, -k);
    if (r < floor_r * (1 - 1e-12)) break;
    const double osc = oscillation(u, Mask::ball(g, Point{}, r) & u.domain());
    rs.push_back(r);
    oscs.push_back(osc);
    rep.series.push_back({{"k", double(k)}, {"r", r}, {"osc", osc}});
  }
  const double slope = log_log_slope(rs, oscs);
  const bool all_zero = std::all_of(oscs.begin(), oscs.end(), [](double o) { return o == 0.0; });
  rep.extras["fitted_alpha"] = all_zero || std::isnan(slope) ? kInf : slope;
  rep.extras["radius_floor"] = floor_r;
  rep.extras["sigma"] = dc.sigma;
  rep.extras["sigma_empirical"] = dc.sigma_empirical;
  if (!oscs.empty()) {
    rep.lhs = oscs.back();
    rep.rhs = oscs.front();
  }
  rep.verdict = rep.hypotheses_hold() ? Verdict::pass : Verdict::vacuous;
  return rep;
}

}  // namespace slidekit

// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slidekit/constants.hpp"
#include "slidekit/envelope.hpp"
#include "slidekit/error.hpp"
#include "slidekit/experiment.hpp"
#include "slidekit/flatness.hpp"
#include "slidekit/harnack.hpp"
#include "slidekit/paraboloid.hpp"

using namespace slidekit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Constant cascade against an independent closure.
Outcome constants_cascade() {
  const auto t0 = std::chrono::steady_clock::now();
  EllipticityParams p;
  const DerivedConstants d = derive_constants(2, p);
  bool ok = d.Gamma == 3.0 && d.rho0 == 24.0 && d.p == 3 && d.C0 == 7.0 / 3.0;
  // smallest integer M meeting both constraints, then the formulas
  const double C0 = 7.0 / 3.0, Gamma = 3.0;
  const int pp = 3;
  long M = 2;
  while (!(2 * C0 / (M - 1) + 1.0 / 64 <= 1.0 / 16) || M < 1 + (pp + 1) * (1L << (pp + 2))) ++M;
  const double mu = std::pow((M - 1.0) / (8.0 * M), 2) / std::pow(1 + Gamma, 2);
  const double theta = mu / 25.0;
  const double eps = -std::log1p(-theta) / std::log(double(M));
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  ok = ok && d.M == M && rel(d.mu, mu) <= 1e-12 && rel(d.theta, theta) <= 1e-12 && rel(d.eps, eps) <= 1e-12 &&
       rel(d.eps0, eps / 2) <= 1e-12;
  const double t = seconds_since(t0);
  ok = ok && t < 1.0;
  return {ok, fmt("Gamma=%g rho0=%g p=%d C0=%.17g M=%ld (oracle %ld) mu=%.6e theta=%.6e eps=%.6e, %.3fs", d.Gamma,
                  d.rho0, d.p, d.C0, d.M, M, d.mu, d.theta, d.eps, t)};
}

// 2. Measure lemma on the bowl, plus sweep vs brute force at N=65.
Outcome measure_lemma() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(2, 513);
  const double h = g.spacing();
  EllipticityParams p;
  p.rho = 4.0;
  const DerivedConstants dc = derive_constants(2, p);
  const auto u = GridFunction::sample(g, [](const Point& x) { return dot(x, x); });
  const Mask V = Mask::ball(g, Point{}, 0.25);
  const CheckReport r = verify_measure_lemma(u, 1.0, V, dc, p, GridFunction(g, 0.0));
  const double ratio = r.extra("ratio");
  const double t = seconds_since(t0);
  bool ok = r.verdict == Verdict::pass && ratio >= (1.0 / 16) * (1 - 10 * h) && std::abs(ratio - 1.0 / 9) <= 10 * h &&
            t < 10.0;

  const Grid gs(2, 65);
  const auto us = GridFunction::sample(gs, [](const Point& x) { return dot(x, x); });
  const Mask Vs = Mask::ball(gs, Point{}, 0.25);
  const ContactSet a = contact_set(us, 1.0, Vs);
  const ContactSet b = contact_set_bruteforce(us, 1.0, Vs);
  bool same = a.touch == b.touch && a.pairs.size() == b.pairs.size();
  for (std::size_t k = 0; same && k < a.pairs.size(); ++k)
    same = a.pairs[k].center == b.pairs[k].center && a.pairs[k].touch == b.pairs[k].touch;
  ok = ok && same;
  return {ok, fmt("ratio=%.6f (1/9=%.6f, |diff|=%.2e <= 10h=%.2e), verdict=%s, %.2fs; brute force N=65 %s", ratio,
                  1.0 / 9, std::abs(ratio - 1.0 / 9), 10 * h, to_string(r.verdict), t,
                  same ? "agrees node-for-node" : "DISAGREES")};
}

// 3. Jensen envelope closed form and monotonicity.
Outcome envelope_oracle() {
  const Grid g(1, 4097);
  const double h = g.spacing(), eps = 0.5;
  const auto u = GridFunction::sample(g, [](const Point& x) { return 0.5 * x[0] * x[0]; });
  const GridFunction ue = jensen_envelope(u, eps);
  double err = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    err = std::max(err, std::abs(ue[i] - x * x / (eps + 2)));
  }
  const double bound = (1 / eps + 0.5) * h * h;
  const GridFunction e1 = jensen_envelope(u, 0.1), e2 = jensen_envelope(u, 0.2), e4 = jensen_envelope(u, 0.4);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!(e1[i] >= e2[i] && e2[i] >= e4[i] && u[i] >= e1[i])) ++bad;
  return {err <= bound && bad == 0,
          fmt("max error %.3e <= %.3e; monotonicity violations %zu", err, bound, bad)};
}

// 4. Contact-Hessian claim on the 9-member affine-contraction family.
Outcome contact_hessian() {
  const Grid g(2, 257);
  EllipticityParams p;
  p.rho = 4.0;
  const DerivedConstants dc = derive_constants(2, p);
  const double a = 1.0;
  const Mask V = Mask::ball(g, Point{}, 0.25);
  const std::vector<std::pair<Point, Point>> shifts = {
      {Point{}, Point{}}, {Point{0.25, 0, 0}, Point{0.25, 0, 0}}, {Point{-0.1, 0.2, 0}, Point{0, -0.2, 0}}};
  std::size_t violations = 0, examined = 0, lemma_fail = 0;
  double lo = 1e300, hi = -1e300;
  for (double b : {0.0, 1.5, 3.0}) {
    for (const auto& [z0, l] : shifts) {
      const auto u = GridFunction::sample(g, [&](const Point& x) { return 0.5 * b * dist2(x, z0) + dot(l, x); });
      if (verify_measure_lemma(u, a, V, dc, p, GridFunction(g, 0.0)).verdict != Verdict::pass) ++lemma_fail;
      const ContactSet cs = contact_set(u, a, V);
      const ContactHessianReport r = contact_hessian_check(cs, u, a, dc.Gamma, 10.0);
      violations += r.lower.size() + r.upper.size();
      examined += r.examined;
      lo = std::min(lo, r.worst_min_eig);
      hi = std::max(hi, r.worst_max_eig);
    }
  }
  return {violations == 0 && lemma_fail == 0 && examined > 0,
          fmt("%zu interior contacts, eigenvalues in [%.4f, %.4f] vs [-a-10h, Gamma a+10h] = [%.4f, %.4f], "
              "%zu violations, measure lemma failures %zu",
              examined, lo, hi, -a - 10 * g.spacing(), dc.Gamma * a + 10 * g.spacing(), violations, lemma_fail)};
}

// 5. Barrier inequality at 1e4 samples.
Outcome barrier() {
  EllipticityParams p;
  const DerivedConstants dc = derive_constants(2, p);
  const CheckReport r = barrier_check(Point{}, 1.0, 1.0, dc, p, 10000);
  return {r.verdict == Verdict::pass && dc.p == 3,
          fmt("p=%d, min of M-(D2psi)-b0|Dpsi| = %.12f >= a=%g over %g samples (worst t=%.4f)", dc.p, r.lhs, r.rhs,
              r.extra("samples"), r.extra("worst_t"))};
}

// 6. Covering step on random admissible pairs and on gate violators.
Outcome covering() {
  const Grid g(2, 129);
  const auto family = dyadic_ball_family(g);
  const Mask B1 = Mask::unit_ball(g);
  std::vector<Mask> balls;
  for (const Ball& b : family) balls.push_back(Mask::ball(g, b.center, b.radius) & B1);
  const double mu = 0.1;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-1, 1), R(0.05, 0.35);

  auto random_union = [&](int count) {
    Mask m(g);
    for (int k = 0; k < count; ++k) {
      const Point c{0.8 * U(rng), 0.8 * U(rng), 0};
      m = m | Mask::ball(g, c, R(rng));
    }
    return m & B1;
  };

  int built = 0, attempts = 0, conclusion_fail = 0, gate_blocked = 0;
  while (built < 50 && attempts < 5000) {
    ++attempts;
    const Mask F = random_union(3 + attempts % 6);
    // E keeps the nodes of F that no low-density family ball touches
    Mask bad(g);
    for (const Mask& b : balls) {
      const double dens = static_cast<double>((b & F).count()) / b.count();
      if (!(dens > mu)) bad = bad | b;
    }
    const Mask E = F - bad;
    if (E.empty()) continue;
    ++built;
    const CheckReport r = covering_step(E, F, mu, family);
    if (!r.hypotheses.at("ball_density_above_mu")) ++gate_blocked;
    if (r.verdict != Verdict::pass) ++conclusion_fail;
  }

  int violators = 0, gate_ok = 0;
  for (int k = 0; k < 10; ++k) {
    // F is a small ball, so the unit ball meets E with density below mu
    const Point c{0.5 * U(rng), 0.5 * U(rng), 0};
    const Mask F = Mask::ball(g, c, 0.1 + 0.1 * std::abs(U(rng)));
    const Mask E = Mask::ball(g, c, 0.05);
    const CheckReport r = covering_step(E, F, mu, family);
    ++violators;
    if (!r.hypotheses.at("ball_density_above_mu") && r.verdict == Verdict::vacuous) ++gate_ok;
  }
  return {built == 50 && conclusion_fail == 0 && gate_blocked == 0 && gate_ok == violators,
          fmt("%d admissible pairs (%d attempts): %d conclusion failures, %d gate rejections; %d/%d violating pairs "
              "gated to vacuous",
              built, attempts, conclusion_fail, gate_blocked, gate_ok, violators)};
}

// 7. Hoelder exponent recovery.
Outcome holder() {
  const Grid g(2, 513);
  EllipticityParams p;
  p.rho = 1e5;
  const DerivedConstants dc = derive_constants(2, p);
  const GridFunction f0(g, 0.0);
  bool ok = true;
  std::ostringstream s;
  for (double gam : {0.5, 1.0, 1.5}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto u = GridFunction::sample(g, [&](const Point& x) { return std::pow(norm(x), gam); });
    const double a = holder_decay(u, dc, p, f0).extra("fitted_alpha");
    const double t = seconds_since(t0);
    ok = ok && std::abs(a - gam) <= 0.1 && t < 5.0;
    s << "gamma=" << gam << " alpha=" << fmt("%.4f", a) << " (" << fmt("%.2f", t) << "s); ";
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto xy = GridFunction::sample(g, [](const Point& x) { return x[0] * x[1]; });
  const double a = holder_decay(xy, dc, p, f0).extra("fitted_alpha");
  const double t = seconds_since(t0);
  ok = ok && a >= 1.9 && t < 5.0;
  s << "x1x2 alpha=" << fmt("%.4f", a) << " (" << fmt("%.2f", t) << "s)";
  return {ok, s.str()};
}

// 8. Flatness classifier.
Outcome flatness() {
  std::ostringstream s;
  bool ok = true;
  const Grid g(2, 513);
  const double h = g.spacing();
  FlatnessConfig cfg;
  {
    const double t = 0.5;
    const Generated gen = generate("radial-sigma-k", {{"k", 2}, {"t", t}}, g);
    const OperatorSpec F = make_operator(gen.op, 2);
    const SingularSet ss = classify_singular_set(gen.u, gen.f, F, cfg, 1, Exec::parallel, true);
    std::size_t regular = 0;
    double coef_err = 0;
    for (const auto& pc : ss.points) {
      if (pc.verdict == PointClassification::Verdict::regular) ++regular;
      const Quadratic& L = pc.limit;
      coef_err = std::max({coef_err, std::abs(L.a0()), norm(L.b()), std::abs(L.C()(0, 0) - t / 2),
                           std::abs(L.C()(1, 1) - t / 2), std::abs(L.C()(0, 1))});
    }
    const bool a_ok = regular == ss.points.size() && !ss.points.empty() && coef_err <= 1e-6;
    ok = ok && a_ok;
    s << fmt("(a) %zu/%zu regular, limit coefficient error %.2e; ", regular, ss.points.size(), coef_err);
  }
  {
    const Generated gen = generate("c11-crease", {{"delta", 1e-2}}, g);
    const OperatorSpec F = make_operator("trace", 2);
    const SingularSet ss = classify_singular_set(gen.u, gen.f, F, cfg);
    double far = 0;
    for (std::size_t i : ss.mask.indices()) far = std::max(far, std::abs(g.point(i)[0]));
    const bool b_ok = ss.measure <= 8 * h && far <= 3 * h + 1e-12;
    ok = ok && b_ok;
    s << fmt("(b) singular measure %.3e = %.2fh <= 8h, mask within %.1fh of x1=0; ", ss.measure, ss.measure / h,
             far / h);
  }
  {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-1, 1);
    std::size_t cases = 0, bad = 0;
    double worst_res = 0;
    EllipticityParams p;
    p.rho = 0.5;
    for (int n = 1; n <= 3; ++n) {
      for (const std::string& name : registry_examples(n)) {
        const OperatorSpec F = make_operator(name, n, p);
        if (!(F.lambda > 0)) continue;
        for (int i = 0; i < 100; ++i) {
          // keep |f0|/(n lambda) within the ellipticity range rho
          const double f0 = U(rng) * p.rho * n * F.lambda;
          const QuadraticSeed sd = initial_quadratic(F, f0, n, F.lambda);
          const double res = std::abs(F(SymMatrix::identity(n, sd.t)) - f0);
          worst_res = std::max(worst_res, res);
          if (res > 1e-10 || std::abs(sd.t) > std::abs(f0) / (n * F.lambda) + 1e-9) ++bad;
          ++cases;
        }
      }
    }
    ok = ok && bad == 0;
    s << fmt("(c) %zu seeds over non-degenerate registry operators, worst residual %.1e, %zu failures", cases,
             worst_res, bad);
  }
  return {ok, s.str()};
}

// 9. Twice-differentiability thresholds.
Outcome twice_diff() {
  const Grid g(2, 1025);
  const std::size_t c = g.flat(g.nearest(Point{}));
  const SymMatrix Z(2);
  const auto crease = GridFunction::sample(g, [](const Point& x) { return x[0] * std::abs(x[0]); });
  double least_pass = 0;
  bool monotone = true, prev = false;
  for (int j = 8; j >= 0; --j) {
    const double eps = std::ldexp(1.0, -j);
    const bool p = twice_diff_test(crease, c, Point{}, Z, eps).pass;
    if (p && least_pass == 0) least_pass = eps;
    monotone = monotone && (!prev || p);
    prev = p;
  }
  const bool crease_ok = monotone && least_pass >= 1.0 / 16 && least_pass <= 0.25;
  const auto cube = GridFunction::sample(g, [](const Point& x) { return std::pow(norm(x), 3); });
  bool cube_ok = true;
  std::ostringstream s;
  s << fmt("x1|x1|: least passing dyadic eps %.4g (threshold 1/8); ", least_pass);
  for (double eps : {1e-2, 1e-3}) {
    const TwiceDiffResult r = twice_diff_test(cube, c, Point{}, Z, eps);
    const double ratio = r.r_witness / (16 * eps);
    cube_ok = cube_ok && r.pass && ratio >= 0.5 && ratio <= 2.0;
    s << fmt("|x|^3 eps=%g: r_witness=%.5g vs 16eps=%.3g; ", eps, r.r_witness, 16 * eps);
  }
  return {crease_ok && cube_ok, s.str()};
}

// 10. Weak Harnack ratio for constants.
Outcome weak_harnack_scaling() {
  const Grid g(2, 129);
  EllipticityParams p;
  p.rho = 24.0;
  const DerivedConstants dc = derive_constants(2, p);
  const double expected = std::log(Mask::ball(g, Point{}, 0.25).measure()) / dc.eps0;
  double worst = 0;
  for (double c : {0.01, 0.1, 1.0 * p.rho / dc.rho0}) {
    const CheckReport r = weak_harnack(GridFunction(g, c), GridFunction(g, 0.0), dc, p);
    worst = std::max(worst, std::abs(r.extra("log_ratio") - expected) / std::abs(expected));
  }
  return {worst <= 1e-9, fmt("log ratio vs log|B_1/4|/eps0 = %.10e, worst relative deviation %.2e", expected, worst)};
}

// 11. Solver accuracy and comparison principle.
Outcome solver() {
  const Grid g(2, 129);
  const double h = g.spacing();
  const auto exact = [](const Point& x) { return x[0] * x[0] - x[1] * x[1]; };
  const OperatorSpec tr = make_operator("trace", 2);
  const auto t0 = std::chrono::steady_clock::now();
  SolveOptions opt;
  opt.tol = 1e-10;
  const SolveResult s = relax_solve(tr, GridFunction(g, 0.0), GridFunction::sample(g, exact), opt);
  const double t = seconds_since(t0);
  const Mask bnd = solver_boundary(g);
  double err = 0;
  for (std::size_t i : s.u.domain().indices())
    if (!bnd[i]) err = std::max(err, std::abs(s.u[i] - exact(g.point(i))));

  const Grid gc(2, 33);
  const Mask bc = solver_boundary(gc);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1), V(0, 0.5);
  int violated = 0;
  for (int k = 0; k < 20; ++k) {
    const double a = U(rng), b = U(rng), c = U(rng);
    GridFunction lo = GridFunction::sample(gc, [&](const Point& x) { return a * x[0] + b * x[0] * x[1] + c * x[1] * x[1]; });
    GridFunction hi = lo;
    for (std::size_t i = 0; i < gc.size(); ++i)
      if (bc[i]) hi[i] += V(rng);
    SolveOptions o;
    o.tol = 1e-9;
    const SolveResult sl = relax_solve(tr, GridFunction(gc, 0.0), lo, o);
    const SolveResult sh = relax_solve(tr, GridFunction(gc, 0.0), hi, o);
    bool ok = sl.converged && sh.converged;
    for (std::size_t i : sl.u.domain().indices()) ok = ok && sh.u[i] >= sl.u[i] - 1e-9;
    if (!ok) ++violated;
  }
  return {s.converged && err <= 5 * h * h && violated == 0,
          fmt("N=129 %s in %d iterations (%.1fs), interior error %.3e <= 5h^2=%.3e; comparison violations %d/20",
              s.converged ? "converged" : "DID NOT CONVERGE", s.iterations, t, err, 5 * h * h, violated)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 constant cascade", constants_cascade},
      {"2 measure lemma", measure_lemma},
      {"3 envelope oracle", envelope_oracle},
      {"4 contact Hessian", contact_hessian},
      {"5 barrier", barrier},
      {"6 covering step", covering},
      {"7 Hoelder recovery", holder},
      {"8 flatness classifier", flatness},
      {"9 twice differentiability", twice_diff},
      {"10 weak Harnack scaling", weak_harnack_scaling},
      {"11 solver fixture", solver},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}

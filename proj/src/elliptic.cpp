#include "slidekit/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "slidekit/constants.hpp"
#include "slidekit/error.hpp"
#include "slidekit/paraboloid.hpp"

namespace slidekit {

double pucci(const SymMatrix& m, PucciSide side, double lambda, double Lambda) {
  // with equal weights the operator is a multiple of the trace; skipping the
  // eigen-solve keeps it bit-identical to the trace operator
  if (lambda == Lambda) return lambda * m.trace();
  const double wpos = side == PucciSide::minus ? lambda : Lambda;
  const double wneg = side == PucciSide::minus ? Lambda : lambda;
  double pos = 0, neg = 0;
  for (double e : sym_eigenvalues(m)) {
    if (e > 0) pos += e;
    else neg += e;
  }
  return wpos * pos + wneg * neg;
}

double sigma_k(const SymMatrix& m, int k) {
  const int n = m.dim();
  if (k < 1 || k > n) fail(ErrorKind::precondition, "sigma_k: k=" + std::to_string(k) + " out of range 1.." + std::to_string(n));
  if (k == 1) return m.trace();
  if (k == n) return determinant(m);
  // remaining case: n = 3, k = 2
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += m(i, i) * m(j, j) - m(i, j) * m(i, j);
  return s;
}

bool gamma_k_test(const SymMatrix& m, int k) {
  if (k < 1 || k > m.dim()) fail(ErrorKind::precondition, "gamma_k_test: k out of range");
  for (int i = 1; i <= k; ++i)
    if (!(sigma_k(m, i) > 0)) return false;
  return true;
}

namespace {

SymMatrix random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, g(rng));
  return m;
}

Point random_in_ball(int n, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Point x{};
    for (int a = 0; a < n; ++a) x[a] = u(rng);
    if (dot(x, x) <= 1.0) return radius * x;
  }
}

}  // namespace

EllipticityReport check_rho_ellipticity(const OperatorSpec& F, const EllipticityParams& p, int sample_count,
                                        std::uint64_t seed, int rank) {
  require(sample_count >= 1, ErrorKind::precondition, "sample_count must be >= 1");
  require(rank >= 1, ErrorKind::precondition, "rank must be >= 1");
  const int n = F.dim;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  EllipticityReport rep;
  rep.samples = sample_count;
  for (int s = 0; s < sample_count; ++s) {
    SymMatrix M = random_symmetric(n, rng);
    const double mnorm = spectral_norm(M);
    const double target = p.rho * unit(rng);
    if (mnorm > 0) M *= target / mnorm;

    SymMatrix N(n);
    for (int r = 0; r < rank; ++r) {
      Point a{};
      for (int i = 0; i < n; ++i) a[i] = g(rng);
      N += SymMatrix::outer(a, n);
    }
    const double nnorm = spectral_norm(N);
    // ||M + N|| <= ||M|| + ||N|| <= rho
    const double budget = (p.rho - spectral_norm(M)) * unit(rng);
    if (nnorm > 0) N *= budget / nnorm;

    const Point pv = random_in_ball(n, p.rho, rng);
    const double z = p.rho * (2.0 * unit(rng) - 1.0);
    const Point x = random_in_ball(n, 1.0, rng);

    const double inc = F(M + N, pv, z, x) - F(M, pv, z, x);
    const double nn = spectral_norm(N);
    rep.worst_lower = std::max(rep.worst_lower, p.lambda * nn - inc);
    rep.worst_upper = std::max(rep.worst_upper, inc - p.Lambda * nn);
    if (F.vanishes_at_zero) rep.zero_violation = std::max(rep.zero_violation, std::abs(F(SymMatrix(n), Point{}, 0.0, x)));
  }
  return rep;
}

TestFunction zero_test_function(int n) {
  return {[](const Point&) { return 0.0; }, [](const Point&) { return Point{}; },
          [n](const Point&) { return SymMatrix(n); }};
}

TestFunction quadratic_test_function(double c, const Point& b, const SymMatrix& H) {
  return {[=](const Point& x) { return c + dot(b, x) + 0.5 * H.quad(x); },
          [=](const Point& x) { return b + H.apply(x); }, [=](const Point&) { return H; }};
}

ShiftedRhs shifted_rhs(const OperatorSpec& F, const EllipticityParams& p, const GridFunction& f, const GridFunction& u,
                       const TestFunction& phi) {
  require_same_grid(f.grid(), u.grid());
  const Grid& g = u.grid();
  const Mask dom = f.domain() & u.domain();
  const double slack = p.rho * (1.0 + 1e-12);
  std::vector<double> fb(g.size(), 0.0), fu(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!dom[i]) continue;
    const Point x = g.point(i);
    const double v = phi.value(x);
    const Point dv = phi.gradient(x);
    const SymMatrix hv = phi.hessian(x);
    if (std::abs(v) > slack || norm(dv) > slack || spectral_norm(hv) > slack)
      fail(ErrorKind::precondition, "test function exceeds the C^{1,1} bound rho=" + std::to_string(p.rho));
    const double fphi = F(hv, dv, v, x);
    const double gap = p.c0 * std::abs(u[i] - v);
    fb[i] = f[i] + gap - fphi;
    fu[i] = f[i] - gap - fphi;
  }
  return {GridFunction(g, std::move(fb), dom), GridFunction(g, std::move(fu), dom)};
}

PucciClassReport pucci_class_test(const GridFunction& u, const EllipticityParams& p, const GridFunction& f,
                                  ClassSide side, const std::vector<double>& openings, double c_tol) {
  p.validate();
  require_same_grid(u.grid(), f.grid());
  const Grid& g = u.grid();
  const double Gamma = gamma_constant(g.dim(), p);
  for (double a : openings) {
    require(a > 0, ErrorKind::precondition, "openings must be positive");
    if (a > p.rho / Gamma * (1.0 + 1e-12))
      fail(ErrorKind::precondition, "opening " + std::to_string(a) + " exceeds rho/Gamma = " + std::to_string(p.rho / Gamma));
  }
  PucciClassReport rep;
  rep.tolerance = c_tol * g.spacing();
  rep.openings = openings;

  GridFunction neg = u;
  for (auto& v : neg.values()) v = -v;

  const bool do_super = side != ClassSide::sub;
  const bool do_sub = side != ClassSide::super;
  for (double a : openings) {
    if (do_super) {
      const ContactSet cs = contact_set(u, a, u.domain());
      std::size_t seen = 0;
      for (std::size_t x : cs.interior.indices()) {
        ++seen;
        const double lhs = pucci(hessian_at(u, x), PucciSide::minus, p) - p.b0 * norm(gradient_at(u, x));
        const double rhs = side == ClassSide::star ? std::abs(f[x]) : f[x];
        if (lhs > rhs + rep.tolerance) rep.violations.push_back({x, a, "super", lhs, rhs});
      }
      rep.examined.push_back(seen);
    }
    if (do_sub) {
      // paraboloids touching u from above are paraboloids touching -u from below
      const ContactSet cs = contact_set(neg, a, u.domain());
      std::size_t seen = 0;
      for (std::size_t x : cs.interior.indices()) {
        ++seen;
        const double lhs = pucci(hessian_at(u, x), PucciSide::plus, p) + p.b0 * norm(gradient_at(u, x));
        const double rhs = side == ClassSide::star ? -std::abs(f[x]) : f[x];
        if (lhs < rhs - rep.tolerance) rep.violations.push_back({x, a, "sub", lhs, rhs});
      }
      rep.examined.push_back(seen);
    }
  }
  return rep;
}

}  // namespace slidekit

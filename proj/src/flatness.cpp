#include "slidekit/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "slidekit/error.hpp"

namespace slidekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootTol = 1e-10;

int coefficient_count(int n) { return 1 + n + n * (n + 1) / 2; }

// Monomials 1, z_a, z_a z_b (a <= b).
void monomials(const Point& z, int n, double* out) {
  int k = 0;
  out[k++] = 1.0;
  for (int a = 0; a < n; ++a) out[k++] = z[a];
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) out[k++] = z[a] * z[b];
}

// Coefficients over z = w / s back to a Quadratic in w.
Quadratic from_scaled(const double* c, int n, double s) {
  Quadratic q(n);
  Point b{};
  SymMatrix C(n);
  int k = 1;
  for (int a = 0; a < n; ++a) b[a] = c[k++] / s;
  const double s2 = s * s;
  for (int a = 0; a < n; ++a)
    for (int bb = a; bb < n; ++bb) {
      const double v = c[k++] / s2;
      C.set(a, bb, a == bb ? v : 0.5 * v);
    }
  return Quadratic(c[0], b, C);
}

// Root of an increasing function on [lo, hi] with g(lo) <= 0 <= g(hi).
template <class G>
double bisect_root(G&& g, double lo, double hi, double glo, double ghi) {
  if (std::abs(glo) <= kRootTol) return lo;
  if (std::abs(ghi) <= kRootTol) return hi;
  double best = lo, gbest = glo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) < std::abs(gbest)) {
      best = mid;
      gbest = gm;
    }
    if (gm <= 0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
    if (std::abs(gm) <= kRootTol || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))
      break;
  }
  // polish inside the final bracket; exact for affine g
  if (ghi != glo) {
    const double x = lo - glo * (hi - lo) / (ghi - glo);
    if (x >= lo && x <= hi) {
      const double gx = g(x);
      if (std::abs(gx) <= std::abs(gbest)) {
        best = x;
        gbest = gx;
      }
    }
  }
  return best;
}

}  // namespace

void FlatnessConfig::validate() const {
  require(alpha > 0 && alpha < 1, ErrorKind::precondition, "alpha must lie in (0,1)");
  require(eta > 0 && eta < 1, ErrorKind::precondition, "eta must lie in (0,1)");
  require(r0 > 0 && r0 < 1, ErrorKind::precondition, "r0 must lie in (0,1)");
  require(delta > 0, ErrorKind::precondition, "delta must be positive");
  require(kmax >= 1, ErrorKind::precondition, "kmax must be >= 1");
}

QuadraticSeed initial_quadratic(const OperatorSpec& F, double f0, int n, double lambda) {
  require(lambda > 0, ErrorKind::precondition, "initial_quadratic needs lambda > 0");
  const double B = std::abs(f0) / (n * lambda);
  const double tol = 1e-9 * (1.0 + B);
  auto g = [&](double s) { return F(SymMatrix::identity(n, s), Point{}, 0.0, Point{}) - f0; };
  const double lo = -B - tol, hi = B + tol;
  const double glo = g(lo), ghi = g(hi);
  if (glo > 0 || ghi < 0)
    fail(ErrorKind::bracket_failure, "operator '" + F.name + "' has no root of F(sI)=" + std::to_string(f0) +
                                         " on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                         "]; not elliptic with lambda=" + std::to_string(lambda));
  const double t = bisect_root(g, lo, hi, glo, ghi);
  if (std::abs(g(t)) > kRootTol)
    fail(ErrorKind::bracket_failure, "initial_quadratic: bisection stalled for '" + F.name + "'");
  return {t, Quadratic(0.0, Point{}, SymMatrix::identity(n, 0.5 * t))};
}

double compat_adjust(const OperatorSpec& F, const Quadratic& P, double f0, double scale, const Point& x,
                     double lambda_hint) {
  require(scale > 0, ErrorKind::precondition, "compat_adjust needs scale > 0");
  const int n = P.dim();
  const SymMatrix D2 = P.hessian();
  const Point Dp = P.b();
  const double P0 = P.a0();
  auto g = [&](double a) { return F(D2 + SymMatrix::identity(n, scale * a), Dp, P0, x) - f0; };
  const double g0 = g(0.0);
  if (std::abs(g0) <= kRootTol) return 0.0;
  double B = lambda_hint > 0 ? std::abs(g0) / (n * lambda_hint * scale) : std::abs(g0) / scale;
  B = B * (1.0 + 1e-9) + 1e-300;
  for (int it = 0; it < 80; ++it) {
    const double lo = g0 > 0 ? -B : 0.0;
    const double hi = g0 > 0 ? 0.0 : B;
    const double glo = g0 > 0 ? g(lo) : g0;
    const double ghi = g0 > 0 ? g0 : g(hi);
    if (glo <= 0 && ghi >= 0) {
      const double a = bisect_root(g, lo, hi, glo, ghi);
      if (std::abs(g(a)) > kRootTol * std::max(1.0, std::abs(f0)))
        fail(ErrorKind::bracket_failure, "compat_adjust: bisection stalled for '" + F.name + "'");
      return a;
    }
    B *= 2.0;
  }
  fail(ErrorKind::bracket_failure, "compat_adjust: no sign change for '" + F.name + "'");
}

GridFunction rescale_v(const GridFunction& u, const Quadratic& P, double r, double alpha, const Point& x0) {
  const Grid& g = u.grid();
  const int n = g.dim();
  const double h = g.spacing();
  require(r >= 8.0 * h * (1 - 1e-12), ErrorKind::precondition, "rescale_v: r below the 8h floor");
  require(norm(x0) + r <= 1.0 + 1e-12, ErrorKind::precondition, "rescale_v: x0 + r B_1 leaves the unit ball");
  const double scale = std::pow(r, 2.0 + alpha);
  const int N = g.resolution();
  std::vector<double> out(g.size(), 0.0);
  const Mask dom = Mask::unit_ball(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!dom[i]) continue;
    const Point y = x0 + r * g.point(i);
    Index lo{};
    double frac[3] = {0, 0, 0};
    for (int a = 0; a < n; ++a) {
      double s = (y[a] + 1.0) / h;
      const double rs = std::round(s);
      if (std::abs(s - rs) < 1e-9) s = rs;
      int k = static_cast<int>(std::floor(s));
      k = std::clamp(k, 0, N - 2);
      lo[a] = k;
      frac[a] = s - k;
    }
    double acc = 0;
    for (int corner = 0; corner < (1 << n); ++corner) {
      double wgt = 1.0;
      Index m = lo;
      for (int a = 0; a < n; ++a) {
        const bool up = (corner >> a) & 1;
        wgt *= up ? frac[a] : 1.0 - frac[a];
        m[a] += up ? 1 : 0;
      }
      if (wgt == 0.0) continue;
      const std::size_t j = g.flat(m);
      acc += wgt * (u[j] - P(g.point(j)));
    }
    out[i] = acc / scale;
  }
  return GridFunction(g, std::move(out), dom);
}

QuadraticFit fit_quadratic(const GridFunction& u, const Point& center, double r) {
  const Grid& g = u.grid();
  const int n = g.dim();
  const int m = coefficient_count(n);
  require(r > 0, ErrorKind::precondition, "fit radius must be positive");
  std::vector<std::size_t> nodes;
  const double r2 = r * r + 1e-12;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (u.domain()[i] && dist2(g.point(i), center) <= r2) nodes.push_back(i);
  if (nodes.size() < static_cast<std::size_t>(std::pow(3, n)) || nodes.size() < static_cast<std::size_t>(m))
    fail(ErrorKind::precondition, "fit_quadratic: fewer than 3^n nodes in the ball");
  Eigen::MatrixXd A(nodes.size(), m);
  Eigen::VectorXd y(nodes.size());
  double row[10];
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Point z = (1.0 / r) * (g.point(nodes[k]) - center);
    monomials(z, n, row);
    for (int c = 0; c < m; ++c) A(k, c) = row[c];
    y(k) = u[nodes[k]];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < m) fail(ErrorKind::precondition, "fit_quadratic: degenerate node configuration");
  const Eigen::VectorXd c = qr.solve(y);
  QuadraticFit fit;
  fit.P = from_scaled(c.data(), n, r).recentered(-1.0 * center);
  fit.nodes = nodes.size();
  for (std::size_t i : nodes) fit.residual = std::max(fit.residual, std::abs(u[i] - fit.P(g.point(i))));
  return fit;
}

namespace {

// Per-grid precomputation shared by every point of a classification run:
// node offsets of B_{r0} sorted by length (so each smaller ball is a prefix)
// and the least-squares operator of every fitting scale.
class FlatnessEngine {
 public:
  FlatnessEngine(const Grid& g, const FlatnessConfig& cfg) : g_(g), cfg_(cfg) {
    cfg_.validate();
    const int n = g.dim();
    const double h = g.spacing();
    const int span = static_cast<int>(std::floor(cfg.r0 / h + 1e-9));
    const double r02 = cfg.r0 * cfg.r0 + 1e-12;
    Index lo{}, hi{};
    for (int a = 0; a < n; ++a) {
      lo[a] = -span;
      hi[a] = span;
    }
    for (int i0 = lo[0]; i0 <= hi[0]; ++i0)
      for (int i1 = lo[1]; i1 <= hi[1]; ++i1)
        for (int i2 = lo[2]; i2 <= hi[2]; ++i2) {
          const Point w{i0 * h, i1 * h, i2 * h};
          const double d2 = dot(w, w);
          if (d2 > r02) continue;
          Offset o;
          o.w = w;
          o.dist2 = d2;
          o.delta = static_cast<std::ptrdiff_t>(i0) * static_cast<std::ptrdiff_t>(g.stride(0)) +
                    (n > 1 ? static_cast<std::ptrdiff_t>(i1) * static_cast<std::ptrdiff_t>(g.stride(1)) : 0) +
                    (n > 2 ? static_cast<std::ptrdiff_t>(i2) * static_cast<std::ptrdiff_t>(g.stride(2)) : 0);
          offsets_.push_back(o);
        }
    std::stable_sort(offsets_.begin(), offsets_.end(),
                     [](const Offset& a, const Offset& b) { return a.dist2 < b.dist2; });

    floor_ = 8.0 * h * (1 - 1e-12);
    const int m = coefficient_count(n);
    for (int k = 1; k <= cfg.kmax; ++k) {
      const double s = cfg.r0 * std::pow(cfg.eta, k);
      if (s < floor_) break;
      Scale sc;
      sc.s = s;
      sc.count = prefix(s);
      if (sc.count < static_cast<std::size_t>(std::pow(3, n)) || sc.count < static_cast<std::size_t>(m)) break;
      Eigen::MatrixXd A(sc.count, m);
      double row[10];
      for (std::size_t j = 0; j < sc.count; ++j) {
        monomials((1.0 / s) * offsets_[j].w, n, row);
        for (int c = 0; c < m; ++c) A(j, c) = row[c];
      }
      // rows of the pseudo-inverse: coefficients = pinv * values
      // thin SVD: a dense count x count solve would not fit at fine resolutions
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd sv = svd.singularValues();
      Eigen::VectorXd inv(sv.size());
      for (Eigen::Index c = 0; c < sv.size(); ++c) inv(c) = sv(c) > 1e-12 * sv(0) ? 1.0 / sv(c) : 0.0;
      Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
      sc.pinv.assign(pinv.data(), pinv.data() + pinv.size());
      sc.rows = m;
      scales_.push_back(std::move(sc));
    }
  }

  PointClassification run(const GridFunction& u, const GridFunction& f, const OperatorSpec& F, std::size_t x0,
                          double cauchy_C) const {
    PointClassification pc;
    pc.index = x0;
    try {
      run_impl(u, f, F, x0, cauchy_C, pc);
    } catch (const Error& e) {
      pc.verdict = PointClassification::Verdict::undetermined;
      pc.note = e.what();
    }
    return pc;
  }

  std::size_t prefix(double radius) const {
    const double r2 = radius * radius + 1e-12;
    return static_cast<std::size_t>(
        std::upper_bound(offsets_.begin(), offsets_.end(), r2, [](double v, const Offset& o) { return v < o.dist2; }) -
        offsets_.begin());
  }

 private:
  struct Offset {
    Point w{};
    double dist2 = 0;
    std::ptrdiff_t delta = 0;
  };
  struct Scale {
    double s = 0;
    std::size_t count = 0;
    int rows = 0;
    std::vector<double> pinv;  // column-major rows x count
  };

  void run_impl(const GridFunction& u, const GridFunction& f, const OperatorSpec& F, std::size_t x0,
                double cauchy_C, PointClassification& pc) const {
    const Grid& g = g_;
    const int n = g.dim();
    const Point xc = g.point(x0);
    if (norm(xc) + cfg_.r0 > 1.0 + 1e-12)
      fail(ErrorKind::precondition, "caffarelli_iterate: x0 needs margin r0 inside the unit ball");

    // discrete Taylor quadratic at x0
    const double u0 = u[x0];
    const Point Du = gradient_at(u, x0);
    const SymMatrix D2u = hessian_at(u, x0);
    const double Fq = F(D2u, Du, u0, xc);
    const double ft0 = f[x0] - Fq;

    OperatorSpec G;
    G.name = F.name + "@x0";
    G.dim = n;
    G.eval = [&F, D2u, Du, u0, xc, Fq](const SymMatrix& M, const Point& p, double z, const Point&) {
      return F(M + D2u, p + Du, z + u0, xc) - Fq;
    };

    // local ellipticity from rank-one increments, halved for safety
    double lam = kInf;
    const double step = 1e-3;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        Point e{};
        e[a] = 1.0;
        e[b] = 1.0;
        const Point v = (1.0 / norm(e)) * e;
        lam = std::min(lam, G(step * SymMatrix::outer(v, n), Point{}, 0.0, Point{}) / step);
      }
    }
    lam *= 0.5;

    // residual w = u - Q over B_r0(x0), ordered by distance
    const std::size_t K = offsets_.size();
    std::vector<double> w(K), prefix_max(K);
    double run_max = 0;
    for (std::size_t j = 0; j < K; ++j) {
      const Offset& o = offsets_[j];
      const double q = u0 + dot(Du, o.w) + 0.5 * D2u.quad(o.w);
      w[j] = u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(x0) + o.delta)] - q;
      run_max = std::max(run_max, std::abs(w[j]));
      prefix_max[j] = run_max;
    }

    // twice-differentiability gate on the same residual
    {
      const double eps = cfg_.delta;
      const double rmax = std::min(1.0 - norm(xc), cfg_.gate_radius > 0 ? cfg_.gate_radius : cfg_.r0);
      double r = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(rmax) + 1e-12)));
      std::vector<std::pair<double, bool>> levels;
      for (; r >= floor_; r *= 0.5) {
        const std::size_t c = prefix(0.5 * r);
        const double sup = c ? prefix_max[c - 1] : 0.0;
        levels.push_back({r, sup <= 2.0 * eps * r * r});
      }
      pc.twice_differentiable = !levels.empty() && levels.back().second;
      pc.r_witness = 0;
      for (auto it = levels.rbegin(); it != levels.rend() && it->second; ++it) pc.r_witness = it->first;
    }

    const double alpha = cfg_.alpha;
    bool ok = pc.twice_differentiable;

    // k = 0: seed on B_r0
    if (!(lam > 0)) fail(ErrorKind::precondition, "operator is degenerate at x0");
    const QuadraticSeed seed = initial_quadratic(G, ft0, n, lam);
    Quadratic L = seed.P0;
    double res0 = 0;
    for (std::size_t j = 0; j < K; ++j) res0 = std::max(res0, std::abs(w[j] - L(offsets_[j].w)));
    const double r0s = std::pow(cfg_.r0, 2.0 + alpha);
    pc.scales.push_back(cfg_.r0);
    pc.residual_ratios.push_back(res0 / r0s);
    ok = ok && res0 <= r0s;
    if (res0 <= r0s) pc.deepest_k = 0;
    bool chain = res0 <= r0s;

    const int m = coefficient_count(n);
    std::vector<double> coef(m);
    for (std::size_t k = 0; k < scales_.size(); ++k) {
      const Scale& sc = scales_[k];
      std::fill(coef.begin(), coef.end(), 0.0);
      for (std::size_t j = 0; j < sc.count; ++j) {
        const double wj = w[j];
        const double* col = sc.pinv.data() + j * sc.rows;
        for (int c = 0; c < m; ++c) coef[c] += col[c] * wj;
      }
      Quadratic Lk = from_scaled(coef.data(), n, sc.s);
      const double a = compat_adjust(G, Lk, ft0, 1.0, Point{}, lam);
      Lk += Quadratic(0.0, Point{}, SymMatrix::identity(n, 0.5 * a));
      double res = 0;
      for (std::size_t j = 0; j < sc.count; ++j) res = std::max(res, std::abs(w[j] - Lk(offsets_[j].w)));
      const double ss = std::pow(sc.s, 2.0 + alpha);
      const double rr = res / ss;
      const double cr = (Lk - L).norm(sc.s) / (cauchy_C * ss);
      pc.scales.push_back(sc.s);
      pc.residual_ratios.push_back(rr);
      pc.cauchy_ratios.push_back(cr);
      const bool step_ok = rr <= 1.0 && cr <= 1.0;
      ok = ok && step_ok;
      chain = chain && step_ok;
      if (chain) pc.deepest_k = static_cast<int>(k) + 1;
      L = Lk;
    }
    pc.limit = Quadratic::taylor(xc, u0, Du, D2u) + L.recentered(-1.0 * xc);
    pc.verdict = ok ? PointClassification::Verdict::regular : PointClassification::Verdict::undetermined;
    if (!pc.twice_differentiable) pc.note = "twice-differentiability gate failed";
  }

  Grid g_;
  FlatnessConfig cfg_;
  std::vector<Offset> offsets_;
  std::vector<Scale> scales_;
  double floor_ = 0;
};

}  // namespace

PointClassification caffarelli_iterate(const GridFunction& u, const GridFunction& f, const OperatorSpec& F,
                                       std::size_t x0, const FlatnessConfig& cfg) {
  require_same_grid(u.grid(), f.grid());
  const double C = cfg.cauchy_C > 0 ? cfg.cauchy_C : calibrate_cauchy_constant(F, u.grid(), cfg);
  FlatnessEngine engine(u.grid(), cfg);
  return engine.run(u, f, F, x0, C);
}

double calibrate_cauchy_constant(const OperatorSpec& F, const Grid& g, const FlatnessConfig& cfg) {
  const int n = g.dim();
  const std::vector<std::function<double(const Point&)>> family = {
      [](const Point& x) { return std::sin(x[0] + 0.5 * x[1] + 0.25 * x[2]); },
      [n](const Point& x) { return std::exp(0.5 * (x[0] - x[n - 1])) - 1.0; },
      [](const Point& x) { return x[0] * x[0] * x[0] - 3.0 * x[0] * x[1] * x[1]; },
  };
  FlatnessConfig c = cfg;
  c.cauchy_C = 1.0;
  FlatnessEngine engine(g, c);
  const std::vector<Point> centers = {Point{}, Point{0.5, 0, 0}, Point{-0.25, n > 1 ? 0.25 : 0.0, 0}};
  double worst = 0;
  for (const auto& fn : family) {
    const GridFunction u = GridFunction::sample(g, fn);
    for (const Point& p : centers) {
      const std::size_t x0 = g.flat(g.nearest(p));
      const Point xc = g.point(x0);
      // right-hand side consistent with the discrete Taylor data at x0
      const double fx = F(hessian_at(u, x0), gradient_at(u, x0), u[x0], xc);
      const GridFunction fc(g, fx);
      const PointClassification pc = engine.run(u, fc, F, x0, 1.0);
      for (double r : pc.cauchy_ratios) worst = std::max(worst, r);
    }
  }
  return worst > 0 ? 10.0 * worst : 10.0;
}

SingularSet classify_singular_set(const GridFunction& u, const GridFunction& f, const OperatorSpec& F,
                                  const FlatnessConfig& cfg, int stride, Exec exec, bool keep_points) {
  require_same_grid(u.grid(), f.grid());
  require(stride >= 1, ErrorKind::precondition, "stride must be >= 1");
  const Grid& g = u.grid();
  SingularSet out;
  out.stride = stride;
  out.mask = Mask(g);
  out.cauchy_C = cfg.cauchy_C > 0 ? cfg.cauchy_C : calibrate_cauchy_constant(F, g, cfg);
  const FlatnessEngine engine(g, cfg);

  std::vector<std::size_t> cand;
  const int c = g.center_index();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Index m = g.multi(i);
    bool on = true;
    for (int a = 0; a < g.dim(); ++a) on = on && ((m[a] - c) % stride == 0);
    if (on && norm(g.point(i)) + cfg.r0 <= 1.0 + 1e-12) cand.push_back(i);
  }
  std::vector<PointClassification> res(cand.size());
  const bool par = exec == Exec::parallel;
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(cand.size());
#pragma omp parallel for schedule(dynamic, 16) if (par)
  for (std::ptrdiff_t k = 0; k < total; ++k) res[k] = engine.run(u, f, F, cand[k], out.cauchy_C);

  std::size_t bad = 0;
  for (const auto& pc : res) {
    if (pc.verdict == PointClassification::Verdict::undetermined) {
      out.mask.set(pc.index, true);
      ++bad;
    }
  }
  out.examined = cand.size();
  out.measure = static_cast<double>(bad) * std::pow(stride * g.spacing(), g.dim());
  if (keep_points) out.points = std::move(res);
  return out;
}

TwiceDiffResult twice_diff_test(const GridFunction& u, std::size_t x, const Point& grad, const SymMatrix& hess,
                                double eps, double r_max) {
  const Grid& g = u.grid();
  const int n = g.dim();
  const double h = g.spacing();
  const Point xc = g.point(x);
  const double top = std::min(1.0 - norm(xc), r_max);
  const double floor_r = 8.0 * h * (1 - 1e-12);
  TwiceDiffResult out;
  if (top < floor_r) return out;
  std::vector<double> radii;
  for (double r = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(top) + 1e-12))); r >= floor_r; r *= 0.5)
    radii.push_back(r);
  if (radii.empty()) return out;
  std::vector<double> sup(radii.size(), 0.0);
  const double R = 0.5 * radii.front();
  const int span = static_cast<int>(std::floor(R / h + 1e-9));
  const Index m0 = g.multi(x);
  Index lo{}, hi{};
  for (int a = 0; a < n; ++a) {
    lo[a] = std::max(0, m0[a] - span);
    hi[a] = std::min(g.resolution() - 1, m0[a] + span);
  }
  for (int i0 = lo[0]; i0 <= hi[0]; ++i0)
    for (int i1 = lo[1]; i1 <= hi[1]; ++i1)
      for (int i2 = lo[2]; i2 <= hi[2]; ++i2) {
        const std::size_t j = g.flat({i0, i1, i2});
        const Point d = g.point(j) - xc;
        const double d2 = dot(d, d);
        if (d2 > R * R + 1e-12) continue;
        const double hv = std::abs(u[j] - u[x] - dot(grad, d) - 0.5 * hess.quad(d));
        for (std::size_t l = 0; l < radii.size(); ++l) {
          const double rr = 0.5 * radii[l];
          if (d2 > rr * rr + 1e-12) break;
          sup[l] = std::max(sup[l], hv);
        }
      }
  std::vector<bool> passes(radii.size());
  for (std::size_t l = 0; l < radii.size(); ++l) {
    passes[l] = sup[l] <= 2.0 * eps * radii[l] * radii[l];
    out.levels.push_back({radii[l], sup[l] / (2.0 * radii[l] * radii[l])});
  }
  out.pass = passes.back();
  for (std::size_t l = radii.size(); l-- > 0 && passes[l];) out.r_witness = radii[l];
  return out;
}

}  // namespace slidekit

#include <cmath>
#include <sstream>

#include "slidekit/error.hpp"
#include "slidekit/experiment.hpp"

namespace slidekit {

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

double sgn(double v) { return (v > 0) - (v < 0); }

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Closed form with exact first and second derivatives.
struct Closed {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> grad;
  std::function<SymMatrix(const Point&)> hess;
};

Closed harmonic_w(const std::string& w, int n) {
  if (w == "x1x2") {
    require(n >= 2, ErrorKind::precondition, "w = x1x2 needs dim >= 2");
    return {[](const Point& x) { return x[0] * x[1]; }, [](const Point& x) { return Point{x[1], x[0], 0}; },
            [n](const Point&) {
              SymMatrix H(n);
              H.set(0, 1, 1.0);
              return H;
            }};
  }
  if (w == "x1^2-x2^2") {
    require(n >= 2, ErrorKind::precondition, "w = x1^2-x2^2 needs dim >= 2");
    return {[](const Point& x) { return x[0] * x[0] - x[1] * x[1]; },
            [](const Point& x) { return Point{2 * x[0], -2 * x[1], 0}; },
            [n](const Point&) {
              SymMatrix H(n);
              H.set(0, 0, 2.0);
              H.set(1, 1, -2.0);
              return H;
            }};
  }
  if (w == "x1") {
    return {[](const Point& x) { return x[0]; }, [](const Point&) { return Point{1, 0, 0}; },
            [n](const Point&) { return SymMatrix(n); }};
  }
  if (w == "harmonic-cubic") {
    require(n >= 2, ErrorKind::precondition, "w = harmonic-cubic needs dim >= 2");
    return {[](const Point& x) { return x[0] * x[0] * x[0] - 3 * x[0] * x[1] * x[1]; },
            [](const Point& x) { return Point{3 * x[0] * x[0] - 3 * x[1] * x[1], -6 * x[0] * x[1], 0}; },
            [n](const Point& x) {
              SymMatrix H(n);
              H.set(0, 0, 6 * x[0]);
              H.set(0, 1, -6 * x[1]);
              H.set(1, 1, -6 * x[0]);
              return H;
            }};
  }
  fail(ErrorKind::unknown_name, "unknown perturbation profile '" + w + "'");
}

}  // namespace

std::vector<std::string> generator_names() {
  return {"radial-sigma-k", "small-perturbation", "paraboloid-family", "c11-crease", "power-radial", "constant"};
}

Generated generate(const std::string& name, const std::map<std::string, double>& params, const Grid& g,
                   const std::string& op, const EllipticityParams& p,
                   const std::map<std::string, std::string>& string_params) {
  const int n = g.dim();
  Generated out;
  Closed cf;
  std::string default_op = "trace";
  auto& md = out.metadata;
  md["generator"] = name;

  if (name == "radial-sigma-k") {
    const int k = static_cast<int>(param(params, "k", 2));
    const double t = param(params, "t", 0.1);
    default_op = "sigma-k:" + std::to_string(k);
    cf = {[t](const Point& x) { return 0.5 * t * dot(x, x); }, [t](const Point& x) { return t * x; },
          [t, n](const Point&) { return SymMatrix::identity(n, t); }};
    md["u"] = "(t/2)|x|^2";
    md["f"] = "C(n,k) t^k";
    md["k"] = std::to_string(k);
    md["t"] = num(t);
    md["f_value"] = num(binomial(n, k) * std::pow(t, k));
  } else if (name == "small-perturbation") {
    const double delta = param(params, "delta", 1e-3);
    auto it = string_params.find("w");
    const std::string w = it == string_params.end() ? (n >= 2 ? "x1x2" : "x1") : it->second;
    const Closed base = harmonic_w(w, n);
    cf = {[=](const Point& x) { return delta * base.value(x); }, [=](const Point& x) { return delta * base.grad(x); },
          [=](const Point& x) { return delta * base.hess(x); }};
    md["u"] = "delta * w";
    md["w"] = w;
    md["delta"] = num(delta);
  } else if (name == "paraboloid-family") {
    const double b = param(params, "b", 2.0);
    const double c = param(params, "c", 0.0);
    const Point y{param(params, "center_x", 0), param(params, "center_y", 0), param(params, "center_z", 0)};
    Point yc{};
    for (int a = 0; a < n; ++a) yc[a] = y[a];
    cf = {[=](const Point& x) { return 0.5 * b * dist2(x, yc) + c; }, [=](const Point& x) { return b * (x - yc); },
          [=](const Point&) { return SymMatrix::identity(n, b); }};
    md["u"] = "(b/2)|x - center|^2 + c";
    md["b"] = num(b);
    md["c"] = num(c);
  } else if (name == "c11-crease") {
    const double delta = param(params, "delta", 1e-2);
    cf = {[=](const Point& x) { return delta * x[0] * std::abs(x[0]); },
          [=](const Point& x) { return Point{2 * delta * std::abs(x[0]), 0, 0}; },
          [=](const Point& x) {
            SymMatrix H(n);
            H.set(0, 0, 2 * delta * sgn(x[0]));
            return H;
          }};
    md["u"] = "delta x1|x1|";
    md["f"] = "2 delta sign(x1) (trace)";
    md["smooth_region"] = "x1 != 0";
    md["delta"] = num(delta);
  } else if (name == "power-radial") {
    const double gam = param(params, "gamma", 1.5);
    require(gam > 0, ErrorKind::precondition, "power-radial needs gamma > 0");
    cf = {[=](const Point& x) { return std::pow(norm(x), gam); },
          [=](const Point& x) {
            const double r = norm(x);
            return r > 0 ? gam * std::pow(r, gam - 2) * x : Point{};
          },
          [=](const Point& x) {
            const double r = norm(x);
            if (r == 0) return SymMatrix(n);
            const Point e = (1.0 / r) * x;
            SymMatrix H = SymMatrix::identity(n, 1.0);
            H += (gam - 2) * SymMatrix::outer(e, n);
            return gam * std::pow(r, gam - 2) * H;
          }};
    md["u"] = "|x|^gamma";
    md["smooth_region"] = "x != 0";
    md["gamma"] = num(gam);
  } else if (name == "constant") {
    const double c = param(params, "c", 1.0);
    cf = {[=](const Point&) { return c; }, [](const Point&) { return Point{}; },
          [n](const Point&) { return SymMatrix(n); }};
    md["u"] = "c";
    md["c"] = num(c);
  } else {
    fail(ErrorKind::unknown_name, "unknown generator '" + name + "'");
  }

  out.op = op.empty() ? default_op : op;
  md["operator"] = out.op;
  const OperatorSpec F = make_operator(out.op, n, p);
  std::vector<double> u(g.size()), f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    u[i] = cf.value(x);
    f[i] = F(cf.hess(x), cf.grad(x), u[i], x);
  }
  out.u = GridFunction(g, std::move(u));
  out.f = GridFunction(g, std::move(f));
  return out;
}

}  // namespace slidekit

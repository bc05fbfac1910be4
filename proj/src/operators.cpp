#include <cmath>
#include <sstream>

#include "slidekit/elliptic.hpp"
#include "slidekit/error.hpp"

namespace slidekit {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

double parse_number(const std::string& s, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::unknown_name, "malformed operator name '" + whole + "'");
}

int parse_k(const std::string& s, int n, const std::string& whole) {
  const double k = parse_number(s, whole);
  if (k != std::floor(k) || k < 1 || k > n)
    fail(ErrorKind::unknown_name, "operator '" + whole + "': k must be an integer in 1.." + std::to_string(n));
  return static_cast<int>(k);
}

}  // namespace

OperatorSpec make_operator(const std::string& name, int n, const EllipticityParams& p) {
  require(n >= 1 && n <= 3, ErrorKind::precondition, "operator dimension must be 1, 2 or 3");
  OperatorSpec F;
  F.name = name;
  F.dim = n;
  const auto parts = split(name, ':');
  if (name == "trace") {
    F.eval = [](const SymMatrix& m, const Point&, double, const Point&) { return m.trace(); };
    F.lambda = F.Lambda = 1.0;
    F.modulus = [](double) { return 0.0; };
  } else if (name == "pucci-minus" || name == "pucci-plus") {
    p.validate();
    const PucciSide side = name == "pucci-minus" ? PucciSide::minus : PucciSide::plus;
    const double l = p.lambda, L = p.Lambda;
    F.eval = [=](const SymMatrix& m, const Point&, double, const Point&) { return pucci(m, side, l, L); };
    F.lambda = l;
    F.Lambda = L;
  } else if (parts.size() == 2 && parts[0] == "sigma-k") {
    const int k = parse_k(parts[1], n, name);
    F.eval = [k](const SymMatrix& m, const Point&, double, const Point&) { return sigma_k(m, k); };
    F.lambda = k == 1 ? 1.0 : 0.0;
    F.Lambda = binom(n - 1, k - 1) * std::pow(p.rho, k - 1);
  } else if (parts.size() == 3 && parts[0] == "shifted-sigma-k") {
    const int k = parse_k(parts[1], n, name);
    const double t = parse_number(parts[2], name);
    const double base = sigma_k(SymMatrix::identity(n, t), k);
    F.eval = [k, t, n, base](const SymMatrix& m, const Point&, double, const Point&) {
      return sigma_k(m + SymMatrix::identity(n, t), k) - base;
    };
    // eigenvalues of M + tI lie in [t - rho, t + rho] when ||M|| <= rho
    const double c = binom(n - 1, k - 1);
    F.lambda = k == 1 ? 1.0 : (t > p.rho ? c * std::pow(t - p.rho, k - 1) : 0.0);
    F.Lambda = k == 1 ? 1.0 : c * std::pow(t + p.rho, k - 1);
  } else {
    fail(ErrorKind::unknown_name, "unknown operator '" + name + "'");
  }
  return F;
}

std::vector<std::string> registry_examples(int n) {
  std::vector<std::string> out{"trace", "pucci-minus", "pucci-plus"};
  for (int k = 1; k <= n; ++k) out.push_back("sigma-k:" + std::to_string(k));
  for (int k = 1; k <= n; ++k) out.push_back("shifted-sigma-k:" + std::to_string(k) + ":1");
  return out;
}

}  // namespace slidekit

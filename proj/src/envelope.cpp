#include "slidekit/envelope.hpp"

#include <cmath>
#include <limits>

#include "slidekit/error.hpp"

namespace slidekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineBuffers {
  std::vector<double> f, out, z;
  std::vector<int> v, wit;
  explicit LineBuffers(int n) : f(n), out(n), z(n + 1), v(n), wit(n) {}
};

inline double cost(double f, double c, int p, int q) {
  const double d = p - q;
  return f + c * (d * d);
}

// One-dimensional lower envelope of parabolas f[q] + c (p - q)^2.
void envelope_line(LineBuffers& b, int n, double c) {
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (!std::isfinite(b.f[q])) continue;
    if (k < 0) {
      k = 0;
      b.v[0] = q;
      b.z[0] = -kInf;
      b.z[1] = kInf;
      continue;
    }
    const double fq = b.f[q] + c * (static_cast<double>(q) * q);
    double s;
    for (;;) {
      const int r = b.v[k];
      s = (fq - (b.f[r] + c * (static_cast<double>(r) * r))) / (2.0 * c * (q - r));
      // popping on equality keeps the smaller index on ties
      if (s <= b.z[k]) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    b.v[k] = q;
    b.z[k] = s;
    b.z[k + 1] = kInf;
  }
  if (k < 0) {
    for (int p = 0; p < n; ++p) {
      b.out[p] = kInf;
      b.wit[p] = -1;
    }
    return;
  }
  const int top = k;
  k = 0;
  for (int p = 0; p < n; ++p) {
    while (k < top && b.z[k + 1] < p) ++k;
    int best = b.v[k];
    double val = cost(b.f[best], c, p, best);
    // breakpoints are rounded; re-check the neighbouring pieces exactly
    for (int kk : {k - 1, k + 1}) {
      if (kk < 0 || kk > top) continue;
      const int cand = b.v[kk];
      const double cv = cost(b.f[cand], c, p, cand);
      if (cv < val || (cv == val && cand < best)) {
        val = cv;
        best = cand;
      }
    }
    b.out[p] = val;
    b.wit[p] = best;
  }
}

void sweep_axis(const Grid& g, int axis, double c, std::vector<double>& data, std::vector<std::int32_t>* wit,
                Exec exec) {
  const int n = g.resolution();
  const std::size_t inner = g.stride(axis);
  const std::size_t lines = g.size() / static_cast<std::size_t>(n);
  const std::size_t step = inner;
  const bool par = exec == Exec::parallel;
#pragma omp parallel if (par)
  {
    LineBuffers b(n);
#pragma omp for schedule(static)
    for (std::size_t L = 0; L < lines; ++L) {
      const std::size_t base = (L / inner) * (inner * n) + (L % inner);
      for (int p = 0; p < n; ++p) b.f[p] = data[base + p * step];
      envelope_line(b, n, c);
      for (int p = 0; p < n; ++p) {
        data[base + p * step] = b.out[p];
        if (wit) (*wit)[base + p * step] = b.wit[p];
      }
    }
  }
}

}  // namespace

EnvelopeResult lower_envelope(const Grid& g, const std::vector<double>& src, double w, bool witnesses, Exec exec) {
  require(w > 0 && std::isfinite(w), ErrorKind::precondition, "envelope weight must be positive");
  require(src.size() == g.size(), ErrorKind::precondition, "source size does not match grid");
  const double h = g.spacing();
  const double c = w * h * h;
  const int dim = g.dim();
  EnvelopeResult res;
  res.value = src;
  for (auto& v : res.value)
    if (!std::isfinite(v)) v = kInf;
  std::vector<std::vector<std::int32_t>> wit(witnesses ? dim : 0);
  for (int axis = dim - 1; axis >= 0; --axis) {
    if (witnesses) wit[axis].assign(g.size(), -1);
    sweep_axis(g, axis, c, res.value, witnesses ? &wit[axis] : nullptr, exec);
  }
  if (!witnesses) return res;

  res.argmin.assign(g.size(), -1);
  const bool par = exec == Exec::parallel;
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    if (!std::isfinite(res.value[i])) continue;
    // the last pass ran along axis 0; unwind axis by axis
    Index m = g.multi(static_cast<std::size_t>(i));
    for (int axis = 0; axis < dim; ++axis) m[axis] = wit[axis][g.flat(m)];
    res.argmin[i] = static_cast<std::int64_t>(g.flat(m));
  }
  return res;
}

EnvelopeResult lower_envelope_bruteforce(const Grid& g, const std::vector<double>& src, double w,
                                         const Mask& targets, Exec exec) {
  require(w > 0, ErrorKind::precondition, "envelope weight must be positive");
  const double h = g.spacing();
  const double c = w * h * h;
  const int dim = g.dim();
  std::vector<std::size_t> sources;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::isfinite(src[j])) sources.push_back(j);
  EnvelopeResult res;
  res.value.assign(g.size(), kInf);
  res.argmin.assign(g.size(), -1);
  const bool par = exec == Exec::parallel;
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(dynamic, 64) if (par)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    if (!targets[static_cast<std::size_t>(i)]) continue;
    const Index mi = g.multi(static_cast<std::size_t>(i));
    double best = kInf;
    std::int64_t arg = -1;
    for (std::size_t j : sources) {
      const Index mj = g.multi(j);
      double val = src[j];
      for (int axis = dim - 1; axis >= 0; --axis) val = cost(val, c, mi[axis], mj[axis]);
      if (val < best) {
        best = val;
        arg = static_cast<std::int64_t>(j);
      }
    }
    res.value[i] = best;
    res.argmin[i] = arg;
  }
  return res;
}

GridFunction jensen_envelope(const GridFunction& u, double eps, Exec exec) {
  require(eps > 0, ErrorKind::precondition, "envelope parameter eps must be positive");
  const Grid& g = u.grid();
  std::vector<double> src(g.size(), kInf);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (u.domain()[i]) src[i] = u[i];
  EnvelopeResult r = lower_envelope(g, src, 1.0 / eps, false, exec);
  return GridFunction(g, std::move(r.value), u.domain());
}

}  // namespace slidekit

#include "slidekit/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "slidekit/error.hpp"

namespace slidekit {

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  require(dim >= 1 && dim <= 3, ErrorKind::precondition, "matrix dimension must be 1, 2 or 3");
}

SymMatrix SymMatrix::identity(int dim, double scale) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, scale);
  return m;
}

SymMatrix SymMatrix::outer(const Point& v, int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) m.set(i, j, v[i] * v[j]);
  return m;
}

double SymMatrix::trace() const {
  double t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Point SymMatrix::apply(const Point& x) const {
  Point y{};
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

double SymMatrix::max_abs() const {
  double m = 0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (int k = 0; k < 6; ++k) a_[k] += o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (int k = 0; k < 6; ++k) a_[k] -= o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

namespace {

Spectrum jacobi3(const SymMatrix& m) {
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double diag = a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2];
    if (off <= 1e-34 * diag || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  Spectrum s;
  s.size = 3;
  s.values = {a[0][0], a[1][1], a[2][2]};
  std::sort(s.values.begin(), s.values.end());
  return s;
}

}  // namespace

Spectrum sym_eigenvalues(const SymMatrix& m) {
  Spectrum s;
  s.size = m.dim();
  if (m.dim() == 1) {
    s.values[0] = m(0, 0);
  } else if (m.dim() == 2) {
    const double mean = 0.5 * (m(0, 0) + m(1, 1));
    const double rad = std::hypot(0.5 * (m(0, 0) - m(1, 1)), m(0, 1));
    s.values[0] = mean - rad;
    s.values[1] = mean + rad;
    // the smaller-magnitude root loses digits to cancellation; recover it from det
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
    if (mean > 0 && s.values[1] != 0.0) s.values[0] = det / s.values[1];
    else if (mean < 0 && s.values[0] != 0.0) s.values[1] = det / s.values[0];
  } else if (m.dim() == 3) {
    return jacobi3(m);
  }
  return s;
}

double spectral_norm(const SymMatrix& m) {
  const Spectrum s = sym_eigenvalues(m);
  if (s.size == 0) return 0.0;
  return std::max(std::abs(s.min()), std::abs(s.max()));
}

double determinant(const SymMatrix& m) {
  switch (m.dim()) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2)) -
             m(0, 1) * (m(0, 1) * m(2, 2) - m(1, 2) * m(0, 2)) +
             m(0, 2) * (m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2));
    default: return 1.0;
  }
}

}  // namespace slidekit

#pragma once

#include <array>
#include <cstddef>

namespace slidekit {

/// Points and vectors in R^n, n <= 3. Unused trailing components stay zero so
/// that dot products and norms need no dimension argument.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Point& a);
inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dist2(const Point& a, const Point& b) {
  const Point d = a - b;
  return dot(d, d);
}

/// Ascending eigenvalues; only the first `size` entries are meaningful.
struct Spectrum {
  std::array<double, 3> values{};
  int size = 0;
  const double* begin() const { return values.data(); }
  const double* end() const { return values.data() + size; }
  double operator[](int i) const { return values[i]; }
  double min() const { return values[0]; }
  double max() const { return values[size - 1]; }
};

/// Symmetric n x n matrix stored as its upper triangle, so symmetry is exact.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim);

  static SymMatrix identity(int dim, double scale = 1.0);
  static SymMatrix outer(const Point& v, int dim);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[slot(i, j)]; }
  void set(int i, int j, double v) { a_[slot(i, j)] = v; }
  void add(int i, int j, double v) { a_[slot(i, j)] += v; }

  double trace() const;
  Point apply(const Point& x) const;
  double quad(const Point& x) const { return dot(x, apply(x)); }
  /// Max absolute entry; cheap size test, not the norm used for ellipticity.
  double max_abs() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }
  bool operator==(const SymMatrix& o) const = default;

 private:
  static int slot(int i, int j) {
    if (i > j) { int t = i; i = j; j = t; }
    // (0,0)(0,1)(0,2)(1,1)(1,2)(2,2)
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }
  int dim_ = 0;
  std::array<double, 6> a_{};
};

/// Closed form for n <= 2, cyclic Jacobi for n = 3.
Spectrum sym_eigenvalues(const SymMatrix& m);

double spectral_norm(const SymMatrix& m);

double determinant(const SymMatrix& m);

}  // namespace slidekit

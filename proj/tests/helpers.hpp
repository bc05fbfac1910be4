#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "slidekit/sym_matrix.hpp"

namespace testing_util {

using slidekit::Point;
using slidekit::SymMatrix;

inline SymMatrix random_sym(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> U(-scale, scale);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, U(rng));
  return m;
}

inline Point random_point(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> U(-scale, scale);
  Point p{};
  for (int i = 0; i < n; ++i) p[i] = U(rng);
  return p;
}

inline Eigen::MatrixXd to_eigen(const SymMatrix& m) {
  Eigen::MatrixXd e(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

inline SymMatrix from_eigen(const Eigen::MatrixXd& e) {
  SymMatrix m(static_cast<int>(e.rows()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = i; j < e.cols(); ++j) m.set(i, j, 0.5 * (e(i, j) + e(j, i)));
  return m;
}

// Haar-ish random rotation from the QR of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N01;
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = N01(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1;
  return Q;
}

inline Eigen::VectorXd eigen_spectrum(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
  return es.eigenvalues();
}

}  // namespace testing_util

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "qwalk/spectral.hpp"

// shared helpers for the unit and acceptance suites

inline double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Haar-ish random unitary via QR of a complex Gaussian matrix
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// remix the eigenvectors inside every spectral class by a random unitary;
// any quantity defined through class projectors must not move
inline qwalk::eigen_system remix_degenerate_basis(const qwalk::eigen_system& e,
                                                  const qwalk::spectral_classes& cls,
                                                  std::mt19937& rng) {
  qwalk::eigen_system out = e;
  for (const auto& c : cls.classes) {
    const int m = c.multiplicity();
    if (m < 2) continue;
    Eigen::MatrixXcd block(e.order, m);
    for (int i = 0; i < m; ++i) block.col(i) = e.vectors.col(c.members[i]);
    block = block * random_unitary(m, rng);
    for (int i = 0; i < m; ++i) out.vectors.col(c.members[i]) = block.col(i);
  }
  return out;
}

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

inline constexpr double eps_orth = 1e-10;  // eigenvector orthonormality slack
inline constexpr double eps_eig = 1e-9;    // eigenvalue residual slack

enum class spectrum_source {
  analytic_circulant,
  analytic_path,
  join_composite,
  cartesian_composite,
  dense_numeric,
};

/// Full eigendecomposition A = V diag(values) V^dagger with column j of
/// `vectors` paired to values[j].  `degenerate_pairs` lists index pairs whose
/// eigenvalues coincide for structural reasons (circulant lambda_j =
/// lambda_{n-j}, lifted through join/cartesian composition), so downstream
/// grouping never depends on floating-point luck.
struct eigen_system {
  spectrum_source source = spectrum_source::dense_numeric;
  int order = 0;
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  std::vector<std::pair<int, int>> degenerate_pairs;

  double spectral_radius() const {
    return order > 0 ? values.cwiseAbs().maxCoeff() : 0.0;
  }
};

/// lambda_j = sum_{k in S, k < n-k} 2 cos(2 pi j k / n)  (+ (-1)^j when
/// n even and n/2 in S), eigenvector F_j[x] = n^{-1/2} e^{2 pi i j x / n}.
/// Phase angles are reduced with integer arithmetic (j*x mod n) so large
/// products lose no precision.
eigen_system circulant_spectrum(const graph& g);

/// lambda_j = 2 cos(j pi / (m+1)), Q_j[x] = sqrt(2/(m+1)) sin(j x pi/(m+1)),
/// j, x = 1..m.  Always simple.
eigen_system path_spectrum(int m);

/// Scalars of the join construction G + H with |G| = n_g, |H| = n_h and
/// regular degrees k, l: delta = (k-l)^2 + 4 n_g n_h, lambda_pm the roots of
/// lambda^2 - (k+l) lambda - (n_g n_h - k l) = 0 (lambda_- via Vieta for
/// stability), beta_pm = (lambda_pm - k)/n_h, norm_pm = sqrt(n_g + n_h beta^2).
struct join_spectral_data {
  double degree_g = 0, degree_h = 0;
  double delta = 0;
  double lambda_plus = 0, lambda_minus = 0;
  double beta_plus = 0, beta_minus = 0;
  double norm_plus = 0, norm_minus = 0;
};

join_spectral_data join_scalars(int order_g, int degree_g, int order_h, int degree_h);

/// Analytic eigenbasis of the join of two circulants: nonprincipal Fourier
/// vectors of each side (zero-padded on the other side) keep their
/// eigenvalues; the two principal directions mix into z_pm, constant on each
/// side, with eigenvalues lambda_pm.
eigen_system join_spectrum(const graph& g, const graph& h);

/// Tensor composition: eigenvalues mu_j + nu_k, eigenvectors kron(u_j, w_k),
/// vertex (u,v) at index u*|right| + v.
eigen_system cartesian_spectrum(const eigen_system& a, const eigen_system& b);

/// Numeric fallback via a self-adjoint solve; `a` must be symmetric.
eigen_system dense_spectrum(const Eigen::MatrixXd& a);

/// Dispatch to the sharpest available route: analytic for circulants, paths,
/// joins of circulants and cartesian factors; dense otherwise.
eigen_system spectrum_of(const graph& g, int size_cap = default_size_cap);

struct spectral_class {
  double representative = 0;  // mean of member eigenvalues
  std::vector<int> members;   // indices into eigen_system columns

  int multiplicity() const { return static_cast<int>(members.size()); }
};

struct spectral_classes {
  std::vector<spectral_class> classes;  // descending by representative
  double tolerance = 0;
  bool tolerance_warning = false;  // a class spread exceeded tolerance/2

  int total() const;
  int max_multiplicity() const;  // mu
  int type() const { return static_cast<int>(classes.size()); }  // tau
};

/// 1e-9 scaled by max(1, spectral radius).
double default_class_tolerance(const eigen_system& e);

/// Single-linkage clustering of eigenvalues with gap threshold `tol`, then
/// union with the structurally forced degenerate pairs.  Linked values more
/// than tol/2 apart raise the tolerance warning.
spectral_classes group_eigenvalues(const eigen_system& e, double tol);

spectral_classes classes_of(const eigen_system& e);

struct eigen_system_check {
  double max_orthonormality_dev = 0;  // |V^dagger V - I|_max
  double max_completeness_dev = 0;    // |V V^dagger - I|_max
  double max_residual = 0;            // max_j |A v_j - lambda_j v_j|_inf
};

/// Verify the decomposition against eps_orth / eps_eig; residuals only when
/// an adjacency matrix is supplied.
eigen_system_check check_eigen_system(const eigen_system& e,
                                      const Eigen::MatrixXd* a = nullptr);

}  // namespace qwalk

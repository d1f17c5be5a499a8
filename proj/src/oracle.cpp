#include "qwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace qwalk {

namespace {

using cd = std::complex<double>;

// smallest separation between distinct raw eigenvalues; 0 if all coincide
double raw_gap(const Eigen::VectorXd& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  const double scale = std::max(1.0, std::abs(v.front()) + std::abs(v.back()));
  const double dust = 1e-12 * scale;
  double gap = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double d = v[i + 1] - v[i];
    if (d > dust && (gap == 0 || d < gap)) gap = d;
  }
  return gap;
}

// (1/T) int_0^T e^{-i t d} dt
cd phi(double d, double horizon) {
  const double x = horizon * d;
  if (x == 0.0) return 1.0;
  return (1.0 - std::exp(cd(0.0, -x))) / cd(0.0, x);
}

}  // namespace

oracle_report finite_time_average(const eigen_system& e, int start, double horizon) {
  if (start < 0 || start >= e.order) throw error("oracle start vertex out of range");
  if (horizon <= 0) throw error("oracle horizon must be positive");
  const int n = e.order;

  // a(x, j) = V(x,j) conj(V(start,j));  p̄_x(T) = Re (A Phi A^dagger)_{xx}
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j) a.col(j) = e.vectors.col(j) * std::conj(e.vectors(start, j));
  Eigen::MatrixXcd phi_mat(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) phi_mat(j, k) = phi(e.values[j] - e.values[k], horizon);
  Eigen::MatrixXcd b = a * phi_mat;

  oracle_report r;
  r.method = oracle_method::finite_time_analytic;
  r.horizon = horizon;
  r.start = start;
  r.gap = raw_gap(e.values);
  r.distribution.resize(n);
  for (int x = 0; x < n; ++x) {
    double p = b.row(x).dot(a.row(x)).real();  // dot conjugates the left factor
    r.distribution[x] = std::max(p, 0.0);
  }
  r.max_unitarity_dev = std::abs(r.distribution.sum() - 1.0);
  return r;
}

oracle_report quadrature_average(const Eigen::MatrixXd& a, int start, double horizon,
                                 long samples) {
  const int n = static_cast<int>(a.rows());
  if (start < 0 || start >= n) throw error("oracle start vertex out of range");
  if (horizon <= 0) throw error("oracle horizon must be positive");

  // independent decomposition: nothing shared with the analytic spectra
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw error("oracle eigensolve failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double rho = values.cwiseAbs().maxCoeff();

  if (samples == 0)
    samples = std::max<long>(16, static_cast<long>(
        std::ceil(16.0 * horizon * rho / std::numbers::pi)));
  const double min_samples = 10.0 * horizon * rho / (2.0 * std::numbers::pi);
  if (static_cast<double>(samples) < min_samples)
    throw undersampled_error(
        "quadrature undersampled: " + std::to_string(samples) + " samples < " +
        std::to_string(static_cast<long>(std::ceil(min_samples))) +
        " required for horizon " + std::to_string(horizon) + ", spectral radius " +
        std::to_string(rho));

  const double h = horizon / static_cast<double>(samples);
  const Eigen::VectorXd coef = vectors.row(start).transpose();  // real basis
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  Eigen::VectorXcd rotated(n);
  double max_unit_dev = 0;
  for (long i = 0; i <= samples; ++i) {
    const double t = h * static_cast<double>(i);
    for (int j = 0; j < n; ++j) rotated[j] = std::polar(coef[j], -t * values[j]);
    Eigen::VectorXd p = (vectors * rotated).cwiseAbs2();
    max_unit_dev = std::max(max_unit_dev, std::abs(p.sum() - 1.0));
    const double w = (i == 0 || i == samples) ? 0.5 : 1.0;  // trapezoid ends
    acc += w * p;
  }
  oracle_report r;
  r.method = oracle_method::quadrature;
  r.horizon = horizon;
  r.samples = samples;
  r.start = start;
  r.distribution = acc / static_cast<double>(samples);
  r.gap = raw_gap(values);
  r.quadrature_error = (h * rho) * (h * rho) / 3.0;
  r.max_unitarity_dev = max_unit_dev;
  return r;
}

compare_verdict compare(const average_distribution& reference,
                        const oracle_report& report, double c) {
  if (reference.probs.size() != report.distribution.size())
    throw error("compare: distribution sizes differ");
  compare_verdict v;
  v.max_abs_dev = (reference.probs - report.distribution).cwiseAbs().maxCoeff();
  const double cesaro =
      report.gap > 0 ? c / (report.horizon * report.gap) : 0.0;
  v.tolerance = cesaro + report.quadrature_error + 1e-12;
  v.pass = v.max_abs_dev <= v.tolerance;
  return v;
}

double default_oracle_horizon(const eigen_system& e) {
  const double gap = raw_gap(e.values);
  if (gap <= 0) return 1e2;
  return std::clamp(1e4 / gap, 1e2, 1e7);
}

}  // namespace qwalk

#pragma once

#include <Eigen/Dense>

#include "qwalk/mixing.hpp"

namespace qwalk {

enum class oracle_method { finite_time_analytic, quadrature };

struct oracle_report {
  oracle_method method = oracle_method::finite_time_analytic;
  double horizon = 0;
  long samples = 0;  // quadrature only
  int start = 0;
  Eigen::VectorXd distribution;
  double gap = 0;                // smallest nonzero eigenvalue separation
  double quadrature_error = 0;   // (h*rho)^2/3 trapezoid estimate, 0 for analytic
  double max_unitarity_dev = 0;  // worst |sum p(t) - 1| along the trajectory
};

/// Exact finite-horizon average (1/T) int_0^T p_x(t) dt evaluated in closed
/// form: p̄_x(T) = sum_{j,k} a_j(x) conj(a_k(x)) phi(lambda_j - lambda_k) with
/// phi(d) = (1 - e^{-iTd})/(iTd), phi(0) = 1.  Differs from the T -> inf
/// limit by at most 2/(T*gap) per entry.
oracle_report finite_time_average(const eigen_system& e, int start, double horizon);

/// Blind time-domain check: its own dense eigensolve of `a`, then a trapezoid
/// rule over [0, T].  samples == 0 picks 16 points per pi/rho period
/// (ceil(16*T*rho/pi)); anything below 10*T*rho/(2 pi) is refused as
/// undersampled.  Fixed accumulation order keeps reruns bit-identical.
oracle_report quadrature_average(const Eigen::MatrixXd& a, int start, double horizon,
                                 long samples = 0);

struct compare_verdict {
  double max_abs_dev = 0;
  double tolerance = 0;
  bool pass = false;
};

/// Agreement test between a limiting distribution and a finite-horizon oracle
/// run, with tolerance c/(T*gap) plus the oracle's own quadrature error.
compare_verdict compare(const average_distribution& reference,
                        const oracle_report& report, double c = 4.0);

/// Horizon with Cesaro error ~1e-4: 1e4/gap, clamped to [1e2, 1e7].
double default_oracle_horizon(const eigen_system& e);

}  // namespace qwalk

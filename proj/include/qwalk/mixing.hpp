#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "qwalk/spectral.hpp"

namespace qwalk {

// negative probability dust below this magnitude is clamped to zero
inline constexpr double probability_dust = 1e-12;

struct walk_state {
  Eigen::VectorXcd amplitudes;
  double time = 0;
  int start = 0;
};

enum class provenance { projector, closed_form, oracle };

struct average_distribution {
  Eigen::VectorXd probs;
  provenance source = provenance::projector;
  int start = 0;
  double horizon = 0;  // only meaningful for oracle-produced distributions

  double max_prob() const { return probs.maxCoeff(); }
};

/// psi(t) = e^{-itA} e_start expanded in the eigenbasis.
walk_state amplitude_at(const eigen_system& e, int start, double t);

/// |psi_j(t)|^2.
Eigen::VectorXd instantaneous_distribution(const eigen_system& e, int start, double t);

/// Large-time average p̄_x = sum_classes |<x| E_lambda |start>|^2; the Cesaro
/// limit of p(t), since cross terms between distinct eigenvalues average out.
average_distribution average_distribution_of(const eigen_system& e,
                                             const spectral_classes& c, int start);

struct deviation_bound_result {
  double class_sum = 0;  // (1/n^2) sum_lambda m(lambda)(m(lambda)-1)
  double outer = 0;      // mu(mu-1)/n
};

/// Uniform bound max_x |p̄_x - 1/n| <= class_sum <= outer; the class_sum form
/// is attained with equality at the start vertex of any circulant.
deviation_bound_result deviation_bound(const spectral_classes& c);

/// |V| * max_x p̄_x; 1 for perfectly uniform averages.
double mixing_ratio(const average_distribution& d);

struct growth_row {
  int parameter = 0;  // family parameter fed to the generator
  int order = 0;
  double max_prob = 0;
  double ratio = 0;
};

struct growth_report {
  std::vector<growth_row> rows;
  double threshold = 4.0;
  bool bounded = true;              // every ratio <= threshold
  bool monotone_increasing = true;  // ratios strictly increase along the sweep
};

/// Evaluate the mixing ratio of family(n) across `parameters` (at least 3
/// values) and classify: bounded ratios indicate average uniform mixing up to
/// a constant, unbounded growth rules it out.
growth_report classify_family(const std::function<graph(int)>& family,
                              std::span<const int> parameters,
                              double threshold = 4.0, int start = 0,
                              int size_cap = default_size_cap);

}  // namespace qwalk

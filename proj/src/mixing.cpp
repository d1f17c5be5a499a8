#include "qwalk/mixing.hpp"

#include <cmath>
#include <complex>

namespace qwalk {

namespace {

void check_start(const eigen_system& e, int start) {
  if (start < 0 || start >= e.order)
    throw error("start vertex " + std::to_string(start) +
                " out of range for order " + std::to_string(e.order));
}

}  // namespace

walk_state amplitude_at(const eigen_system& e, int start, double t) {
  check_start(e, start);
  // coefficients of e_start in the eigenbasis, rotated by e^{-it lambda}
  Eigen::VectorXcd coef(e.order);
  for (int j = 0; j < e.order; ++j)
    coef[j] = std::polar(1.0, -t * e.values[j]) * std::conj(e.vectors(start, j));
  walk_state s;
  s.amplitudes = e.vectors * coef;
  s.time = t;
  s.start = start;
  return s;
}

Eigen::VectorXd instantaneous_distribution(const eigen_system& e, int start, double t) {
  return amplitude_at(e, start, t).amplitudes.cwiseAbs2();
}

average_distribution average_distribution_of(const eigen_system& e,
                                             const spectral_classes& c, int start) {
  check_start(e, start);
  average_distribution d;
  d.start = start;
  d.probs = Eigen::VectorXd::Zero(e.order);
  Eigen::VectorXcd overlap(e.order);
  for (const auto& cls : c.classes) {
    // overlap = E_lambda e_start, the projection of the start vertex
    overlap.setZero();
    for (int j : cls.members)
      overlap += e.vectors.col(j) * std::conj(e.vectors(start, j));
    d.probs += overlap.cwiseAbs2();
  }
  for (int x = 0; x < e.order; ++x)
    if (d.probs[x] < 0 && d.probs[x] > -probability_dust) d.probs[x] = 0;
  return d;
}

deviation_bound_result deviation_bound(const spectral_classes& c) {
  const double n = c.total();
  deviation_bound_result r;
  for (const auto& cls : c.classes) {
    const double m = cls.multiplicity();
    r.class_sum += m * (m - 1);
  }
  r.class_sum /= n * n;
  const double mu = c.max_multiplicity();
  r.outer = mu * (mu - 1) / n;
  return r;
}

double mixing_ratio(const average_distribution& d) {
  return static_cast<double>(d.probs.size()) * d.max_prob();
}

growth_report classify_family(const std::function<graph(int)>& family,
                              std::span<const int> parameters, double threshold,
                              int start, int size_cap) {
  if (parameters.size() < 3)
    throw error("classify_family needs at least 3 parameter values");
  growth_report rep;
  rep.threshold = threshold;
  double prev = -1;
  for (int p : parameters) {
    graph g = family(p);
    eigen_system e = spectrum_of(g, size_cap);
    average_distribution d = average_distribution_of(e, classes_of(e), start);
    growth_row row;
    row.parameter = p;
    row.order = g.order();
    row.max_prob = d.max_prob();
    row.ratio = mixing_ratio(d);
    if (row.ratio > threshold) rep.bounded = false;
    if (!rep.rows.empty() && row.ratio <= prev) rep.monotone_increasing = false;
    prev = row.ratio;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace qwalk

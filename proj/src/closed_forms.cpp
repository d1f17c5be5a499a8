#include "qwalk/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qwalk {

average_distribution join_mix_result::as_distribution() const {
  average_distribution d;
  d.source = provenance::closed_form;
  d.start = start;
  d.probs.resize(order_g + order_h);
  d.probs.head(order_g) = probs_on_g;
  d.probs.tail(order_h).setConstant(prob_per_h_vertex);
  return d;
}

join_mix_result join_average(const graph& g, const average_distribution& avg_g,
                             const graph& h, int start, double class_tol) {
  auto* cg = g.as_circulant();
  auto* ch = h.as_circulant();
  if (!cg || !ch)
    throw unsupported_structure_error("join_average: both parts must be circulant");
  const int ng = g.order(), nh = h.order();
  if (avg_g.probs.size() != ng)
    throw error("join_average: distribution size does not match |G|");
  if (start < 0 || start >= ng)
    throw error("join_average: start must be a G vertex");

  eigen_system sg = circulant_spectrum(g);
  eigen_system sh = circulant_spectrum(h);
  join_mix_result r;
  r.data = join_scalars(ng, cg->conn.degree(), nh, ch->conn.degree());
  r.order_g = ng;
  r.order_h = nh;
  r.start = start;

  const double scale = std::max({1.0, sg.spectral_radius(), sh.spectral_radius(),
                                 std::abs(r.data.lambda_plus)});
  const double tol = class_tol > 0 ? class_tol : 1e-9 * scale;
  auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  for (int a = 1; a < ng; ++a) {
    if (near(sg.values[a], r.data.lambda_minus)) r.pre.minus_clear_of_g = false;
    if (near(sg.values[a], r.data.lambda_plus)) r.pre.plus_clear_of_g = false;
    if (near(sg.values[a], r.data.degree_g)) r.pre.top_simple_in_g = false;
  }
  for (int b = 1; b < nh; ++b) {
    if (near(sh.values[b], r.data.lambda_minus)) r.pre.minus_clear_of_h = false;
    if (near(sh.values[b], r.data.lambda_plus)) r.pre.plus_clear_of_h = false;
  }
  for (int a = 1; a < ng && r.pre.no_cross_collision; ++a)
    for (int b = 1; b < nh; ++b)
      if (near(sg.values[a], sh.values[b])) {
        r.pre.no_cross_collision = false;
        break;
      }

  r.applicable = r.pre.formula_exact();
  r.prob_per_h_vertex = 2.0 / r.data.delta;
  if (r.applicable) {
    // the trivial-mode class of G loses 1/|G|^2 and regains the z_pm share
    const double correction = 2.0 * nh / (ng * r.data.delta);
    r.probs_on_g = (avg_g.probs.array() - correction).matrix();
  }
  return r;
}

cone_result cone_average(const graph& base, double class_tol) {
  graph apex = graph::circulant(1, {});
  average_distribution point;
  point.probs = Eigen::VectorXd::Ones(1);
  point.start = 0;
  cone_result r;
  r.join = join_average(apex, point, base, 0, class_tol);
  r.apex_prob = r.join.probs_on_g[0];
  r.base_vertex_prob = r.join.prob_per_h_vertex;
  return r;
}

average_distribution complete_graph_average(int n) {
  if (n < 2) throw error("complete_graph_average requires n >= 2");
  average_distribution d;
  d.source = provenance::closed_form;
  d.start = 0;
  const double nn = static_cast<double>(n) * n;
  d.probs = Eigen::VectorXd::Constant(n, 2.0 / nn);
  d.probs[0] = 1.0 - 2.0 * (n - 1) / nn;
  return d;
}

homogeneous_join_spectrum_result homogeneous_join_spectrum(const graph& g, int copies,
                                                           double class_tol) {
  auto* c = g.as_circulant();
  if (!c) throw unsupported_structure_error("homogeneous_join_spectrum: base not circulant");
  if (copies < 2) throw error("homogeneous_join_spectrum requires >= 2 copies");
  const int n = g.order();
  const int m = copies;
  const double lam0 = c->conn.degree();

  homogeneous_join_spectrum_result r;
  r.applicable = static_cast<double>(n) > 2.0 * lam0;
  r.top = lam0 + static_cast<double>(m - 1) * n;
  r.isolated = lam0 - static_cast<double>(n);

  eigen_system sg = circulant_spectrum(g);
  std::vector<double> rest(sg.values.data() + 1, sg.values.data() + n);
  std::sort(rest.begin(), rest.end());
  const double tol = class_tol > 0 ? class_tol : 1e-9 * std::max(1.0, sg.spectral_radius());
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i + 1;
    while (j < rest.size() && rest[j] - rest[j - 1] <= tol) ++j;
    double mean = 0;
    for (std::size_t t = i; t < j; ++t) mean += rest[t];
    mean /= static_cast<double>(j - i);
    r.interior.emplace_back(mean, m * static_cast<int>(j - i));
    i = j;
  }

  r.separation_ok = true;
  for (auto [v, mult] : r.interior)
    if (!(r.isolated < v && v < r.top)) r.separation_ok = false;
  return r;
}

multipartite_result multipartite_average(int parts, int part_size, int size_cap) {
  if (parts < 2) throw error("multipartite_average requires >= 2 parts");
  graph part = graph::circulant(part_size, {});
  graph g = part;
  for (int i = 1; i < parts; ++i) g = graph::join(std::move(g), part);
  eigen_system e = spectrum_of(g, size_cap);
  multipartite_result r;
  r.dist = average_distribution_of(e, classes_of(e), 0);
  r.ratio = mixing_ratio(r.dist);
  return r;
}

prism_result prism_average(const graph& base, double class_tol) {
  if (!base.as_circulant())
    throw unsupported_structure_error("prism_average: base must be circulant");
  eigen_system sg = circulant_spectrum(base);
  spectral_classes cls =
      class_tol > 0 ? group_eigenvalues(sg, class_tol) : classes_of(sg);
  const double tol = cls.tolerance;

  prism_result r;
  // deck factor averages to cos^2(t); a +-2 eigenvalue gap beats the average
  for (const auto& ci : cls.classes)
    for (const auto& cj : cls.classes)
      if (std::abs(ci.representative - cj.representative - 2.0) <= tol)
        r.resonant_pairs.emplace_back(ci.representative, cj.representative);
  r.applicable = r.resonant_pairs.empty();

  average_distribution pbar = average_distribution_of(sg, cls, 0);
  const int n = base.order();
  r.dist.source = provenance::closed_form;
  r.dist.start = 0;
  r.dist.probs.resize(2 * n);
  r.dist.probs.head(n) = 0.5 * pbar.probs;
  r.dist.probs.tail(n) = 0.5 * pbar.probs;
  return r;
}

path_average_result path_average(int m) {
  if (m < 1) throw error("path_average requires m >= 1");
  const double denom = m + 1;
  path_average_result r;
  r.dist.source = provenance::closed_form;
  r.dist.start = 0;
  r.dist.probs = Eigen::VectorXd::Zero(m);
  // p̄_x = sum_j |Q_j(1)|^2 |Q_j(x)|^2, all eigenvalues simple
  for (int x = 1; x <= m; ++x) {
    double p = 0;
    for (int j = 1; j <= m; ++j) {
      double a = std::sin(j * std::numbers::pi / denom);
      double b = std::sin(j * x * std::numbers::pi / denom);
      p += (a * a) * (b * b);
    }
    r.dist.probs[x - 1] = p * 4.0 / (denom * denom);
  }
  r.max_prob = r.dist.max_prob();
  r.bound = 2.0 / denom + 4.0 / (denom * denom);
  return r;
}

cylinder_result cylinder_average(int m, const graph& base, int size_cap) {
  if (!base.as_circulant())
    throw unsupported_structure_error("cylinder_average: base must be circulant");
  if (m < 1) throw error("cylinder_average requires m >= 1");
  if (m * base.order() > size_cap)
    throw size_cap_error("cylinder order exceeds size cap");
  eigen_system e = cartesian_spectrum(path_spectrum(m), circulant_spectrum(base));
  cylinder_result r;
  r.dist = average_distribution_of(e, classes_of(e), 0);
  r.ratio = mixing_ratio(r.dist);
  return r;
}

}  // namespace qwalk

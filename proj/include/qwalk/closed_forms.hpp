#pragma once

#include "qwalk/mixing.hpp"

namespace qwalk {

/// Spectral collision checks for the join formula.  Only the start-relevant
/// subset gates applicability (vectors supported on H are orthogonal to a
/// start vertex in G, so H-side and cross collisions cannot perturb the
/// projections); the rest are reported for diagnostics.
struct join_preconditions {
  bool minus_clear_of_g = true;    // lambda_- vs Sp(G) \ {k}
  bool plus_clear_of_g = true;     // lambda_+ vs Sp(G) \ {k}
  bool minus_clear_of_h = true;    // lambda_- vs Sp(H) \ {l}
  bool plus_clear_of_h = true;     // lambda_+ vs Sp(H) \ {l}
  bool no_cross_collision = true;  // Sp(G) \ {k} vs Sp(H) \ {l}
  bool top_simple_in_g = true;     // k simple, i.e. G connected

  bool formula_exact() const {
    return minus_clear_of_g && plus_clear_of_g && top_simple_in_g;
  }
  bool all_clear() const {
    return formula_exact() && minus_clear_of_h && plus_clear_of_h &&
           no_cross_collision;
  }
};

/// Average distribution of G + H from a start vertex in G:
///   p̄_x = p̄_x(G) - 2|H| / (|G| delta)   for x in G,
///   p̄_y = 2 / delta                      for y in H.
struct join_mix_result {
  join_spectral_data data;
  join_preconditions pre;
  bool applicable = false;  // pre.formula_exact()
  int order_g = 0, order_h = 0;
  int start = 0;  // index within G
  Eigen::VectorXd probs_on_g;   // per G vertex (empty when not applicable)
  double prob_per_h_vertex = 0; // 2/delta

  average_distribution as_distribution() const;
};

join_mix_result join_average(const graph& g, const average_distribution& avg_g,
                             const graph& h, int start, double class_tol = 0);

/// Cone K1 + C over a circulant base: apex retains 1 - 2|C|/delta >= 1/2 of
/// the average probability, each base vertex gets 2/delta.
struct cone_result {
  join_mix_result join;
  double apex_prob = 0;
  double base_vertex_prob = 0;
};

cone_result cone_average(const graph& base, double class_tol = 0);

/// K_n = K_1 + K_{n-1} (degree l = n-2, delta = n^2): start keeps
/// 1 - 2(n-1)/n^2, everyone else 2/n^2.  Average uniform mixing fails by a
/// factor ~ n at the start vertex.
average_distribution complete_graph_average(int n);

/// Spectrum of the m-fold join of a circulant G with itself (n = |G|,
/// lambda_0 = degree), under the gap hypothesis n > 2 lambda_0:
/// top lambda_0 + (m-1)n simple, lambda_0 - n with multiplicity m-1, and each
/// nonprincipal Fourier eigenvalue of G repeated m times in between.
struct homogeneous_join_spectrum_result {
  bool applicable = false;  // n > 2 lambda_0
  double top = 0;
  double isolated = 0;
  std::vector<std::pair<double, int>> interior;  // (value, multiplicity)
  bool separation_ok = false;  // isolated < interior < top, strictly
};

homogeneous_join_spectrum_result homogeneous_join_spectrum(const graph& g, int copies,
                                                           double class_tol = 0);

/// Complete multipartite K_{n,...,n} (m parts) via the projector engine.
struct multipartite_result {
  average_distribution dist;
  double ratio = 0;
};

multipartite_result multipartite_average(int parts, int part_size,
                                         int size_cap = default_size_cap);

/// Prism P2 x C: when no two base eigenvalues differ by exactly 2, the
/// average distribution is the base one at half weight on both decks.  A
/// +-2 gap resonates with the cos^2 deck factor and breaks the halving.
struct prism_result {
  bool applicable = false;
  std::vector<std::pair<double, double>> resonant_pairs;  // offending values
  average_distribution dist;  // valid when applicable
};

prism_result prism_average(const graph& base, double class_tol = 0);

/// Path from an end vertex: all eigenvalues simple, p̄ explicit in sin^2
/// overlaps, and max_x p̄_x <= 2/(m+1) + 4/(m+1)^2.
struct path_average_result {
  average_distribution dist;
  double bound = 0;
  double max_prob = 0;
};

path_average_result path_average(int m);

/// Cylinder P_m x C through the analytic product spectrum and the projector
/// engine; reports the mixing ratio (bounded for bounded-multiplicity bases).
struct cylinder_result {
  average_distribution dist;
  double ratio = 0;
};

cylinder_result cylinder_average(int m, const graph& base,
                                 int size_cap = default_size_cap);

}  // namespace qwalk

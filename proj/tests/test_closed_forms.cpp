#include <cmath>

#include "doctest.h"
#include "qwalk/closed_forms.hpp"
#include "test_util.hpp"

using namespace qwalk;

namespace {

average_distribution engine(const graph& g, int start = 0) {
  eigen_system e = spectrum_of(g);
  return average_distribution_of(e, classes_of(e), start);
}

average_distribution circulant_avg(const graph& g, int start = 0) {
  eigen_system e = circulant_spectrum(g);
  return average_distribution_of(e, classes_of(e), start);
}

}  // namespace

TEST_CASE("join formula equals the projector engine when preconditions hold") {
  graph g = graph::circulant(5, {1});
  graph h = graph::circulant(4, {1});
  join_mix_result r = join_average(g, circulant_avg(g), h, 0);
  REQUIRE(r.applicable);
  CHECK(r.pre.formula_exact());
  average_distribution formula = r.as_distribution();
  CHECK(std::abs(formula.probs.sum() - 1.0) < 1e-12);
  CHECK(max_abs_diff(formula.probs, engine(graph::join(g, h)).probs) < 1e-12);

  // same composite from a vertex of the other side
  join_mix_result swapped = join_average(h, circulant_avg(h, 1), g, 1);
  REQUIRE(swapped.applicable);
  average_distribution sw = swapped.as_distribution();
  average_distribution ref = engine(graph::join(h, g), 1);
  CHECK(max_abs_diff(sw.probs, ref.probs) < 1e-12);
}

TEST_CASE("join formula refuses starts whose projections it cannot see") {
  SUBCASE("lambda_- inside Sp(G): C4 + empty pair") {
    graph g = graph::circulant(4, {1});
    graph h = graph::circulant(2, {});
    join_mix_result r = join_average(g, circulant_avg(g), h, 0);
    CHECK(!r.applicable);
    CHECK(!r.pre.minus_clear_of_g);  // lambda_- = -2 is a C4 eigenvalue
    CHECK(r.probs_on_g.size() == 0);
    // the engine knows the true answer; the formula would have been wrong
    average_distribution ref = engine(graph::join(g, h));
    CHECK(ref.probs[0] == doctest::Approx(0.3888888889).epsilon(1e-8));
  }
  SUBCASE("lambda_- inside Sp(G): K2 + K1") {
    graph g = graph::circulant(2, {1});
    join_mix_result r = join_average(g, circulant_avg(g), graph::circulant(1, {}), 0);
    CHECK(!r.applicable);
    CHECK(!r.pre.minus_clear_of_g);  // lambda_- = -1 is the second K2 eigenvalue
    CHECK(engine(graph::join(g, graph::circulant(1, {}))).probs[0] ==
          doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  }
  SUBCASE("disconnected G: degree eigenvalue not simple") {
    graph g = graph::circulant(2, {});
    join_mix_result r = join_average(g, circulant_avg(g), graph::circulant(3, {1}), 0);
    CHECK(!r.applicable);
    CHECK(!r.pre.top_simple_in_g);
  }
  SUBCASE("H-side collision alone is harmless") {
    // K1 + K3: lambda_- = -1 lies in Sp(K3), yet the formula is exact
    graph apex = graph::circulant(1, {});
    graph k3 = graph::circulant(3, {1, 2});
    average_distribution point;
    point.probs = Eigen::VectorXd::Ones(1);
    join_mix_result r = join_average(apex, point, k3, 0);
    REQUIRE(r.applicable);
    CHECK(!r.pre.minus_clear_of_h);
    CHECK(r.probs_on_g[0] == doctest::Approx(0.625));
    CHECK(r.prob_per_h_vertex == doctest::Approx(0.125));
    CHECK(max_abs_diff(r.as_distribution().probs,
                       engine(graph::join(apex, k3)).probs) < 1e-12);
  }
}

TEST_CASE("cone retains a constant fraction at the apex") {
  SUBCASE("wheel over C8") {
    cone_result r = cone_average(graph::circulant(8, {1}));
    CHECK(r.apex_prob == doctest::Approx(5.0 / 9.0));  // 1 - 16/36
    CHECK(r.base_vertex_prob == doctest::Approx(1.0 / 18.0));
    CHECK(max_abs_diff(
              r.join.as_distribution().probs,
              engine(graph::join(graph::circulant(1, {}), graph::circulant(8, {1})))
                  .probs) < 1e-12);
  }
  SUBCASE("star: apex probability exactly 1/2") {
    cone_result r = cone_average(graph::circulant(3, {}));
    CHECK(r.apex_prob == doctest::Approx(0.5));
    CHECK(r.base_vertex_prob == doctest::Approx(1.0 / 6.0));
  }
  SUBCASE("denser bases push the apex toward 1, never below 1/2") {
    double prev = 0;
    for (int n : {3, 5, 9, 13}) {
      std::vector<int> gens;
      for (int d = 1; d < n; ++d) gens.push_back(d);  // complete base
      cone_result r = cone_average(graph::circulant(n, gens));
      CHECK(r.apex_prob >= 0.5);
      CHECK(r.apex_prob > prev);
      prev = r.apex_prob;
    }
    CHECK(prev == doctest::Approx(1.0 - 26.0 / 196.0));  // K13: delta = 144 + 52
  }
}

TEST_CASE("complete graph localization") {
  average_distribution k2 = complete_graph_average(2);
  CHECK(max_abs_diff(k2.probs, Eigen::VectorXd::Constant(2, 0.5)) < 1e-15);
  average_distribution k4 = complete_graph_average(4);
  CHECK(k4.probs[0] == doctest::Approx(0.625));
  CHECK(k4.probs[3] == doctest::Approx(0.125));
  for (int n : {2, 3, 4, 7, 11}) {
    std::vector<int> gens;
    for (int d = 1; d < n; ++d) gens.push_back(d);
    CHECK(max_abs_diff(complete_graph_average(n).probs,
                       engine(graph::circulant(n, gens)).probs) < 1e-12);
  }
  CHECK_THROWS_AS(complete_graph_average(1), error);
  // ratio n - 2 + 2/n grows without bound
  CHECK(static_cast<double>(4) * complete_graph_average(4).probs[0] ==
        doctest::Approx(2.5));
}

TEST_CASE("homogeneous join spectrum table") {
  SUBCASE("two copies of C6") {
    homogeneous_join_spectrum_result r =
        homogeneous_join_spectrum(graph::circulant(6, {1}), 2);
    REQUIRE(r.applicable);  // 6 > 2*2
    CHECK(r.top == doctest::Approx(8));
    CHECK(r.isolated == doctest::Approx(-4));
    CHECK(r.separation_ok);
    // expand the table and compare with the numeric spectrum of C6 + C6
    std::vector<double> table{r.top, r.isolated};
    for (auto [v, m] : r.interior)
      for (int i = 0; i < m; ++i) table.push_back(v);
    std::sort(table.begin(), table.end());
    graph jj = graph::join(graph::circulant(6, {1}), graph::circulant(6, {1}));
    eigen_system dense = dense_spectrum(adjacency(jj));
    std::vector<double> actual(dense.values.data(), dense.values.data() + 12);
    std::sort(actual.begin(), actual.end());
    REQUIRE(table.size() == actual.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      CHECK(table[i] == doctest::Approx(actual[i]).epsilon(1e-9));
  }
  SUBCASE("empty parts give the complete multipartite spectrum") {
    homogeneous_join_spectrum_result r =
        homogeneous_join_spectrum(graph::circulant(3, {}), 2);
    REQUIRE(r.applicable);
    CHECK(r.top == doctest::Approx(3));         // K_{3,3}
    CHECK(r.isolated == doctest::Approx(-3));
    REQUIRE(r.interior.size() == 1);
    CHECK(r.interior[0].first == doctest::Approx(0));
    CHECK(r.interior[0].second == 4);
  }
  SUBCASE("gap hypothesis violated for dense bases") {
    homogeneous_join_spectrum_result r =
        homogeneous_join_spectrum(graph::circulant(4, {1, 2, 3}), 2);
    CHECK(!r.applicable);  // n = 4 <= 2 * 3
  }
  CHECK_THROWS_AS(homogeneous_join_spectrum(graph::circulant(5, {1}), 1), error);
  CHECK_THROWS_AS(homogeneous_join_spectrum(graph::path(3), 2),
                  unsupported_structure_error);
}

TEST_CASE("multipartite averages are never uniform") {
  multipartite_result kk3 = multipartite_average(2, 3);
  CHECK(kk3.dist.probs[0] == doctest::Approx(0.5));
  CHECK(kk3.ratio == doctest::Approx(3.0));
  double prev = 0;
  for (int parts : {2, 3, 4}) {
    multipartite_result r = multipartite_average(parts, 2);
    CHECK(r.ratio > prev);
    CHECK(std::abs(r.dist.probs.sum() - 1.0) < 1e-10);
    prev = r.ratio;
  }
  CHECK_THROWS_AS(multipartite_average(1, 3), error);
}

TEST_CASE("prism halving holds exactly off resonance") {
  for (int n : {3, 5, 7, 9}) {
    graph base = graph::circulant(n, {1});
    prism_result r = prism_average(base);
    REQUIRE(r.applicable);
    CHECK(r.resonant_pairs.empty());
    graph prism = graph::cartesian(graph::path(2), base);
    CHECK(max_abs_diff(r.dist.probs, engine(prism).probs) < 1e-12);
    CHECK(r.dist.probs.head(n).sum() == doctest::Approx(0.5));  // half per deck
  }
  SUBCASE("single-vertex base degenerates to P2") {
    prism_result r = prism_average(graph::circulant(1, {}));
    REQUIRE(r.applicable);
    CHECK(max_abs_diff(r.dist.probs, Eigen::VectorXd::Constant(2, 0.5)) < 1e-15);
  }
}

TEST_CASE("the +-2 resonance really breaks the halving") {
  prism_result r = prism_average(graph::circulant(4, {1}));
  CHECK(!r.applicable);
  CHECK(r.resonant_pairs.size() == 2);  // (2,0) and (0,-2)
  average_distribution truth =
      engine(graph::cartesian(graph::path(2), graph::circulant(4, {1})));
  CHECK(truth.probs[0] == doctest::Approx(5.0 / 16.0).epsilon(1e-12));
  // halving would have said 3/16 at the start: off by 1/8
  CHECK(std::abs(truth.probs[0] - 0.5 * 0.375) == doctest::Approx(0.125));
  CHECK(max_abs_diff(r.dist.probs, truth.probs) > 1e-3);
}

TEST_CASE("path averages and the end-vertex bound") {
  path_average_result p1 = path_average(1);
  CHECK(p1.dist.probs[0] == doctest::Approx(1.0));
  path_average_result p3 = path_average(3);
  CHECK(max_abs_diff(p3.dist.probs,
                     (Eigen::VectorXd(3) << 0.375, 0.25, 0.375).finished()) < 1e-12);
  for (int m : {2, 3, 10, 50, 200}) {
    path_average_result r = path_average(m);
    CHECK(std::abs(r.dist.probs.sum() - 1.0) < 1e-10);
    CHECK(max_abs_diff(r.dist.probs, engine(graph::path(m)).probs) < 1e-11);
    CHECK(r.max_prob <= r.bound);
    CHECK(r.bound == doctest::Approx(2.0 / (m + 1) + 4.0 / ((m + 1.0) * (m + 1.0))));
  }
}

TEST_CASE("cylinder averages through the product spectrum") {
  SUBCASE("single deck reduces to the base graph") {
    cylinder_result r = cylinder_average(1, graph::circulant(5, {1}));
    CHECK(max_abs_diff(r.dist.probs, engine(graph::circulant(5, {1})).probs) < 1e-12);
  }
  SUBCASE("two decks agree with the prism") {
    cylinder_result r = cylinder_average(2, graph::circulant(5, {1}));
    prism_result p = prism_average(graph::circulant(5, {1}));
    CHECK(max_abs_diff(r.dist.probs, p.dist.probs) < 1e-12);
  }
  SUBCASE("P4 over C8 stays modest and matches the dense route") {
    graph base = graph::circulant(8, {1});
    cylinder_result r = cylinder_average(4, base);
    CHECK(r.ratio <= 4.0);
    graph cyl = graph::cartesian(graph::path(4), base);
    eigen_system de = dense_spectrum(adjacency(cyl));
    average_distribution dd = average_distribution_of(de, classes_of(de), 0);
    CHECK(max_abs_diff(r.dist.probs, dd.probs) < 1e-8);
  }
}

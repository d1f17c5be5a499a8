#include "doctest.h"
#include "qwalk/graph.hpp"

using namespace qwalk;

TEST_CASE("connection set closure symmetrizes and sorts") {
  auto s = connection_set::closure(8, std::vector<int>{1, 4});
  CHECK(s.order == 8);
  CHECK(s.elements == std::vector<int>{1, 4, 7});
  CHECK(s.degree() == 3);
  CHECK(s.contains(7));
  CHECK(s.contains(-1));  // reduced mod 8
  CHECK(!s.contains(2));

  auto neg = connection_set::closure(6, std::vector<int>{-1});
  CHECK(neg.elements == std::vector<int>{1, 5});
}

TEST_CASE("generators that vanish mod n are rejected") {
  CHECK_THROWS_AS(connection_set::closure(6, std::vector<int>{6}),
                  invalid_generator_error);
  CHECK_THROWS_AS(connection_set::closure(6, std::vector<int>{0}),
                  invalid_generator_error);
  CHECK_THROWS_AS(graph::circulant(4, {8}), invalid_generator_error);
}

TEST_CASE("circulant adjacency has the shift structure") {
  graph g = graph::circulant(8, {1, 4});
  Eigen::MatrixXd a = adjacency(g);
  CHECK(a.rows() == 8);
  CHECK(a.row(0).sum() == doctest::Approx(3));  // degree |S|
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      CHECK(a(i, j) == a(0, ((j - i) % 8 + 8) % 8));
      CHECK(a(i, j) == a(j, i));
    }
  CHECK(a.diagonal().isZero());
}

TEST_CASE("empty and complete circulants") {
  CHECK(adjacency(graph::circulant(5, {})).isZero());
  Eigen::MatrixXd k4 = adjacency(graph::circulant(4, {1, 2, 3}));
  CHECK(k4.sum() == doctest::Approx(12));  // every off-diagonal entry set
  CHECK(k4.diagonal().isZero());
  Eigen::MatrixXd one = adjacency(graph::circulant(1, {}));
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == 0);
}

TEST_CASE("path adjacency is tridiagonal") {
  Eigen::MatrixXd p4 = adjacency(graph::path(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(p4(i, j) == ((std::abs(i - j) == 1) ? 1.0 : 0.0));
  CHECK(adjacency(graph::path(1)).isZero());
  CHECK_THROWS_AS(graph::path(0), error);
}

TEST_CASE("join of K1 and K3 is K4") {
  graph j = graph::join(graph::circulant(1, {}), graph::circulant(3, {1, 2}));
  CHECK(j.order() == 4);
  Eigen::MatrixXd a = adjacency(j);
  Eigen::MatrixXd k4 = adjacency(graph::circulant(4, {1, 2, 3}));
  CHECK((a - k4).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("join of two empty triples is K_{3,3}") {
  graph j = graph::join(graph::circulant(3, {}), graph::circulant(3, {}));
  Eigen::MatrixXd a = adjacency(j);
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k)
      CHECK(a(i, k) == (((i < 3) != (k < 3)) ? 1.0 : 0.0));
}

TEST_CASE("cartesian square of P2 is the 4-cycle") {
  graph c = graph::cartesian(graph::path(2), graph::path(2));
  CHECK(c.order() == 4);
  Eigen::MatrixXd a = adjacency(c);
  Eigen::MatrixXd c4 = adjacency(graph::circulant(4, {1}));
  // relabel (0,1,3,2): cartesian corners in cycle order
  Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
  int order[4] = {0, 1, 3, 2};
  for (int i = 0; i < 4; ++i) perm(i, order[i]) = 1;
  CHECK(((perm * a * perm.transpose()) - c4).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("composites keep regular degrees additive") {
  graph g = graph::circulant(5, {1});       // degree 2
  graph h = graph::circulant(4, {1, 2});    // degree 3
  Eigen::MatrixXd ja = adjacency(graph::join(g, h));
  for (int i = 0; i < 5; ++i) CHECK(ja.row(i).sum() == doctest::Approx(2 + 4));
  for (int i = 5; i < 9; ++i) CHECK(ja.row(i).sum() == doctest::Approx(3 + 5));
  Eigen::MatrixXd ca = adjacency(graph::cartesian(g, h));
  for (int i = 0; i < 20; ++i) CHECK(ca.row(i).sum() == doctest::Approx(2 + 3));
}

TEST_CASE("explicit adjacency matrices are validated") {
  Eigen::MatrixXi ok(3, 3);
  ok << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  graph g = graph::explicit_matrix(ok);
  CHECK(g.order() == 3);
  CHECK((adjacency(g) - adjacency(graph::path(3))).cwiseAbs().maxCoeff() == 0);

  Eigen::MatrixXi loop = ok;
  loop(1, 1) = 1;
  CHECK_THROWS_AS(graph::explicit_matrix(loop), error);
  Eigen::MatrixXi asym = ok;
  asym(0, 1) = 0;
  CHECK_THROWS_AS(graph::explicit_matrix(asym), error);
  Eigen::MatrixXi big = ok;
  big(0, 1) = big(1, 0) = 2;
  CHECK_THROWS_AS(graph::explicit_matrix(big), error);
  CHECK_THROWS_AS(graph::explicit_matrix(Eigen::MatrixXi::Zero(2, 3)), error);
}

TEST_CASE("size cap guards dense expansion") {
  CHECK_THROWS_AS(adjacency(graph::circulant(100, {1}), 10), size_cap_error);
  CHECK(adjacency(graph::circulant(100, {1}), 100).rows() == 100);
}

TEST_CASE("connectivity analysis") {
  CHECK(is_connected(graph::circulant(8, {1, 4})));
  CHECK(!is_connected(graph::circulant(8, {2, 6})));  // gcd 2
  CHECK(is_connected(graph::circulant(1, {})));
  CHECK(!is_connected(graph::circulant(3, {})));
  CHECK(is_connected(graph::path(7)));
  // a join is always connected, even of disconnected parts
  CHECK(is_connected(graph::join(graph::circulant(4, {}), graph::circulant(2, {}))));
  CHECK(is_connected(graph::cartesian(graph::path(2), graph::circulant(5, {1}))));
  CHECK(!is_connected(graph::cartesian(graph::path(2), graph::circulant(4, {2}))));

  Eigen::MatrixXi two = Eigen::MatrixXi::Zero(4, 4);
  two(0, 1) = two(1, 0) = 1;
  two(2, 3) = two(3, 2) = 1;
  CHECK(!is_connected(graph::explicit_matrix(two)));
}

TEST_CASE("validate reports gcd for disconnected circulants") {
  diagnostics d = validate(graph::circulant(8, {2, 6}), true);
  CHECK(!d.ok);
  CHECK(!d.connected);
  REQUIRE(!d.messages.empty());
  CHECK(d.messages[0].find("gcd") != std::string::npos);
  CHECK(d.messages[0].find("2") != std::string::npos);

  diagnostics fine = validate(graph::circulant(8, {1, 4}), true);
  CHECK(fine.ok);
  CHECK(fine.messages.empty());
}

#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

inline constexpr int default_size_cap = 4096;

/// Symmetric connection set of a circulant graph on Z_n: a subset of
/// {1,...,n-1} closed under d -> n-d.  Built from arbitrary generators by
/// reducing mod n and adding inverses.
struct connection_set {
  int order = 1;               // n
  std::vector<int> elements;   // sorted, each in [1, n-1], closed under negation

  static connection_set closure(int n, std::span<const int> generators);

  int degree() const { return static_cast<int>(elements.size()); }
  bool contains(int d) const;
};

/// Immutable graph description.  Leaves are circulants, paths and explicit
/// adjacency matrices; internal nodes are joins and Cartesian products.
/// Composite vertex order: join lists left-side vertices before right-side,
/// cartesian uses row-major (u,v) -> u*|right| + v.
class graph {
 public:
  struct circulant_node;
  struct path_node;
  struct join_node;
  struct cartesian_node;
  struct explicit_node;
  using node_type = std::variant<circulant_node, path_node, join_node,
                                 cartesian_node, explicit_node>;

  static graph circulant(int n, std::span<const int> generators);
  static graph circulant(int n, std::initializer_list<int> generators) {
    return circulant(n, std::span<const int>(generators.begin(), generators.size()));
  }
  static graph circulant(connection_set s);
  static graph path(int m);
  static graph join(graph a, graph b);
  static graph cartesian(graph a, graph b);
  static graph explicit_matrix(Eigen::MatrixXi adj);

  int order() const { return order_; }
  const node_type& node() const;

  const circulant_node* as_circulant() const;
  const path_node* as_path() const;
  const join_node* as_join() const;
  const cartesian_node* as_cartesian() const;
  const explicit_node* as_explicit() const;

 private:
  graph(std::shared_ptr<const node_type> node, int order)
      : node_(std::move(node)), order_(order) {}

  std::shared_ptr<const node_type> node_;
  int order_ = 0;
};

struct graph::circulant_node { connection_set conn; };
struct graph::path_node { int length; };  // number of vertices
struct graph::join_node { graph left, right; };
struct graph::cartesian_node { graph left, right; };
struct graph::explicit_node { Eigen::MatrixXi adj; };

/// Dense adjacency matrix of g.  Throws size_cap_error when the order exceeds
/// the cap (dense storage and downstream eigensolves are O(n^2)/O(n^3)).
Eigen::MatrixXd adjacency(const graph& g, int size_cap = default_size_cap);

bool is_connected(const graph& g);

struct diagnostics {
  bool ok = true;
  bool connected = true;
  std::vector<std::string> messages;
};

/// Structural checks: connection-set closure, symmetry/0-1/zero-diagonal of
/// explicit matrices, and (optionally) connectivity.  Circulant
/// disconnectivity is explained via gcd(n, S).
diagnostics validate(const graph& g, bool require_connected = false);

}  // namespace qwalk

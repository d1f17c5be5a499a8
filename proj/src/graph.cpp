#include "qwalk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qwalk {

connection_set connection_set::closure(int n, std::span<const int> generators) {
  if (n < 1) throw error("circulant order must be >= 1, got " + std::to_string(n));
  std::set<int> s;
  for (int g : generators) {
    int r = g % n;
    if (r < 0) r += n;
    if (r == 0)
      throw invalid_generator_error("generator " + std::to_string(g) +
                                    " is 0 mod " + std::to_string(n));
    s.insert(r);
    s.insert(n - r);
  }
  connection_set out;
  out.order = n;
  out.elements.assign(s.begin(), s.end());
  return out;
}

bool connection_set::contains(int d) const {
  int r = d % order;
  if (r < 0) r += order;
  return std::binary_search(elements.begin(), elements.end(), r);
}

graph graph::circulant(int n, std::span<const int> generators) {
  return circulant(connection_set::closure(n, generators));
}

graph graph::circulant(connection_set s) {
  int n = s.order;
  return graph(std::make_shared<const node_type>(circulant_node{std::move(s)}), n);
}

graph graph::path(int m) {
  if (m < 1) throw error("path requires at least one vertex, got " + std::to_string(m));
  return graph(std::make_shared<const node_type>(path_node{m}), m);
}

graph graph::join(graph a, graph b) {
  int n = a.order() + b.order();
  return graph(std::make_shared<const node_type>(join_node{std::move(a), std::move(b)}), n);
}

graph graph::cartesian(graph a, graph b) {
  int n = a.order() * b.order();
  return graph(
      std::make_shared<const node_type>(cartesian_node{std::move(a), std::move(b)}), n);
}

graph graph::explicit_matrix(Eigen::MatrixXi adj) {
  if (adj.rows() != adj.cols())
    throw error("adjacency matrix must be square");
  if (adj.rows() < 1) throw error("adjacency matrix must be nonempty");
  for (Eigen::Index i = 0; i < adj.rows(); ++i) {
    if (adj(i, i) != 0) throw error("adjacency matrix has a loop at vertex " +
                                    std::to_string(i));
    for (Eigen::Index j = 0; j < adj.cols(); ++j) {
      if (adj(i, j) != 0 && adj(i, j) != 1)
        throw error("adjacency entries must be 0 or 1");
      if (adj(i, j) != adj(j, i))
        throw error("adjacency matrix must be symmetric");
    }
  }
  int n = static_cast<int>(adj.rows());
  return graph(std::make_shared<const node_type>(explicit_node{std::move(adj)}), n);
}

const graph::node_type& graph::node() const { return *node_; }

const graph::circulant_node* graph::as_circulant() const {
  return std::get_if<circulant_node>(node_.get());
}
const graph::path_node* graph::as_path() const {
  return std::get_if<path_node>(node_.get());
}
const graph::join_node* graph::as_join() const {
  return std::get_if<join_node>(node_.get());
}
const graph::cartesian_node* graph::as_cartesian() const {
  return std::get_if<cartesian_node>(node_.get());
}
const graph::explicit_node* graph::as_explicit() const {
  return std::get_if<explicit_node>(node_.get());
}

namespace {

void fill_adjacency(const graph& g, Eigen::Ref<Eigen::MatrixXd> a) {
  const int n = g.order();
  if (auto* c = g.as_circulant()) {
    for (int i = 0; i < n; ++i)
      for (int d : c->conn.elements) a(i, (i + d) % n) = 1.0;
  } else if (auto* p = g.as_path()) {
    for (int i = 0; i + 1 < p->length; ++i) {
      a(i, i + 1) = 1.0;
      a(i + 1, i) = 1.0;
    }
  } else if (auto* j = g.as_join()) {
    const int nl = j->left.order();
    const int nr = j->right.order();
    fill_adjacency(j->left, a.topLeftCorner(nl, nl));
    fill_adjacency(j->right, a.bottomRightCorner(nr, nr));
    a.topRightCorner(nl, nr).setOnes();
    a.bottomLeftCorner(nr, nl).setOnes();
  } else if (auto* c = g.as_cartesian()) {
    const int nl = c->left.order();
    const int nr = c->right.order();
    Eigen::MatrixXd al = Eigen::MatrixXd::Zero(nl, nl);
    Eigen::MatrixXd ar = Eigen::MatrixXd::Zero(nr, nr);
    fill_adjacency(c->left, al);
    fill_adjacency(c->right, ar);
    // A = A_left (x) I + I (x) A_right, vertex (u,v) at index u*nr + v
    for (int u = 0; u < nl; ++u)
      for (int up = 0; up < nl; ++up)
        if (al(u, up) != 0.0)
          for (int v = 0; v < nr; ++v) a(u * nr + v, up * nr + v) = 1.0;
    for (int v = 0; v < nr; ++v)
      for (int vp = 0; vp < nr; ++vp)
        if (ar(v, vp) != 0.0)
          for (int u = 0; u < nl; ++u) a(u * nr + v, u * nr + vp) = 1.0;
  } else if (auto* e = g.as_explicit()) {
    a = e->adj.cast<double>();
  }
}

}  // namespace

Eigen::MatrixXd adjacency(const graph& g, int size_cap) {
  if (g.order() > size_cap)
    throw size_cap_error("graph order " + std::to_string(g.order()) +
                         " exceeds size cap " + std::to_string(size_cap));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.order(), g.order());
  fill_adjacency(g, a);
  return a;
}

namespace {

int circulant_gcd(const connection_set& s) {
  int g = s.order;
  for (int d : s.elements) g = std::gcd(g, d);
  return g;
}

bool explicit_connected(const Eigen::MatrixXi& adj) {
  const int n = static_cast<int>(adj.rows());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v)
      if (adj(u, v) && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace

bool is_connected(const graph& g) {
  if (auto* c = g.as_circulant())
    return c->conn.order == 1 || circulant_gcd(c->conn) == 1;
  if (g.as_path()) return true;
  if (g.as_join()) return true;  // both sides nonempty, all cross edges present
  if (auto* c = g.as_cartesian())
    return is_connected(c->left) && is_connected(c->right);
  return explicit_connected(g.as_explicit()->adj);
}

namespace {

void validate_rec(const graph& g, diagnostics& d) {
  if (auto* c = g.as_circulant()) {
    const auto& s = c->conn;
    for (int e : s.elements) {
      if (e < 1 || e >= s.order) {
        d.ok = false;
        d.messages.push_back("connection set element " + std::to_string(e) +
                             " out of range for order " + std::to_string(s.order));
      }
      if (!s.contains(s.order - e)) {
        d.ok = false;
        d.messages.push_back("connection set not closed under negation: missing " +
                             std::to_string(s.order - e));
      }
    }
  } else if (auto* j = g.as_join()) {
    validate_rec(j->left, d);
    validate_rec(j->right, d);
  } else if (auto* c = g.as_cartesian()) {
    validate_rec(c->left, d);
    validate_rec(c->right, d);
  }
  // explicit matrices and paths are validated at construction
}

}  // namespace

diagnostics validate(const graph& g, bool require_connected) {
  diagnostics d;
  validate_rec(g, d);
  d.connected = is_connected(g);
  if (require_connected && !d.connected) {
    d.ok = false;
    if (auto* c = g.as_circulant()) {
      std::ostringstream msg;
      msg << "circulant is disconnected: gcd(n, S) = " << circulant_gcd(c->conn);
      d.messages.push_back(msg.str());
    } else {
      d.messages.push_back("graph is disconnected");
    }
  }
  return d;
}

}  // namespace qwalk

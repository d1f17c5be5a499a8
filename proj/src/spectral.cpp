#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qwalk {

namespace {

constexpr double pi = std::numbers::pi;

// unit complex number e^{2 pi i m / n}
std::complex<double> root_of_unity(long long m, int n) {
  double angle = 2.0 * pi * static_cast<double>(m) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

eigen_system circulant_spectrum(const graph& g) {
  auto* c = g.as_circulant();
  if (!c) throw unsupported_structure_error("circulant_spectrum: not a circulant node");
  const int n = c->conn.order;
  const auto& s = c->conn.elements;
  const bool has_half = (n % 2 == 0) && c->conn.contains(n / 2);

  eigen_system e;
  e.source = spectrum_source::analytic_circulant;
  e.order = n;
  e.values.resize(n);
  e.vectors.resize(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    double lam = 0;
    for (int k : s)
      if (2 * k < n) {
        long long m = (static_cast<long long>(j) * k) % n;
        lam += 2.0 * std::cos(2.0 * pi * static_cast<double>(m) / n);
      }
    if (has_half) lam += (j % 2 == 0) ? 1.0 : -1.0;
    e.values[j] = lam;
    for (int x = 0; x < n; ++x) {
      long long m = (static_cast<long long>(j) * x) % n;
      e.vectors(x, j) = scale * root_of_unity(m, n);
    }
  }
  for (int j = 1; 2 * j < n; ++j) e.degenerate_pairs.emplace_back(j, n - j);
  return e;
}

eigen_system path_spectrum(int m) {
  if (m < 1) throw error("path_spectrum requires m >= 1");
  eigen_system e;
  e.source = spectrum_source::analytic_path;
  e.order = m;
  e.values.resize(m);
  e.vectors.resize(m, m);
  const double scale = std::sqrt(2.0 / (m + 1));
  for (int j = 1; j <= m; ++j) {
    e.values[j - 1] = 2.0 * std::cos(j * pi / (m + 1));
    for (int x = 1; x <= m; ++x)
      e.vectors(x - 1, j - 1) = scale * std::sin(j * x * pi / (m + 1));
  }
  return e;
}

join_spectral_data join_scalars(int order_g, int degree_g, int order_h, int degree_h) {
  const double k = degree_g, l = degree_h;
  const double ng = order_g, nh = order_h;
  join_spectral_data d;
  d.degree_g = k;
  d.degree_h = l;
  d.delta = (k - l) * (k - l) + 4.0 * ng * nh;
  d.lambda_plus = 0.5 * ((k + l) + std::sqrt(d.delta));
  d.lambda_minus = -(ng * nh - k * l) / d.lambda_plus;  // Vieta; lambda_plus > 0
  d.beta_plus = (d.lambda_plus - k) / nh;
  d.beta_minus = (d.lambda_minus - k) / nh;
  d.norm_plus = std::sqrt(ng + nh * d.beta_plus * d.beta_plus);
  d.norm_minus = std::sqrt(ng + nh * d.beta_minus * d.beta_minus);
  return d;
}

eigen_system join_spectrum(const graph& g, const graph& h) {
  auto* cg = g.as_circulant();
  auto* ch = h.as_circulant();
  if (!cg || !ch)
    throw unsupported_structure_error("join_spectrum: both parts must be circulant");
  const int ng = g.order(), nh = h.order();
  eigen_system sg = circulant_spectrum(g);
  eigen_system sh = circulant_spectrum(h);
  join_spectral_data d =
      join_scalars(ng, cg->conn.degree(), nh, ch->conn.degree());

  eigen_system e;
  e.source = spectrum_source::join_composite;
  e.order = ng + nh;
  e.values.resize(e.order);
  e.vectors = Eigen::MatrixXcd::Zero(e.order, e.order);

  int col = 0;
  for (int a = 1; a < ng; ++a, ++col) {
    e.values[col] = sg.values[a];
    e.vectors.col(col).head(ng) = sg.vectors.col(a);
  }
  for (int b = 1; b < nh; ++b, ++col) {
    e.values[col] = sh.values[b];
    e.vectors.col(col).tail(nh) = sh.vectors.col(b);
  }
  const int plus = col, minus = col + 1;
  e.values[plus] = d.lambda_plus;
  e.values[minus] = d.lambda_minus;
  e.vectors.col(plus).head(ng).setConstant(1.0 / d.norm_plus);
  e.vectors.col(plus).tail(nh).setConstant(d.beta_plus / d.norm_plus);
  e.vectors.col(minus).head(ng).setConstant(1.0 / d.norm_minus);
  e.vectors.col(minus).tail(nh).setConstant(d.beta_minus / d.norm_minus);

  // Fourier pairs of each side survive with shifted column indices
  for (auto [a, b] : sg.degenerate_pairs)
    e.degenerate_pairs.emplace_back(a - 1, b - 1);
  for (auto [a, b] : sh.degenerate_pairs)
    e.degenerate_pairs.emplace_back(ng - 1 + a - 1, ng - 1 + b - 1);
  return e;
}

eigen_system cartesian_spectrum(const eigen_system& a, const eigen_system& b) {
  eigen_system e;
  e.source = spectrum_source::cartesian_composite;
  e.order = a.order * b.order;
  e.values.resize(e.order);
  e.vectors.resize(e.order, e.order);
  for (int j = 0; j < a.order; ++j)
    for (int k = 0; k < b.order; ++k) {
      const int col = j * b.order + k;
      e.values[col] = a.values[j] + b.values[k];
      for (int u = 0; u < a.order; ++u)
        e.vectors.col(col).segment(u * b.order, b.order) =
            a.vectors(u, j) * b.vectors.col(k);
    }
  for (auto [p, q] : a.degenerate_pairs)
    for (int k = 0; k < b.order; ++k)
      e.degenerate_pairs.emplace_back(p * b.order + k, q * b.order + k);
  for (auto [p, q] : b.degenerate_pairs)
    for (int j = 0; j < a.order; ++j)
      e.degenerate_pairs.emplace_back(j * b.order + p, j * b.order + q);
  return e;
}

eigen_system dense_spectrum(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw error("dense_spectrum: matrix not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw error("dense_spectrum: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw error("dense_spectrum: eigensolver failed to converge");
  eigen_system e;
  e.source = spectrum_source::dense_numeric;
  e.order = static_cast<int>(a.rows());
  e.values = solver.eigenvalues();
  e.vectors = solver.eigenvectors().cast<std::complex<double>>();
  return e;
}

eigen_system spectrum_of(const graph& g, int size_cap) {
  if (g.order() > size_cap)
    throw size_cap_error("graph order " + std::to_string(g.order()) +
                         " exceeds size cap " + std::to_string(size_cap));
  if (g.as_circulant()) return circulant_spectrum(g);
  if (auto* p = g.as_path()) return path_spectrum(p->length);
  if (auto* j = g.as_join()) {
    if (j->left.as_circulant() && j->right.as_circulant())
      return join_spectrum(j->left, j->right);
    return dense_spectrum(adjacency(g, size_cap));
  }
  if (auto* c = g.as_cartesian())
    return cartesian_spectrum(spectrum_of(c->left, size_cap),
                              spectrum_of(c->right, size_cap));
  return dense_spectrum(adjacency(g, size_cap));
}

int spectral_classes::total() const {
  int n = 0;
  for (const auto& c : classes) n += c.multiplicity();
  return n;
}

int spectral_classes::max_multiplicity() const {
  int mu = 0;
  for (const auto& c : classes) mu = std::max(mu, c.multiplicity());
  return mu;
}

double default_class_tolerance(const eigen_system& e) {
  return 1e-9 * std::max(1.0, e.spectral_radius());
}

namespace {

struct union_find {
  std::vector<int> parent;

  explicit union_find(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

spectral_classes group_eigenvalues(const eigen_system& e, double tol) {
  const int n = e.order;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return e.values[a] < e.values[b]; });

  union_find uf(n);
  for (int i = 0; i + 1 < n; ++i)
    if (e.values[idx[i + 1]] - e.values[idx[i]] <= tol) uf.unite(idx[i], idx[i + 1]);
  for (auto [a, b] : e.degenerate_pairs) uf.unite(a, b);

  std::vector<std::vector<int>> buckets(n);
  for (int i : idx) buckets[uf.find(i)].push_back(i);  // ascending within class

  spectral_classes out;
  out.tolerance = tol;
  for (auto& members : buckets) {
    if (members.empty()) continue;
    spectral_class c;
    double lo = e.values[members.front()], hi = lo, sum = 0;
    for (int i : members) {
      lo = std::min(lo, e.values[i]);
      hi = std::max(hi, e.values[i]);
      sum += e.values[i];
    }
    if (hi - lo > tol / 2) out.tolerance_warning = true;
    c.representative = sum / static_cast<double>(members.size());
    std::sort(members.begin(), members.end());
    c.members = std::move(members);
    out.classes.push_back(std::move(c));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const spectral_class& a, const spectral_class& b) {
              return a.representative > b.representative;
            });
  return out;
}

spectral_classes classes_of(const eigen_system& e) {
  return group_eigenvalues(e, default_class_tolerance(e));
}

eigen_system_check check_eigen_system(const eigen_system& e, const Eigen::MatrixXd* a) {
  eigen_system_check r;
  const auto& v = e.vectors;
  Eigen::MatrixXcd gram = v.adjoint() * v;
  gram.diagonal().array() -= 1.0;
  r.max_orthonormality_dev = gram.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd comp = v * v.adjoint();
  comp.diagonal().array() -= 1.0;
  r.max_completeness_dev = comp.cwiseAbs().maxCoeff();
  if (a) {
    Eigen::MatrixXcd resid = (*a) * v - v * e.values.asDiagonal();
    r.max_residual = resid.cwiseAbs().maxCoeff();
  }
  return r;
}

}  // namespace qwalk

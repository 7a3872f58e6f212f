#include "toric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace toric {

double QuadratureRule::volume() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void gauss_legendre(int points, std::vector<double>& nodes, std::vector<double>& weights) {
  // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
  const Eigen::Index m = points;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) {
    const double b = static_cast<double>(i) / std::sqrt(4.0 * static_cast<double>(i * i) - 1.0);
    jac(i, i - 1) = jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(static_cast<std::size_t>(m));
  weights.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    nodes[static_cast<std::size_t>(i)] = 0.5 * (es.eigenvalues()[i] + 1.0);
    weights[static_cast<std::size_t>(i)] = v0 * v0;  // sums to 1 on [0, 1]
  }
}

namespace {

// Rule on the unit simplex {y >= 0, sum y <= 1} in R^k.
void unit_simplex_rule(int k, int degree, std::vector<Eigen::VectorXd>& nodes, std::vector<double>& weights) {
  if (k == 0) {
    nodes.assign(1, Eigen::VectorXd(0));
    weights.assign(1, 1.0);
    return;
  }
  std::vector<Eigen::VectorXd> base_nodes;
  std::vector<double> base_weights;
  unit_simplex_rule(k - 1, degree, base_nodes, base_weights);
  // the collapse factor (1 - t)^{k-1} raises the degree in t
  const int points = (degree + k) / 2 + 1;
  std::vector<double> t, wt;
  gauss_legendre(points, t, wt);
  nodes.clear();
  weights.clear();
  for (std::size_t a = 0; a < t.size(); ++a) {
    const double scale = 1.0 - t[a];
    const double jac = std::pow(scale, k - 1);
    for (std::size_t b = 0; b < base_nodes.size(); ++b) {
      Eigen::VectorXd y(k);
      y.head(k - 1) = scale * base_nodes[b];
      y[k - 1] = t[a];
      nodes.push_back(std::move(y));
      weights.push_back(wt[a] * jac * base_weights[b]);
    }
  }
}

void triangulate_face(const DelzantPolytope& p, const std::vector<std::size_t>& face,
                      std::vector<std::vector<Eigen::VectorXd>>& out_simplices,
                      std::vector<Eigen::VectorXd> apexes) {
  std::vector<std::size_t> verts;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto& act = p.vertices()[v].facets;
    if (std::includes(act.begin(), act.end(), face.begin(), face.end())) verts.push_back(v);
  }
  if (face.size() == p.dim()) {
    apexes.push_back(p.vertex(verts.front()));
    out_simplices.push_back(std::move(apexes));
    return;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.dim()));
  for (auto v : verts) c += p.vertex(v);
  c /= static_cast<double>(verts.size());
  apexes.push_back(c);
  std::set<std::size_t> next;
  for (auto v : verts)
    for (auto r : p.vertices()[v].facets)
      if (!std::binary_search(face.begin(), face.end(), r)) next.insert(r);
  for (auto r : next) {
    std::vector<std::size_t> sub = face;
    sub.insert(std::upper_bound(sub.begin(), sub.end(), r), r);
    triangulate_face(p, sub, out_simplices, apexes);
  }
}

}  // namespace

QuadratureRule simplex_rule(const std::vector<Eigen::VectorXd>& vertices, int degree) {
  const auto n = static_cast<Eigen::Index>(vertices.size()) - 1;
  Eigen::MatrixXd edges(n, n);
  for (Eigen::Index i = 0; i < n; ++i) edges.col(i) = vertices[static_cast<std::size_t>(i + 1)] - vertices[0];
  const double jac = std::abs(edges.determinant());
  std::vector<Eigen::VectorXd> ref;
  std::vector<double> w;
  unit_simplex_rule(static_cast<int>(n), degree, ref, w);
  QuadratureRule rule;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    rule.nodes.push_back(vertices[0] + edges * ref[i]);
    rule.weights.push_back(w[i] * jac);
  }
  return rule;
}

std::vector<std::vector<Eigen::VectorXd>> fan_triangulation(const DelzantPolytope& p) {
  std::vector<std::vector<Eigen::VectorXd>> simplices;
  triangulate_face(p, {}, simplices, {});
  return simplices;
}

QuadratureRule polytope_rule(const DelzantPolytope& p, int degree) {
  QuadratureRule rule;
  for (const auto& s : fan_triangulation(p)) {
    QuadratureRule part = simplex_rule(s, degree);
    rule.nodes.insert(rule.nodes.end(), part.nodes.begin(), part.nodes.end());
    rule.weights.insert(rule.weights.end(), part.weights.begin(), part.weights.end());
  }
  return rule;
}

}  // namespace toric

#include "toric/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toric {

namespace {

double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += static_cast<double>(i % base) * f;
    i /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

bool well_inside(const DelzantPolytope& p, const Eigen::VectorXd& x, double margin) {
  return (p.ells(x).array() >= margin).all();
}

}  // namespace

std::vector<Eigen::VectorXd> halton_interior(const DelzantPolytope& p, std::size_t count,
                                             double margin) {
  std::vector<Eigen::VectorXd> out;
  const auto n = static_cast<Eigen::Index>(p.dim());
  const Eigen::VectorXd lo = p.lower_corner(), hi = p.upper_corner();
  for (std::size_t i = 1; out.size() < count && i < 1000 * (count + 1); ++i) {
    Eigen::VectorXd x(n);
    for (Eigen::Index a = 0; a < n; ++a)
      x[a] = lo[a] + (hi[a] - lo[a]) * radical_inverse(i, kPrimes[a % 8]);
    if (well_inside(p, x, margin)) out.push_back(x);
  }
  return out;
}

std::vector<Eigen::VectorXd> interior_samples(const DelzantPolytope& p, const SamplingConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  const double margin = cfg.boundary_margin * p.diameter();
  const Eigen::VectorXd lo = p.lower_corner(), hi = p.upper_corner(), c = p.centroid();
  std::vector<Eigen::VectorXd> out;

  const int m = std::max(cfg.grid_per_axis, 1);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Eigen::VectorXd x(n);
    for (Eigen::Index a = 0; a < n; ++a)
      x[a] = lo[a] + (hi[a] - lo[a]) * (idx[static_cast<std::size_t>(a)] + 0.5) / m;
    x = c + cfg.shrink * (x - c);
    if (well_inside(p, x, margin)) out.push_back(x);
    Eigen::Index a = 0;
    while (a < n && ++idx[static_cast<std::size_t>(a)] == m) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == n) break;
  }
  auto extra = halton_interior(p, static_cast<std::size_t>(std::max(cfg.low_discrepancy, 0)), margin);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::vector<ApproachSequence> boundary_approach(const DelzantPolytope& p, const SamplingConfig& cfg) {
  std::vector<ApproachSequence> out;
  const Eigen::VectorXd c = p.centroid();
  for (std::size_t r = 0; r < p.num_facets(); ++r) {
    ApproachSequence seq;
    seq.target = "facet " + std::to_string(r);
    seq.index = r;
    auto verts = p.facet_vertices(r);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.dim()));
    for (auto v : verts) m += p.vertex(v);
    m /= static_cast<double>(verts.size());
    const Eigen::VectorXd mu = p.normal(r);
    for (int k = cfg.approach_k_min; k <= cfg.approach_k_max; ++k) {
      seq.k.push_back(k);
      seq.points.push_back(m + std::ldexp(1.0, -k) * mu / mu.squaredNorm());
    }
    out.push_back(std::move(seq));
  }
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    ApproachSequence seq;
    seq.target = "vertex " + std::to_string(v);
    seq.is_vertex = true;
    seq.index = v;
    const Eigen::VectorXd x0 = p.vertex(v);
    double min_ell = std::numeric_limits<double>::infinity();
    for (auto r : p.vertices()[v].facets) min_ell = std::min(min_ell, p.ell(r, c));
    for (int k = cfg.approach_k_min; k <= cfg.approach_k_max; ++k) {
      seq.k.push_back(k);
      seq.points.push_back(x0 + (std::ldexp(1.0, -k) / min_ell) * (c - x0));
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace toric

#include "toric/polytope.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace toric {

namespace {

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RationalMatrix rows_of(const std::vector<Facet>& facets, const std::vector<std::size_t>& which) {
  RationalMatrix m;
  m.reserve(which.size());
  for (auto r : which) {
    RationalVector row;
    for (auto a : facets[r].normal) row.emplace_back(a);
    m.push_back(std::move(row));
  }
  return m;
}

Rational ell_exact(const Facet& f, const RationalVector& x) {
  Rational s = -f.offset;
  for (std::size_t i = 0; i < x.size(); ++i) s += Rational(f.normal[i]) * x[i];
  return s;
}

std::string describe_vertex(const RationalVector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += to_string(x[i]);
  }
  return s + ")";
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Rational DelzantPolytope::ell(std::size_t r, const RationalVector& x) const {
  return ell_exact(facets_[r], x);
}

double DelzantPolytope::ell(std::size_t r, const Eigen::VectorXd& x) const {
  return normals_.row(static_cast<Eigen::Index>(r)).dot(x) - offsets_[static_cast<Eigen::Index>(r)];
}

Eigen::VectorXd DelzantPolytope::ells(const Eigen::VectorXd& x) const {
  return normals_ * x - offsets_;
}

Eigen::VectorXd DelzantPolytope::normal(std::size_t r) const {
  return normals_.row(static_cast<Eigen::Index>(r)).transpose();
}

RationalVector DelzantPolytope::exact_centroid() const {
  RationalVector c(dim_, 0);
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < dim_; ++i) c[i] += v.point[i];
  for (auto& ci : c) ci /= static_cast<long long>(vertices_.size());
  return c;
}

Eigen::VectorXd DelzantPolytope::vertex(std::size_t v) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) x[static_cast<Eigen::Index>(i)] = to_double(vertices_[v].point[i]);
  return x;
}

std::vector<std::size_t> DelzantPolytope::facet_vertices(std::size_t r) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& fs = vertices_[v].facets;
    if (std::binary_search(fs.begin(), fs.end(), r)) out.push_back(v);
  }
  return out;
}

bool DelzantPolytope::contains(const Eigen::VectorXd& x) const {
  return (ells(x).array() >= 0.0).all();
}

DelzantPolytope build_polytope(std::size_t dim, std::vector<Facet> facets, std::string name) {
  if (dim == 0) throw ToricError(ErrorKind::InvalidArgument, "dimension must be at least 1");
  const std::size_t d = facets.size();
  for (std::size_t r = 0; r < d; ++r) {
    if (facets[r].normal.size() != dim) {
      throw ToricError(ErrorKind::InvalidArgument,
                       "facet " + std::to_string(r) + " normal has wrong length", r);
    }
    if (gcd_of(facets[r].normal) != 1) {
      throw ToricError(ErrorKind::NonPrimitiveNormal,
                       "facet " + std::to_string(r) + " normal is not primitive", r);
    }
  }
  if (d < dim + 1) {
    throw ToricError(ErrorKind::Unbounded, "need at least dim+1 facets to bound a polytope");
  }

  std::vector<std::size_t> all(d);
  for (std::size_t r = 0; r < d; ++r) all[r] = r;
  if (rank(rows_of(facets, all)) < dim) {
    throw ToricError(ErrorKind::Unbounded, "normals do not span R^n");
  }

  // The recession cone {y : <y, normal_r> >= 0} is trivial iff none of its
  // candidate extreme rays (kernels of rank n-1 facet subsets) is feasible.
  bool unbounded = false;
  for_each_subset(d, dim - 1, [&](const std::vector<std::size_t>& subset) {
    if (unbounded) return;
    RationalVector y;
    if (dim == 1) {
      y = {Rational(1)};
    } else {
      auto kernel = nullspace(rows_of(facets, subset));
      if (kernel.size() != 1) return;
      y = kernel.front();
    }
    for (int sign : {1, -1}) {
      bool feasible = true;
      for (const auto& f : facets) {
        Rational s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += Rational(f.normal[i]) * y[i];
        if (sign * s < 0) {
          feasible = false;
          break;
        }
      }
      if (feasible) unbounded = true;
    }
  });
  if (unbounded) throw ToricError(ErrorKind::Unbounded, "polytope is unbounded");

  std::map<std::vector<std::size_t>, RationalVector> found;
  for_each_subset(d, dim, [&](const std::vector<std::size_t>& subset) {
    RationalVector rhs;
    for (auto r : subset) rhs.push_back(facets[r].offset);
    RationalVector x;
    if (!solve_exact(rows_of(facets, subset), rhs, x)) return;
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < d; ++r) {
      Rational l = ell_exact(facets[r], x);
      if (l < 0) return;
      if (l == 0) active.push_back(r);
    }
    found.emplace(std::move(active), std::move(x));
  });
  if (found.empty()) throw ToricError(ErrorKind::EmptyInterior, "no vertices: the polytope is empty");

  DelzantPolytope p;
  p.dim_ = dim;
  p.facets_ = std::move(facets);
  p.name_ = std::move(name);
  for (auto& [active, point] : found) p.vertices_.push_back(Vertex{point, active});

  RationalVector c = p.exact_centroid();
  for (std::size_t r = 0; r < d; ++r) {
    if (ell_exact(p.facets_[r], c) <= 0) {
      throw ToricError(ErrorKind::EmptyInterior, "polytope has empty interior");
    }
  }
  for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
    const auto& vx = p.vertices_[v];
    if (vx.facets.size() != dim) {
      throw ToricError(ErrorKind::NonSimpleVertex,
                       std::to_string(vx.facets.size()) + " facets meet at vertex " +
                           describe_vertex(vx.point),
                       v);
    }
    Rational det = determinant(rows_of(p.facets_, vx.facets));
    if (det != 1 && det != -1) {
      throw ToricError(ErrorKind::NonUnimodularVertex,
                       "normals at vertex " + describe_vertex(vx.point) + " have determinant " +
                           to_string(det),
                       v);
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    if (p.facet_vertices(r).empty()) {
      throw ToricError(ErrorKind::RedundantFacet,
                       "inequality " + std::to_string(r) + " does not define a facet", r);
    }
  }

  const auto n = static_cast<Eigen::Index>(dim);
  p.normals_.resize(static_cast<Eigen::Index>(d), n);
  p.offsets_.resize(static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t i = 0; i < dim; ++i)
      p.normals_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          static_cast<double>(p.facets_[r].normal[i]);
    p.offsets_[static_cast<Eigen::Index>(r)] = to_double(p.facets_[r].offset);
  }
  p.centroid_.resize(n);
  for (std::size_t i = 0; i < dim; ++i) p.centroid_[static_cast<Eigen::Index>(i)] = to_double(c[i]);
  p.lower_ = p.vertex(0);
  p.upper_ = p.vertex(0);
  for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
    Eigen::VectorXd x = p.vertex(v);
    p.lower_ = p.lower_.cwiseMin(x);
    p.upper_ = p.upper_.cwiseMax(x);
    for (std::size_t w = 0; w < v; ++w) p.diameter_ = std::max(p.diameter_, (x - p.vertex(w)).norm());
  }
  return p;
}

FVector f_vector(const DelzantPolytope& p) {
  const std::size_t n = p.dim();
  FVector f;
  f.counts.assign(n + 1, std::nullopt);
  f.counts[n] = 1;
  f.counts[0] = static_cast<std::int64_t>(p.vertices().size());
  if (n >= 1) f.counts[n - 1] = static_cast<std::int64_t>(p.num_facets());
  if (n <= 3) {
    // In a simple polytope a k-face lies in exactly n-k facets, and every
    // (n-k)-subset of a vertex's active facets cuts out such a face.
    for (std::size_t k = 1; k + 1 < n; ++k) {
      std::set<std::vector<std::size_t>> faces;
      for (const auto& v : p.vertices()) {
        for_each_subset(n, n - k, [&](const std::vector<std::size_t>& pick) {
          std::vector<std::size_t> face;
          for (auto i : pick) face.push_back(v.facets[i]);
          faces.insert(std::move(face));
        });
      }
      f.counts[k] = static_cast<std::int64_t>(faces.size());
    }
  }
  return f;
}

std::vector<std::optional<std::int64_t>> h_numbers(const FVector& f) {
  const auto n = static_cast<std::int64_t>(f.counts.size()) - 1;
  std::vector<std::optional<std::int64_t>> h(static_cast<std::size_t>(n + 1));
  for (std::int64_t k = 0; k <= n; ++k) {
    std::int64_t sum = 0;
    bool known = true;
    for (std::int64_t j = 0; j <= k; ++j) {
      const auto& fj = f.counts[static_cast<std::size_t>(n - j)];
      if (!fj) {
        known = false;
        break;
      }
      std::int64_t sign = ((k - j) % 2 == 0) ? 1 : -1;
      sum += binomial(n - j, n - k) * sign * *fj;
    }
    if (known) h[static_cast<std::size_t>(k)] = sum;
  }
  return h;
}

std::vector<std::optional<std::int64_t>> h_numbers(const DelzantPolytope& p) {
  return h_numbers(f_vector(p));
}

LefschetzReport check_hard_lefschetz(const std::vector<std::int64_t>& h) {
  LefschetzReport rep;
  if (h.empty()) return rep;
  const std::size_t n = h.size() - 1;
  rep.symmetric = true;
  for (std::size_t k = 0; k <= n; ++k)
    if (h[k] != h[n - k]) rep.symmetric = false;
  rep.unimodal_lower_half = true;
  for (std::size_t k = 0; k + 1 <= n / 2; ++k)
    if (h[k + 1] - h[k] < 0) rep.unimodal_lower_half = false;
  return rep;
}

std::int64_t int_determinant(const IntMatrix& a) {
  RationalMatrix m;
  for (const auto& row : a) {
    RationalVector r;
    for (auto v : row) r.emplace_back(v);
    m.push_back(std::move(r));
  }
  return determinant(std::move(m)).convert_to<std::int64_t>();
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  IntMatrix inv(n, IntVector(n, 0));
  RationalMatrix m;
  for (const auto& row : a) {
    RationalVector r;
    for (auto v : row) r.emplace_back(v);
    m.push_back(std::move(r));
  }
  for (std::size_t c = 0; c < n; ++c) {
    RationalVector e(n, 0), x;
    e[c] = 1;
    if (!solve_exact(m, e, x)) throw ToricError(ErrorKind::NotUnimodular, "matrix is singular");
    for (std::size_t r = 0; r < n; ++r) {
      if (boost::multiprecision::denominator(x[r]) != 1)
        throw ToricError(ErrorKind::NotUnimodular, "inverse is not integral");
      inv[r][c] = boost::multiprecision::numerator(x[r]).convert_to<std::int64_t>();
    }
  }
  return inv;
}

DelzantPolytope sl_transform(const DelzantPolytope& p, const IntMatrix& a) {
  const std::size_t n = p.dim();
  if (a.size() != n || std::any_of(a.begin(), a.end(), [n](const IntVector& row) { return row.size() != n; })) {
    throw ToricError(ErrorKind::InvalidArgument, "transform must be n x n");
  }
  if (int_determinant(a) != 1) throw ToricError(ErrorKind::NotUnimodular, "det A must be 1");
  IntMatrix inv = unimodular_inverse(a);
  std::vector<Facet> out;
  for (const auto& f : p.facets()) {
    // (A^{-T} mu)_i = sum_k inv[k][i] mu_k
    IntVector mu(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) mu[i] += inv[k][i] * f.normal[k];
    out.push_back(Facet{mu, f.offset});
  }
  return build_polytope(n, std::move(out), p.name());
}

DelzantPolytope translate(const DelzantPolytope& p, const RationalVector& t) {
  if (t.size() != p.dim()) throw ToricError(ErrorKind::InvalidArgument, "translation has wrong length");
  std::vector<Facet> out;
  for (const auto& f : p.facets()) {
    Rational shift = 0;
    for (std::size_t i = 0; i < t.size(); ++i) shift += t[i] * Rational(f.normal[i]);
    out.push_back(Facet{f.normal, f.offset + shift});
  }
  return build_polytope(p.dim(), std::move(out), p.name());
}

IntVector normal_sum(const DelzantPolytope& p) {
  IntVector s(p.dim(), 0);
  for (const auto& f : p.facets())
    for (std::size_t i = 0; i < p.dim(); ++i) s[i] += f.normal[i];
  return s;
}

}  // namespace toric

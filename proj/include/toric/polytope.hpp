#pragma once

#include "toric/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toric {

using IntMatrix = std::vector<IntVector>;  // row-major

// Half-space ℓ(x) = <x, normal> - offset >= 0 with a primitive integer normal.
struct Facet {
  IntVector normal;
  Rational offset;
};

// A vertex is identified by the sorted indices of the facets active at it.
struct Vertex {
  RationalVector point;
  std::vector<std::size_t> facets;
};

// Validated Delzant polytope. Immutable once built; construct through
// build_polytope(), which enumerates vertices exactly and throws ToricError
// when any Delzant condition fails.
class DelzantPolytope {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t num_facets() const { return facets_.size(); }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::string& name() const { return name_; }

  // Exact affine function of facet r.
  Rational ell(std::size_t r, const RationalVector& x) const;
  // Floating-point affine function of facet r.
  double ell(std::size_t r, const Eigen::VectorXd& x) const;
  Eigen::VectorXd ells(const Eigen::VectorXd& x) const;

  Eigen::VectorXd normal(std::size_t r) const;
  double offset(std::size_t r) const { return offsets_[r]; }

  // Normals as rows of a d x n matrix.
  const Eigen::MatrixXd& normal_matrix() const { return normals_; }

  // Average of the vertices; always interior.
  Eigen::VectorXd centroid() const { return centroid_; }
  RationalVector exact_centroid() const;
  Eigen::VectorXd vertex(std::size_t v) const;

  // Euclidean diameter of the vertex set.
  double diameter() const { return diameter_; }
  Eigen::VectorXd lower_corner() const { return lower_; }
  Eigen::VectorXd upper_corner() const { return upper_; }

  // Vertices incident to facet r.
  std::vector<std::size_t> facet_vertices(std::size_t r) const;

  bool contains(const Eigen::VectorXd& x) const;

 private:
  friend DelzantPolytope build_polytope(std::size_t, std::vector<Facet>, std::string);

  std::size_t dim_ = 0;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
  std::string name_;

  Eigen::MatrixXd normals_;
  Eigen::VectorXd offsets_;
  Eigen::VectorXd centroid_;
  Eigen::VectorXd lower_, upper_;
  double diameter_ = 0.0;
};

// Validates the Delzant conditions and enumerates vertices by solving every
// n-subset of facet equalities exactly. Facet order is preserved; it fixes
// the indexing of everything derived from the facets.
DelzantPolytope build_polytope(std::size_t dim, std::vector<Facet> facets,
                               std::string name = {});

// f_0..f_n. Middle entries are empty for n >= 4.
struct FVector {
  std::vector<std::optional<std::int64_t>> counts;
};

FVector f_vector(const DelzantPolytope& p);

// h^0..h^n from the face counts; empty entries when a needed f_j is missing.
std::vector<std::optional<std::int64_t>> h_numbers(const DelzantPolytope& p);
std::vector<std::optional<std::int64_t>> h_numbers(const FVector& f);

struct LefschetzReport {
  bool symmetric = false;
  bool unimodal_lower_half = false;
};

// (i) h^k = h^{n-k}; (ii) h^{k+1} >= h^k for k <= floor(n/2) - 1.
LefschetzReport check_hard_lefschetz(const std::vector<std::int64_t>& h);

// A(P) for A in SL(n, Z). Normals map by A^{-T}; offsets are unchanged.
DelzantPolytope sl_transform(const DelzantPolytope& p, const IntMatrix& a);

// P + t. Offsets become offset + <t, normal>.
DelzantPolytope translate(const DelzantPolytope& p, const RationalVector& t);

IntVector normal_sum(const DelzantPolytope& p);

// Exact integer determinant.
std::int64_t int_determinant(const IntMatrix& a);

// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

}  // namespace toric

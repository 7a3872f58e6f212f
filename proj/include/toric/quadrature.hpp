#pragma once

#include "toric/polytope.hpp"

#include <Eigen/Dense>

#include <vector>

namespace toric {

struct QuadratureRule {
  std::vector<Eigen::VectorXd> nodes;
  std::vector<double> weights;

  double volume() const;
};

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int points, std::vector<double>& nodes, std::vector<double>& weights);

// Collapsed-coordinate (conical product) Gauss rule on the simplex with the
// given n+1 vertices in R^n. Positive weights; exact for polynomials of total
// degree <= `degree`.
QuadratureRule simplex_rule(const std::vector<Eigen::VectorXd>& vertices, int degree);

// Fan triangulation: every face is coned from its vertex centroid, starting
// from the polytope centroid. Returns full-dimensional simplices.
std::vector<std::vector<Eigen::VectorXd>> fan_triangulation(const DelzantPolytope& p);

QuadratureRule polytope_rule(const DelzantPolytope& p, int degree);

}  // namespace toric

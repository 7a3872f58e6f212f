#pragma once

#include "toric/polytope.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace toric {

struct SamplingConfig {
  int grid_per_axis = 12;       // tensor grid over the bounding box
  int low_discrepancy = 64;     // Halton points over the bounding box
  double shrink = 0.95;         // grid points pulled toward the centroid
  double boundary_margin = 0.01;  // keep ℓ_r >= margin * diameter
  int approach_k_min = 4;       // boundary sequences ℓ = 2^{-k}
  int approach_k_max = 20;
};

// Deterministic interior sample set: shrunken tensor grid followed by Halton
// points, both filtered by the boundary margin.
std::vector<Eigen::VectorXd> interior_samples(const DelzantPolytope& p, const SamplingConfig& cfg);

// `count` points from a Halton sequence restricted to the interior of P with
// every ℓ_r >= margin. Deterministic.
std::vector<Eigen::VectorXd> halton_interior(const DelzantPolytope& p, std::size_t count,
                                             double margin);

// Points approaching one facet (from its centroid, along the normal) or one
// vertex (toward the centroid), with the approached ℓ equal to 2^{-k}.
struct ApproachSequence {
  std::string target;                // "facet 3" / "vertex 1"
  bool is_vertex = false;
  std::size_t index = 0;
  std::vector<int> k;
  std::vector<Eigen::VectorXd> points;
};

std::vector<ApproachSequence> boundary_approach(const DelzantPolytope& p, const SamplingConfig& cfg);

}  // namespace toric

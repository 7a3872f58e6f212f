#pragma once

#include "toric/potential.hpp"
#include "toric/sampling.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace toric {

// Metric data at an interior point: G = Hess g, its inverse and the first two
// derivatives of G^{-1}. dGinv(j, k, l) = d_j G^{kl};
// d2Ginv(j, m, k, l) = d_j d_m G^{kl}.
struct MetricSample {
  Eigen::VectorXd point;
  Eigen::MatrixXd G;
  Eigen::MatrixXd Ginv;
  double detG = 0.0;
  Tensor3 dGinv;
  Tensor4 d2Ginv;
};

// `order` 3 fills dGinv only; 4 (default) fills both.
MetricSample metric_sample(const SymplecticPotential& g, const Eigen::VectorXd& x, int order = 4);

// Abreu: S = -1/2 sum_{j,k} d_j d_k G^{jk}.
double scalar_curvature(const SymplecticPotential& g, const Eigen::VectorXd& x);

// S = -1/2 sum_{j,k} d_j (G^{jk} d_k log det G^{-1}), expanded through
// d_k log det G = tr(G^{-1} d_k G); det G^{-1} is det Hess_u f under Legendre duality.
double scalar_curvature_alt(const SymplecticPotential& g, const Eigen::VectorXd& x);

// d_k log det G at x.
Eigen::VectorXd log_det_gradient(const PotentialJet& jet, const Eigen::MatrixXd& ginv);

inline constexpr double kDefaultExtremalTolerance = 1e-6;

struct ExtremalityReport {
  double constant = 0.0;
  Eigen::VectorXd gradient;
  double residual_sup = 0.0;
  std::size_t samples = 0;
  double tolerance = kDefaultExtremalTolerance;
  bool is_extremal = false;
};

// Least-squares fit of S in the basis (1, x_1..x_n) over interior samples.
ExtremalityReport extremality_test(const SymplecticPotential& g, const SamplingConfig& cfg = {},
                                   double tol = kDefaultExtremalTolerance);

ExtremalityReport extremality_test(const SymplecticPotential& g,
                                   const std::vector<Eigen::VectorXd>& samples,
                                   double tol = kDefaultExtremalTolerance);

struct HexagonReport {
  ExtremalityReport extremality;
  double scalar_at_center = 0.0;
  // Largest |S(Ax) - S(x)| over the hexagon's lattice symmetries and samples.
  double symmetry_defect = 0.0;
  // Largest difference of the extremality report for a translated copy.
  double translation_defect = 0.0;
  bool non_extremal = false;
};

// Runs the extremality test on the canonical potential of the hexagon
// ℓ_{±1} = 1 ± x1, ℓ_{±2} = 1 ± x2, ℓ_{±3} = 1 ∓ (x1 + x2).
HexagonReport hexagon_fixture_check(const SamplingConfig& cfg = {});

}  // namespace toric

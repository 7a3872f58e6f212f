#pragma once

#include "toric/correction.hpp"
#include "toric/jet.hpp"
#include "toric/polytope.hpp"
#include "toric/sampling.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace toric {

// Interiority guard: jets are refused where some ℓ_r(x) <= this.
inline constexpr double kBoundaryEpsilon = 1e-12;

// g = g_P + sum of corrections, where g_P = 1/2 sum_r ℓ_r log ℓ_r.
class SymplecticPotential {
 public:
  SymplecticPotential(DelzantPolytope polytope, std::vector<CorrectionTerm> corrections = {},
                      std::string label = {});

  const DelzantPolytope& polytope() const { return polytope_; }
  const std::vector<CorrectionTerm>& corrections() const { return corrections_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return polytope_.dim(); }

  // Throws OutsidePolytope if some ℓ_r(x) < 0, BoundaryPoint if some
  // ℓ_r(x) <= eps.
  void require_interior(const Eigen::VectorXd& x, double eps = kBoundaryEpsilon) const;

  // Jet of g_P alone, closed form per facet.
  PotentialJet canonical_jet(const Eigen::VectorXd& x, int order) const;
  // Jet of the full potential.
  PotentialJet jet(const Eigen::VectorXd& x, int order, double eps = kBoundaryEpsilon) const;

 private:
  DelzantPolytope polytope_;
  std::vector<CorrectionTerm> corrections_;
  std::string label_;
};

SymplecticPotential canonical_potential(const DelzantPolytope& p);

PotentialJet eval_jet(const SymplecticPotential& g, const Eigen::VectorXd& x, int order,
                      double eps = kBoundaryEpsilon);

// g + h. Corrections compose additively; no validity claim is made.
SymplecticPotential add_correction(const SymplecticPotential& g, CorrectionTerm h);

// det(Hess g) * prod ℓ_r along one approach sequence.
struct BoundarySequenceReport {
  std::string target;
  std::vector<double> approach_ell;
  std::vector<double> products;
  std::vector<double> kernel_norms;  // |G^{-1} mu_r|, facet sequences only
  double extrapolated = 0.0;
  bool bounded_positive = false;
  bool kernel_vanishes = true;
};

struct ValidityReport {
  std::size_t interior_samples = 0;
  double min_hessian_eigenvalue = 0.0;
  bool positive_definite = false;
  bool correction_smooth = false;
  std::vector<BoundarySequenceReport> boundary;
  double product_min = 0.0;
  double product_max = 0.0;
  bool boundary_ok = false;
  // A finite sample flags boundary behaviour; it never certifies smoothness.
  bool certified = false;
  bool valid = false;
  std::vector<std::string> failures;
};

ValidityReport validate_potential(const SymplecticPotential& g, const SamplingConfig& cfg = {});

// f_g(x) = <x, grad g(x)> - g(x).
double legendre_value(const SymplecticPotential& g, const Eigen::VectorXd& x);

// 1/2 sum_r λ_r log ℓ_r(x) + 1/2 ℓ_inf(x), with ℓ_inf(x) = sum_r <x, mu_r>.
// Equals legendre_value of the canonical potential.
double canonical_legendre_decomposition(const DelzantPolytope& p, const Eigen::VectorXd& x);

// u = grad g(x).
Eigen::VectorXd moment_map(const SymplecticPotential& g, const Eigen::VectorXd& x);

struct NewtonOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;
};

// Solves grad g(x) = u by damped Newton, keeping iterates interior. Throws
// NoConvergence with the final residual in the message.
Eigen::VectorXd moment_map_inverse(const SymplecticPotential& g, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& x0, const NewtonOptions& opts = {});

struct PerturbationCheck {
  std::size_t samples = 0;
  double min_eigenvalue = 0.0;  // of (d phi) G_P^{-1}, symmetrized
  double max_asymmetry = 0.0;
  double min_jacobian_det = 0.0;
};

// Coordinate change x~ = x + G_P^{-1} grad f_J induced by the Kähler form
// ω_P + 2i ∂∂̄ f_J, and the potential it transports:
//   g(x~) = <x~, grad g_P(x)> - f_P(x) - f_J(x),   x = phi^{-1}(x~).
class KahlerPerturbation {
 public:
  KahlerPerturbation(DelzantPolytope p, CorrectionTerm f_j, const SamplingConfig& cfg = {});

  const DelzantPolytope& polytope() const { return canonical_.polytope(); }
  const PerturbationCheck& check() const { return check_; }

  Eigen::VectorXd map(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  Eigen::VectorXd inverse_map(const Eigen::VectorXd& x_tilde,
                              std::optional<Eigen::VectorXd> x0 = std::nullopt,
                              const NewtonOptions& opts = {}) const;

  double corrected_potential(const Eigen::VectorXd& x_tilde) const;
  // Value, gradient grad g_P(x) and Hessian G_P(x) (d phi(x))^{-1} at x~.
  PotentialJet corrected_jet(const Eigen::VectorXd& x_tilde) const;
  // g(x~) - g_P(x~).
  double correction_at(const Eigen::VectorXd& x_tilde) const;
  // Max deviation between a central-difference gradient of the transported
  // potential and grad g_P(phi^{-1}(x~)); zero when the additive constant of
  // the biholomorphism is zero.
  double gradient_drift(const Eigen::VectorXd& x_tilde, double step = 1e-6) const;

 private:
  SymplecticPotential canonical_;
  CorrectionTerm f_j_;
  PerturbationCheck check_;
};

KahlerPerturbation kahler_perturbation(const DelzantPolytope& p, const CorrectionTerm& f_j,
                                       const SamplingConfig& cfg = {});

}  // namespace toric

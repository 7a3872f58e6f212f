#pragma once

#include "toric/jet.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace toric {

// Torus-invariant test function: value, gradient and Hessian at x.
using ScalarField = std::function<FieldJet(const Eigen::VectorXd&)>;

// Δψ = -(det G) sum_{j,k} G^{jk} d_j((det G)^{-1} d_k ψ).
double laplacian_apply(const SymplecticPotential& g, const FieldJet& psi, const Eigen::VectorXd& x);
double laplacian_apply(const SymplecticPotential& g, const ScalarField& psi, const Eigen::VectorXd& x);

// ∫_P G^{-1}(dψ, dψ) dx / ∫_P ψ^2 dx over the fan-triangulation quadrature.
// The (2π)^n torus factor cancels and is omitted. Throws ZeroFunction when
// the denominator vanishes.
double rayleigh_quotient(const SymplecticPotential& g, const ScalarField& psi, int quadrature_degree = 12);

struct RitzConfig {
  int degree = 6;
  // Defaults to 2 * degree + 4. Fix it across a refinement sequence to keep
  // the discrete trial spaces nested.
  std::optional<int> quadrature_degree;
  double max_gram_condition = 1e12;
};

struct Fem1DConfig {
  int cells = 512;
};

using SpectrumMethod = std::variant<RitzConfig, Fem1DConfig>;

struct SpectrumResult {
  std::vector<double> eigenvalues;  // λ_1 <= ... <= λ_k, λ_0 = 0 dropped
  std::string method;               // "ritz" or "fem1d"
  int ritz_degree = 0;
  int fem_cells = 0;
  double gram_condition = 0.0;
  // λ_j at the next coarser level (degree - 1, or cells / 2).
  std::vector<double> coarse_eigenvalues;
  std::vector<bool> converged;  // relative change <= 1e-4 from the coarse level
  double constant_mode = 0.0;   // discarded lowest eigenvalue
};

inline constexpr double kConvergenceTolerance = 1e-4;

SpectrumResult invariant_spectrum(const SymplecticPotential& g, int k, const SpectrumMethod& method = RitzConfig{});

// Ritz values at a sequence of degrees with a shared quadrature, for
// convergence studies. Entry i holds λ_1..λ_k at degrees[i].
std::vector<std::vector<double>> ritz_history(const SymplecticPotential& g, int k,
                                              const std::vector<int>& degrees);

struct BesselBound {
  int j = 0;
  double xi = 0.0;     // zero of J0 (odd j) or J0' (even j)
  double bound = 0.0;  // xi^2 / 2
};

// ξ_j is the ((j+1)/2)-th positive zero of J0 for odd j and the (j/2)-th
// positive zero of J0' for even j.
std::vector<BesselBound> bessel_bounds(int max_j);

// An S^1-invariant metric on S^2 with f = G^{-1} (the squared rotation
// radius) is a surface of revolution in R^3 iff |df/dx| <= 2 on P.
struct RevolutionCheck {
  std::size_t samples = 0;
  double max_slope = 0.0;
  bool embeddable = false;
};

RevolutionCheck revolution_check(const SymplecticPotential& g, std::size_t samples = 2001, double tol = 1e-9);

struct InvarianceReport {
  std::vector<double> original;
  std::vector<double> transformed;
  double max_relative_difference = 0.0;
  double tolerance = 1e-3;
  bool invariant = false;
};

// Canonical Ritz spectra of P and A(P) at the same degree.
InvarianceReport spectral_invariance_check(const DelzantPolytope& p, const IntMatrix& a, int k,
                                           const RitzConfig& cfg = {}, double tol = 1e-3);

}  // namespace toric

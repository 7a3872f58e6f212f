#pragma once

#include "toric/correction.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"
#include "toric/spectrum.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace toric {

// Coefficients of sum_{j,k} C_jk dx_j ^ dy_k at a point.
struct FormCoefficients {
  Eigen::VectorXd point;
  Eigen::MatrixXd C;
};

// 2i ddbar ν = sum_{j,k} d_j(G^{kl} d_l ν) dx_j ^ dy_k.
FormCoefficients ddbar_coefficients(const SymplecticPotential& g, const FieldJet& nu, const Eigen::VectorXd& x);
FormCoefficients ddbar_coefficients(const SymplecticPotential& g, const ScalarField& nu, const Eigen::VectorXd& x);

// α_r = -(1/4π) d_j(G_P^{kl} d_l log ℓ_r) dx_j ^ dy_k for the canonical
// potential, evaluated as d_j((G_P^{-1} μ_r)_k / ℓ_r).
FormCoefficients generator_form(const DelzantPolytope& p, std::size_t r, const Eigen::VectorXd& x);

// Fields used as ν.
ScalarField log_ell_field(const DelzantPolytope& p, std::size_t r);
// f_g = <x, grad g> - g, with grad f_g = G x and Hess f_g = G + sum_m x_m d_m G.
ScalarField legendre_field(const SymplecticPotential& g);
ScalarField polynomial_field(const Polynomial& poly);
// <m, x>
ScalarField linear_field(const Eigen::VectorXd& m);

struct H2Report {
  std::size_t dim = 0;            // d - rank N
  RationalMatrix kernel_basis;    // d x n: the normals matrix N
};

H2Report h2_dimension(const DelzantPolytope& p);

// Class over the α_r spanning set, defined modulo the column space of N.
struct ClassVector {
  RationalVector coefficients;
  RationalMatrix kernel_basis;
};

// [ω_P] / 2π = -sum_r λ_r α_r.
ClassVector symplectic_class(const DelzantPolytope& p);

// Exact test that a - b lies in the column space of the kernel basis.
bool same_class(const ClassVector& a, const ClassVector& b);

struct StandardRepresentativeReport {
  bool normal_sum_zero = false;
  std::size_t samples = 0;
  // max |C - I| of -2π sum_r λ_r α_r over the samples
  double max_deviation = 0.0;
  bool pointwise_standard = false;
};

// Whether the pointwise representative -2π sum_r λ_r α_r is the standard form.
StandardRepresentativeReport standard_representative(const DelzantPolytope& p,
                                                     const std::vector<Eigen::VectorXd>& samples,
                                                     double tol = 1e-10);

}  // namespace toric

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/fixtures.hpp"
#include "toric/spectrum.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

using namespace toric;
using doctest::Approx;

namespace {

ScalarField legendre_field(int k) {
  return [k](const Eigen::VectorXd& x) {
    const double t = x[0];
    // P_k'' from the Legendre equation (1 - t^2) P'' = 2t P' - k(k+1) P
    const double p = oracle::legendre_p(k, t), dp = oracle::legendre_dp(k, t);
    const double d2p = (2 * t * dp - k * (k + 1) * p) / (1 - t * t);
    return FieldJet{p, Eigen::VectorXd::Constant(1, dp), Eigen::MatrixXd::Constant(1, 1, d2p)};
  };
}

ScalarField constant_field(std::size_t n, double c) {
  return [n, c](const Eigen::VectorXd&) {
    const auto m = static_cast<Eigen::Index>(n);
    return FieldJet{c, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
  };
}

// psi = sum c_e x^e (two variables), with exact derivatives.
ScalarField poly2(std::vector<std::array<double, 3>> terms) {
  return [terms](const Eigen::VectorXd& x) {
    FieldJet f{0.0, Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 2)};
    for (const auto& [c, a, b] : terms) {
      auto pw = [](double v, double e) { return e < 0 ? 0.0 : std::pow(v, e); };
      f.value += c * pw(x[0], a) * pw(x[1], b);
      f.gradient[0] += c * a * pw(x[0], a - 1) * pw(x[1], b);
      f.gradient[1] += c * b * pw(x[0], a) * pw(x[1], b - 1);
      f.hessian(0, 0) += c * a * (a - 1) * pw(x[0], a - 2) * pw(x[1], b);
      f.hessian(1, 1) += c * b * (b - 1) * pw(x[0], a) * pw(x[1], b - 2);
      f.hessian(0, 1) += c * a * b * pw(x[0], a - 1) * pw(x[1], b - 1);
    }
    f.hessian(1, 0) = f.hessian(0, 1);
    return f;
  };
}

// -div(G^{-1} grad ψ) by central differences of an independently inverted Hessian.
double laplacian_fd(const SymplecticPotential& g, const ScalarField& psi, const Eigen::VectorXd& x, double h = 1e-4) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    auto flux = [&](double d) {
      Eigen::VectorXd y = x;
      y[j] += d;
      return (oracle::ginv_at(g, y) * psi(y).gradient)[j];
    };
    s += (flux(h) - flux(-h)) / (2 * h);
  }
  return -s;
}

std::vector<double> fubini_study_invariant(int count) {
  // (2/3) k (k + 2) with multiplicity k + 1
  std::vector<double> out;
  for (int k = 1; static_cast<int>(out.size()) < count; ++k)
    for (int m = 0; m <= k && static_cast<int>(out.size()) < count; ++m) out.push_back(2.0 * k * (k + 2) / 3.0);
  return out;
}

}  // namespace

TEST_CASE("Laplacian on the round sphere") {
  const auto s = canonical_potential(fixtures::sphere_interval());
  for (double t : {-0.8, -0.1, 0.35, 0.9}) {
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, t);
    CHECK(laplacian_apply(s, legendre_field(1), x) == Approx(2 * t));
    CHECK(laplacian_apply(s, constant_field(1, 3.0), x) == Approx(0.0));
    for (int k = 2; k <= 5; ++k) CHECK(laplacian_apply(s, legendre_field(k), x) == Approx(k * (k + 1) * oracle::legendre_p(k, t)));
  }
}

TEST_CASE("Laplacian agrees with the divergence form") {
  const auto psi = poly2({{1.0, 1, 0}, {0.5, 1, 1}, {-0.3, 0, 3}, {0.2, 2, 2}});
  std::vector<SymplecticPotential> gs{canonical_potential(fixtures::cp2_triangle()), canonical_potential(fixtures::hexagon()),
                                      add_correction(canonical_potential(fixtures::cp2_blowup_4gon()), CorrectionTerm::calabi_blowup())};
  unsigned seed = 3;
  for (const auto& g : gs) {
    for (const auto& x : oracle::random_interior(g.polytope(), 10, 0.1, seed++)) {
      const double l = laplacian_apply(g, psi, x);
      CHECK(l == Approx(laplacian_fd(g, psi, x)).epsilon(1e-6));
    }
  }
  // degree-one functions are Fubini-Study eigenfunctions
  const auto c = canonical_potential(fixtures::cp2_triangle());
  for (const auto& x : oracle::random_interior(fixtures::cp2_triangle(), 10, 1e-3, 99)) {
    CHECK(laplacian_apply(c, poly2({{1.0, 1, 0}}), x) == Approx(2 * x[0]));
    CHECK(laplacian_apply(c, poly2({{1.0, 1, 0}, {-2.0, 0, 1}}), x) == Approx(2 * (x[0] - 2 * x[1])));
  }
}

TEST_CASE("Rayleigh quotients") {
  const auto s = canonical_potential(fixtures::sphere_interval());
  CHECK(rayleigh_quotient(s, constant_field(1, 1.0)) == Approx(0.0));
  // ∫(1 - x^2) dx / ∫ x^2 dx = (4/3) / (2/3)
  CHECK(rayleigh_quotient(s, legendre_field(1)) == Approx(2.0).epsilon(1e-12));
  CHECK(rayleigh_quotient(s, legendre_field(2)) == Approx(6.0).epsilon(1e-12));
  CHECK(rayleigh_quotient(s, legendre_field(3)) == Approx(12.0).epsilon(1e-12));
  try {
    rayleigh_quotient(s, constant_field(1, 0.0));
    FAIL("expected ZeroFunction");
  } catch (const ToricError& e) {
    CHECK(e.kind() == ErrorKind::ZeroFunction);
  }
  // on CP2, x1 is an eigenfunction of eigenvalue 2
  const auto c = canonical_potential(fixtures::cp2_triangle());
  CHECK(rayleigh_quotient(c, poly2({{1.0, 1, 0}})) == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("round sphere spectrum") {
  const auto s = canonical_potential(fixtures::sphere_interval());
  const auto ritz = invariant_spectrum(s, 3, RitzConfig{6});
  REQUIRE(ritz.eigenvalues.size() == 3);
  for (int j = 1; j <= 3; ++j) CHECK(ritz.eigenvalues[static_cast<std::size_t>(j - 1)] == Approx(j * (j + 1)).epsilon(1e-4));
  CHECK(ritz.method == "ritz");
  CHECK(ritz.ritz_degree == 6);
  CHECK(std::abs(ritz.constant_mode) <= 1e-10);

  const auto fem = invariant_spectrum(s, 5, Fem1DConfig{512});
  REQUIRE(fem.eigenvalues.size() == 5);
  for (int j = 1; j <= 5; ++j) CHECK(fem.eigenvalues[static_cast<std::size_t>(j - 1)] == Approx(j * (j + 1)).epsilon(1e-5));
  for (bool c : fem.converged) CHECK(c);
  CHECK(fem.method == "fem1d");
  CHECK(fem.fem_cells == 512);
  CHECK(fem.eigenvalues[0] < bessel_bounds(1)[0].bound);
}

TEST_CASE("CP2 spectrum and Ritz monotonicity") {
  const auto c = canonical_potential(fixtures::cp2_triangle());
  const auto expected = fubini_study_invariant(9);
  std::vector<double> prev;
  for (int d : {4, 6, 8}) {
    const auto r = invariant_spectrum(c, 1, RitzConfig{d});
    CHECK(r.eigenvalues[0] == Approx(2.0).epsilon(1e-3));
    if (!prev.empty()) CHECK(r.eigenvalues[0] <= prev[0] + 1e-10);
    prev = r.eigenvalues;
  }
  const auto r = invariant_spectrum(c, 9, RitzConfig{6});
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r.eigenvalues[i] == Approx(expected[i]).epsilon(1e-8));
  for (double v : r.eigenvalues) CHECK(v >= 0.0);

  // eigenfunctions of the blow-up are not polynomial: refinement lowers the values
  const auto b = canonical_potential(fixtures::cp2_blowup_4gon());
  const auto hist = ritz_history(b, 4, {2, 3, 4, 5, 6, 7});
  for (std::size_t i = 1; i < hist.size(); ++i)
    for (std::size_t j = 0; j < hist[i].size() && j < hist[i - 1].size(); ++j) CHECK(hist[i][j] <= hist[i - 1][j] + 1e-10);
}

TEST_CASE("spectrum errors") {
  const auto c = canonical_potential(fixtures::cp2_triangle());
  try {
    invariant_spectrum(c, 2, RitzConfig{8, std::nullopt, 1e3});
    FAIL("expected IllConditionedGram");
  } catch (const ToricError& e) {
    CHECK(e.kind() == ErrorKind::IllConditionedGram);
  }
  CHECK_THROWS_AS(invariant_spectrum(c, 0), ToricError);
  CHECK_THROWS_AS(invariant_spectrum(c, 2, Fem1DConfig{64}), ToricError);
  CHECK_THROWS_AS(invariant_spectrum(c, 2, RitzConfig{0}), ToricError);
}

TEST_CASE("scaling the interval scales eigenvalues by 1/c") {
  for (const Rational c : {Rational(2), Rational(1, 2), Rational(3, 2)}) {
    const auto p = build_polytope(1, {{{1}, -c}, {{-1}, -c}}, "");
    const auto r = invariant_spectrum(canonical_potential(p), 3, Fem1DConfig{512});
    const double cd = to_double(c);
    for (int j = 1; j <= 3; ++j) CHECK(r.eigenvalues[static_cast<std::size_t>(j - 1)] == Approx(j * (j + 1) / cd).epsilon(1e-5));
  }
}

TEST_CASE("Bessel bound table") {
  const auto b = bessel_bounds(8);
  REQUIRE(b.size() == 8);
  for (const auto& e : b) {
    const double xi = (e.j % 2 == 1) ? boost::math::cyl_bessel_j_zero(0.0, (e.j + 1) / 2)
                                     : boost::math::cyl_bessel_j_zero(1.0, e.j / 2);  // zeros of J0' = -J1
    CHECK(std::abs(e.xi - xi) <= 1e-10);
    CHECK(e.bound == Approx(xi * xi / 2).epsilon(1e-12));
  }
  CHECK(b[0].bound == Approx(2.89).epsilon(2e-3));
  CHECK(b[1].xi == Approx(3.8317).epsilon(1e-4));
  CHECK(b[1].bound == Approx(7.34).epsilon(1e-3));
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i].bound > b[i - 1].bound);
  CHECK_THROWS_AS(bessel_bounds(0), ToricError);
}

TEST_CASE("bounds hold on the surface-of-revolution family") {
  const auto bounds = bessel_bounds(3);
  for (double a : {0.0, 0.5, 2.0, 10.0}) {
    const auto g = add_correction(canonical_potential(fixtures::sphere_interval()), CorrectionTerm(Polynomial(1, {{{2}, 0.5 * a}})));
    const auto rev = revolution_check(g);
    CHECK(rev.embeddable);
    const auto r = invariant_spectrum(g, 3, Fem1DConfig{512});
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.eigenvalues[j] < bounds[j].bound);
  }
  // outside the hypothesis the first invariant eigenvalue is not bounded by 2.89
  const auto g = add_correction(canonical_potential(fixtures::sphere_interval()), CorrectionTerm(Polynomial(1, {{{2}, -0.25}})));
  CHECK(!revolution_check(g).embeddable);
  CHECK(invariant_spectrum(g, 1, Fem1DConfig{512}).eigenvalues[0] > bounds[0].bound);
  CHECK_THROWS_AS(revolution_check(canonical_potential(fixtures::cp2_triangle())), ToricError);
}

TEST_CASE("spectral invariance") {
  const auto tri = fixtures::cp2_triangle();
  const auto same = spectral_invariance_check(tri, {{1, 0}, {0, 1}}, 2);
  CHECK(same.invariant);
  CHECK(same.max_relative_difference <= 1e-12);
  const auto sheared = spectral_invariance_check(tri, {{1, 1}, {0, 1}}, 2, RitzConfig{6});
  CHECK(sheared.invariant);
  CHECK(sheared.max_relative_difference <= 1e-3);
  const auto blow = spectral_invariance_check(fixtures::cp2_blowup_4gon(), {{2, 1}, {1, 1}}, 3, RitzConfig{6});
  CHECK(blow.max_relative_difference <= 1e-3);

  const auto base = invariant_spectrum(canonical_potential(tri), 3, RitzConfig{6}).eigenvalues;
  const auto moved = invariant_spectrum(canonical_potential(translate(tri, {Rational(1, 3), Rational(-1, 2)})), 3, RitzConfig{6}).eigenvalues;
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(moved[i] == Approx(base[i]).epsilon(1e-10));
  CHECK_THROWS_AS(spectral_invariance_check(tri, {{2, 0}, {0, 1}}, 2), ToricError);
}

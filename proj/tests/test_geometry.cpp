#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/fixtures.hpp"
#include "toric/geometry.hpp"

#include <cmath>

using namespace toric;
using doctest::Approx;

namespace {

Eigen::VectorXd v2(double a, double b) {
  Eigen::VectorXd x(2);
  x << a, b;
  return x;
}

CorrectionTerm poly(std::size_t dim, std::vector<Monomial> terms) { return CorrectionTerm(Polynomial(dim, std::move(terms))); }

Eigen::MatrixXd to_matrix(const IntMatrix& a) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(a[i][j]);
  return m;
}

}  // namespace

TEST_CASE("metric samples") {
  const auto s = canonical_potential(fixtures::sphere_interval());
  for (double x : {-0.7, 0.0, 0.4}) {
    const auto m = metric_sample(s, Eigen::VectorXd::Constant(1, x));
    CHECK(m.Ginv(0, 0) == Approx(1 - x * x));
    CHECK(m.detG == Approx(1 / (1 - x * x)));
    CHECK(m.dGinv(0, 0, 0) == Approx(-2 * x));
    CHECK(m.d2Ginv(0, 0, 0, 0) == Approx(-2.0));
  }
  const auto c = canonical_potential(fixtures::cp2_triangle());
  const auto m = metric_sample(c, v2(0, 0));
  Eigen::Matrix2d expected;
  expected << 2, -1, -1, 2;
  CHECK((m.Ginv - (2.0 / 3.0) * expected).norm() <= 1e-14);
  CHECK((m.G * m.Ginv - Eigen::Matrix2d::Identity()).norm() <= 1e-10);
}

TEST_CASE("derivatives of G^{-1} match finite differences") {
  std::vector<SymplecticPotential> gs;
  for (const auto& n : fixtures::names()) gs.push_back(canonical_potential(fixtures::by_name(n)));
  gs.push_back(add_correction(canonical_potential(fixtures::cp2_blowup_4gon()), CorrectionTerm::calabi_blowup()));
  unsigned seed = 40;
  for (const auto& g : gs) {
    const Eigen::Index n = static_cast<Eigen::Index>(g.dim());
    for (const auto& x : oracle::random_interior(g.polytope(), 10, 0.05, seed++)) {
      const auto m = metric_sample(g, x);
      const double h = 1e-3 * std::min(1.0, oracle::min_ell(g.polytope(), x));
      auto ginv_flat = [&](const Eigen::VectorXd& y) {
        const Eigen::MatrixXd gi = oracle::ginv_at(g, y);
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(gi.data(), gi.size()));
      };
      auto dginv_flat = [&](const Eigen::VectorXd& y, Eigen::Index j) {
        const auto ms = metric_sample(g, y, 3);
        Eigen::VectorXd out(n * n);
        for (Eigen::Index l = 0; l < n; ++l)
          for (Eigen::Index k = 0; k < n; ++k) out[l * n + k] = ms.dGinv(j, k, l);
        return out;
      };
      double scale1 = 1.0, err1 = 0.0, scale2 = 1.0, err2 = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::VectorXd fd = oracle::central_diff(ginv_flat, x, j, h);
        for (Eigen::Index l = 0; l < n; ++l)
          for (Eigen::Index k = 0; k < n; ++k) {
            err1 = std::max(err1, std::abs(fd[l * n + k] - m.dGinv(j, k, l)));
            scale1 = std::max(scale1, std::abs(m.dGinv(j, k, l)));
          }
        for (Eigen::Index mm = 0; mm < n; ++mm) {
          const Eigen::VectorXd fd2 = oracle::central_diff([&](const Eigen::VectorXd& y) { return dginv_flat(y, j); }, x, mm, h);
          for (Eigen::Index l = 0; l < n; ++l)
            for (Eigen::Index k = 0; k < n; ++k) {
              err2 = std::max(err2, std::abs(fd2[l * n + k] - m.d2Ginv(j, mm, k, l)));
              scale2 = std::max(scale2, std::abs(m.d2Ginv(j, mm, k, l)));
            }
        }
      }
      CHECK(err1 / scale1 <= 1e-6);
      CHECK(err2 / scale2 <= 1e-6);
    }
  }
}

TEST_CASE("metric sample refuses non-convex points") {
  const auto g = add_correction(canonical_potential(fixtures::cp2_triangle()), poly(2, {{{2, 0}, -5.0}, {{0, 2}, -5.0}}));
  try {
    metric_sample(g, v2(0, 0));
    FAIL("expected NotPositiveDefinite");
  } catch (const ToricError& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
  }
}

TEST_CASE("constant curvature fixtures") {
  const auto s = canonical_potential(fixtures::sphere_interval());
  for (const auto& x : oracle::random_interior(fixtures::sphere_interval(), 100, 1e-6, 1)) {
    CHECK(std::abs(scalar_curvature(s, x) - 1.0) <= 1e-8);
    CHECK(std::abs(scalar_curvature_alt(s, x) - 1.0) <= 1e-8);
  }
  const auto c = canonical_potential(fixtures::cp2_triangle());
  for (const auto& x : oracle::random_interior(fixtures::cp2_triangle(), 100, 1e-6, 2)) {
    CHECK(std::abs(scalar_curvature(c, x) - 2.0) <= 1e-8);
    CHECK(std::abs(scalar_curvature_alt(c, x) - 2.0) <= 1e-8);
  }
}

TEST_CASE("curvature agrees with finite differences of G^{-1}") {
  std::vector<SymplecticPotential> gs;
  for (const auto& n : fixtures::names()) gs.push_back(canonical_potential(fixtures::by_name(n)));
  gs.push_back(add_correction(canonical_potential(fixtures::hexagon()), poly(2, {{{2, 2}, 0.05}, {{3, 0}, 0.02}})));
  unsigned seed = 60;
  for (const auto& g : gs) {
    for (const auto& x : oracle::random_interior(g.polytope(), 8, 0.2, seed++)) {
      const double s = scalar_curvature(g, x);
      CHECK(std::abs(s - oracle::abreu_fd(g, x)) <= 1e-5 * (1 + std::abs(s)));
    }
  }
}

TEST_CASE("regression values") {
  const auto b = canonical_potential(fixtures::cp2_blowup_4gon());
  CHECK(scalar_curvature(b, v2(0, 0)) == Approx(204.0 / 125.0).epsilon(1e-12));
  const auto h = canonical_potential(fixtures::hexagon());
  CHECK(scalar_curvature(h, v2(0, 0)) == Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(scalar_curvature(h, v2(0.3, 0.1)) == Approx(1.404349).epsilon(1e-6));
  CHECK(scalar_curvature(h, v2(-0.3, 0.5)) == Approx(1.449357).epsilon(1e-6));
  const auto c = add_correction(b, CorrectionTerm::calabi_blowup());
  for (const auto& x : oracle::random_interior(fixtures::cp2_blowup_4gon(), 50, 1e-4, 3)) {
    CHECK(scalar_curvature(c, x) == Approx(oracle::calabi_scalar(x[0], x[1])).epsilon(1e-9));
  }
}

TEST_CASE("Abreu and log-det forms agree") {
  std::vector<SymplecticPotential> gs;
  for (const auto& n : fixtures::names()) gs.push_back(canonical_potential(fixtures::by_name(n)));
  gs.push_back(add_correction(canonical_potential(fixtures::cp2_blowup_4gon()), CorrectionTerm::calabi_blowup()));
  gs.push_back(add_correction(canonical_potential(fixtures::cp2_triangle()), poly(2, {{{4, 0}, 0.03}, {{1, 3}, -0.02}, {{2, 1}, 0.05}})));
  unsigned seed = 80;
  for (const auto& g : gs) {
    for (const auto& x : oracle::random_interior(g.polytope(), 30, 1e-3, seed++)) {
      const double s = scalar_curvature(g, x), alt = scalar_curvature_alt(g, x);
      CHECK(std::abs(s - alt) <= 1e-8 * (1 + std::abs(s)));
    }
  }
}

TEST_CASE("affine gauge invariance of curvature") {
  const auto g = canonical_potential(fixtures::hexagon());
  const auto a = add_correction(g, poly(2, {{{0, 0}, 1.5}, {{1, 0}, -0.7}, {{0, 1}, 2.0}}));
  for (const auto& x : oracle::random_interior(fixtures::hexagon(), 30, 1e-2, 9)) {
    CHECK(std::abs(scalar_curvature(g, x) - scalar_curvature(a, x)) <= 1e-14);
  }
}

TEST_CASE("translation and SL(2,Z) equivariance") {
  const auto p = fixtures::cp2_blowup_4gon();
  const auto g = canonical_potential(p);
  const RationalVector t{Rational(1, 2), Rational(-1, 3)};
  const Eigen::VectorXd tv = v2(0.5, -1.0 / 3.0);
  const auto gt = canonical_potential(translate(p, t));
  const IntMatrix a{{2, 1}, {1, 1}};
  const auto ga = canonical_potential(sl_transform(p, a));
  const Eigen::MatrixXd am = to_matrix(a);
  for (const auto& x : oracle::random_interior(p, 30, 1e-2, 10)) {
    const double s = scalar_curvature(g, x);
    CHECK(scalar_curvature(gt, x + tv) == Approx(s).epsilon(1e-10));
    CHECK(scalar_curvature(ga, am * x) == Approx(s).epsilon(1e-10));
  }
  const auto e = extremality_test(g), et = extremality_test(gt), ea = extremality_test(ga);
  CHECK(e.is_extremal == et.is_extremal);
  CHECK(e.is_extremal == ea.is_extremal);
}

TEST_CASE("extremality tests") {
  const auto s = extremality_test(canonical_potential(fixtures::sphere_interval()));
  CHECK(s.is_extremal);
  CHECK(s.constant == Approx(1.0));
  CHECK(std::abs(s.gradient[0]) <= 1e-9);

  const auto b = extremality_test(canonical_potential(fixtures::cp2_blowup_4gon()));
  CHECK(!b.is_extremal);
  CHECK(b.residual_sup > 1e-3);

  const auto c = extremality_test(add_correction(canonical_potential(fixtures::cp2_blowup_4gon()), CorrectionTerm::calabi_blowup()));
  CHECK(c.is_extremal);
  CHECK(c.residual_sup <= 1e-6);
  // S = 3(2(x1 + x2) + 7)/11
  CHECK(c.constant == Approx(21.0 / 11.0).epsilon(1e-9));
  CHECK(c.gradient[0] == Approx(6.0 / 11.0).epsilon(1e-9));
  CHECK(c.gradient[1] == Approx(6.0 / 11.0).epsilon(1e-9));

  const auto loose = extremality_test(canonical_potential(fixtures::cp2_blowup_4gon()), SamplingConfig{}, 10.0);
  CHECK(loose.is_extremal);
  CHECK(loose.tolerance == 10.0);
  CHECK_THROWS_AS(extremality_test(canonical_potential(fixtures::hexagon()), std::vector<Eigen::VectorXd>{}), ToricError);
}

TEST_CASE("hexagon fixture check") {
  const auto r = hexagon_fixture_check();
  CHECK(r.non_extremal);
  CHECK(!r.extremality.is_extremal);
  CHECK(r.extremality.residual_sup >= 1e-3);
  CHECK(std::isfinite(r.scalar_at_center));
  CHECK(r.symmetry_defect <= 1e-10);
  CHECK(r.translation_defect <= 1e-10);
}

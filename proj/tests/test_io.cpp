#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/fixtures.hpp"
#include "toric/geometry.hpp"
#include "toric/io.hpp"

#include <string>

using namespace toric;
using doctest::Approx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ToricError& e) {
    return e.kind();
  }
  FAIL("expected a ToricError");
  return ErrorKind::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ToricError& e) {
    return e.what();
  }
  return {};
}

const char* kTriangle = R"({
  "dim": 2,
  "name": "tri",
  "facets": [
    {"normal": [1, 0], "offset": -1},
    {"normal": [0, 1], "offset": "-1"},
    {"normal": [-1, -1], "offset": -1.0}
  ]
})";

}  // namespace

TEST_CASE("polytope parsing") {
  const auto p = parse_polytope(kTriangle);
  CHECK(p.dim() == 2);
  CHECK(p.name() == "tri");
  REQUIRE(p.num_facets() == 3);
  for (const auto& f : p.facets()) CHECK(f.offset == -1);
  CHECK(p.vertices().size() == 3);
}

TEST_CASE("decimal offsets are read exactly") {
  const auto p = parse_polytope(R"({"dim": 1, "facets": [{"normal": [1], "offset": -0.1}, {"normal": [-1], "offset": -2.35e-1}]})");
  CHECK(p.facets()[0].offset == Rational(-1, 10));
  CHECK(p.facets()[1].offset == Rational(-47, 200));
  const auto q = parse_polytope(R"({"dim": 1, "facets": [{"normal": [1], "offset": "-1/3"}, {"normal": [-1], "offset": "-0.25"}]})");
  CHECK(q.facets()[0].offset == Rational(-1, 3));
  CHECK(q.facets()[1].offset == Rational(-1, 4));
}

TEST_CASE("schema violations") {
  auto bad = [](const char* text) { return kind_of([&] { parse_polytope(text); }); };
  CHECK(bad(R"({"facets": []})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 1, "facets": [], "extra": 1})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 0, "facets": []})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 1.5, "facets": []})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 2, "facets": [{"normal": [1], "offset": 0}]})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 1, "facets": [{"normal": [1.5], "offset": 0}]})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 1, "facets": [{"normal": [1], "offset": "abc"}]})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"dim": 1, "facets": [{"normal": [1], "offset": 0, "offset": 1}]})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"([1, 2])") == ErrorKind::SchemaViolation);
  const auto msg = message_of([] { parse_polytope(R"({"dim": 1, "facets": [{"normal": [1]}]})", "p.json"); });
  CHECK(msg.find("p.json") != std::string::npos);
  CHECK(msg.find("/facets/0/offset") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers") {
  const auto msg = message_of([] { parse_polytope("{\n  \"dim\": 1,\n  \"facets\": [,]\n}", "broken.json"); });
  CHECK(msg.find("broken.json:3:") != std::string::npos);
  CHECK(kind_of([] { parse_polytope("{\"dim\": 1,"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { load_polytope("/nonexistent/polytope.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("Delzant errors pass through the parser") {
  CHECK(kind_of([] { parse_polytope(R"({"dim": 2, "facets": [{"normal": [2, 0], "offset": 0}, {"normal": [0, 1], "offset": 0}, {"normal": [-1, -1], "offset": -1}]})"); }) ==
        ErrorKind::NonPrimitiveNormal);
  CHECK(kind_of([] { parse_polytope(R"({"dim": 1, "facets": [{"normal": [1], "offset": 0}]})"); }) == ErrorKind::Unbounded);
}

TEST_CASE("polytope JSON round trip") {
  for (const auto& name : fixtures::names()) {
    const auto p = fixtures::by_name(name);
    const auto q = parse_polytope(polytope_json(p).dump());
    CHECK(q.name() == p.name());
    REQUIRE(q.num_facets() == p.num_facets());
    for (std::size_t r = 0; r < p.num_facets(); ++r) {
      CHECK(q.facets()[r].normal == p.facets()[r].normal);
      CHECK(q.facets()[r].offset == p.facets()[r].offset);
    }
  }
  const auto t = translate(fixtures::cp2_triangle(), {Rational(1, 3), Rational(-2, 7)});
  CHECK(parse_polytope(polytope_json(t).dump()).facets()[2].offset == t.facets()[2].offset);
}

TEST_CASE("correction parsing") {
  CHECK(parse_correction(R"({"kind": "zero"})", 2).kind_name() == "zero");
  const auto poly = parse_correction(R"({"kind": "polynomial", "terms": [{"exponents": [2, 0], "coeff": 0.5}, {"exponents": [0, 1], "coeff": -1}]})", 2);
  const auto* pp = std::get_if<Polynomial>(&poly.kind());
  REQUIRE(pp != nullptr);
  Eigen::VectorXd x(2);
  x << 0.3, -0.2;
  CHECK((*pp)(x) == Approx(0.5 * 0.09 + 0.2));

  // the named ridge and its explicit pole form give the same curvature
  const auto named = parse_correction(R"({"kind": "ridge", "direction": [1, 1], "profile": "calabi-blowup", "scale": 0.5})", 2);
  const auto b = canonical_potential(fixtures::cp2_blowup_4gon());
  const auto round = parse_correction(correction_json(named).dump(), 2);
  const auto gb = add_correction(b, named), gr = add_correction(b, round);
  for (const auto& y : oracle::random_interior(fixtures::cp2_blowup_4gon(), 20, 1e-3, 7)) {
    CHECK(scalar_curvature(gb, y) == Approx(oracle::calabi_scalar(y[0], y[1])).epsilon(1e-9));
    CHECK(scalar_curvature(gr, y) == Approx(scalar_curvature(gb, y)).epsilon(1e-12));
  }
  CHECK(load_correction("calabi-blowup", 2).kind_name() == "ridge");
  CHECK(load_correction("zero", 1).kind_name() == "zero");
  CHECK(kind_of([] { load_correction("calabi-blowup", 1); }) == ErrorKind::InvalidArgument);

  auto bad = [](const char* text, std::size_t dim = 2) { return kind_of([&] { parse_correction(text, dim); }); };
  CHECK(bad(R"({"kind": "spline"})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"terms": []})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"kind": "polynomial", "terms": [{"exponents": [1], "coeff": 1}]})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"kind": "polynomial", "terms": [{"exponents": [-1, 0], "coeff": 1}]})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"kind": "ridge", "direction": [1, 1], "profile": "unknown"})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"kind": "ridge", "direction": [1], "profile": "calabi-blowup"})") == ErrorKind::SchemaViolation);
  CHECK(bad(R"({"kind": "zero", "extra": 0})") == ErrorKind::SchemaViolation);
}

TEST_CASE("rational profile forms") {
  // d2 = 1/(t + 3) - 1/(t + 5) written both ways
  const auto rat = parse_correction(
      R"({"kind": "ridge", "direction": [1], "profile": {"d2_rational": {"numerator_coeffs": [2], "denominator_coeffs": [15, 8, 1]}}})", 1);
  const auto poles = parse_correction(
      R"({"kind": "ridge", "direction": [1], "profile": {"poles": [{"coeff": 1, "pole": -3}, {"coeff": -1, "pole": -5}]}})", 1);
  const auto g = canonical_potential(fixtures::sphere_interval());
  const auto a = add_correction(g, rat), b = add_correction(g, poles);
  for (double t : {-0.7, 0.0, 0.6}) {
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, t);
    const double d2 = 1 / (t + 3) - 1 / (t + 5);
    CHECK(a.jet(x, 2).hessian(0, 0) - g.jet(x, 2).hessian(0, 0) == Approx(d2).epsilon(1e-12));
    CHECK(b.jet(x, 2).hessian(0, 0) - g.jet(x, 2).hessian(0, 0) == Approx(d2).epsilon(1e-12));
  }
  CHECK(kind_of([] {
          parse_correction(R"({"kind": "ridge", "direction": [1], "profile": {"poles": [], "d2_rational": {}}})", 1);
        }) == ErrorKind::SchemaViolation);
}

TEST_CASE("point lists") {
  const auto a = parse_points("# header\n0.1, 0.2\n\n-0.3 0.4  # trailing\n", 2);
  REQUIRE(a.size() == 2);
  CHECK(a[1][0] == -0.3);
  CHECK(a[1][1] == 0.4);
  const auto b = parse_points("[[0.1, 0.2], [-0.3, 0.4]]", 2);
  REQUIRE(b.size() == 2);
  CHECK(b[0][1] == 0.2);
  const auto msg = message_of([] { parse_points("0 0\n1 x\n", 2, "pts.txt"); });
  CHECK(msg.find("pts.txt:2:") != std::string::npos);
  CHECK(kind_of([] { parse_points("0 0 0\n", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_points("[[0, 0, 0]]", 2); }) == ErrorKind::SchemaViolation);
}

TEST_CASE("reports are deterministic and versioned") {
  const auto p = fixtures::hexagon();
  const auto j1 = report("cohomology", cohomology_json(p)).dump(2);
  const auto j2 = report("cohomology", cohomology_json(p)).dump(2);
  CHECK(j1 == j2);
  const auto r = report("describe", combinatorics_json(p));
  CHECK(r["schema_version"] == kSchemaVersion);
  CHECK(r["command"] == "describe");
  CHECK(r["normal_sum_zero"] == true);
  const auto csv = flatten_csv(r);
  CHECK(!csv.empty());
  CHECK(flatten_csv(r) == csv);
}

TEST_CASE("error JSON") {
  const ToricError e(ErrorKind::BoundaryPoint, "on facet 2", 2);
  const auto j = error_json(e);
  CHECK(j["kind"] == "BoundaryPoint");
  CHECK(j["index"] == 2);
  CHECK(is_validation_error(ErrorKind::ParseError));
  CHECK(is_validation_error(ErrorKind::NonSimpleVertex));
}

#include "toric/fixtures.hpp"

#include "toric/errors.hpp"

namespace toric::fixtures {

DelzantPolytope sphere_interval() {
  return build_polytope(1, {{{1}, Rational(-1)}, {{-1}, Rational(-1)}}, "sphere-interval");
}

DelzantPolytope cp2_triangle() {
  return build_polytope(2, {{{1, 0}, Rational(-1)}, {{0, 1}, Rational(-1)}, {{-1, -1}, Rational(-1)}},
                        "cp2-triangle");
}

DelzantPolytope cp2_blowup_4gon() {
  return build_polytope(2,
                        {{{1, 0}, Rational(-1)},
                         {{0, 1}, Rational(-1)},
                         {{-1, -1}, Rational(-1)},
                         {{1, 1}, Rational(-1)}},
                        "cp2-blowup-4gon");
}

DelzantPolytope hexagon() {
  return build_polytope(2,
                        {{{1, 0}, Rational(-1)},
                         {{-1, 0}, Rational(-1)},
                         {{0, 1}, Rational(-1)},
                         {{0, -1}, Rational(-1)},
                         {{-1, -1}, Rational(-1)},
                         {{1, 1}, Rational(-1)}},
                        "hexagon");
}

std::vector<std::string> names() {
  return {"sphere-interval", "cp2-triangle", "cp2-blowup-4gon", "hexagon"};
}

DelzantPolytope by_name(const std::string& name) {
  if (name == "sphere-interval") return sphere_interval();
  if (name == "cp2-triangle") return cp2_triangle();
  if (name == "cp2-blowup-4gon") return cp2_blowup_4gon();
  if (name == "hexagon") return hexagon();
  throw ToricError(ErrorKind::InvalidArgument, "unknown fixture '" + name + "'");
}

}  // namespace toric::fixtures

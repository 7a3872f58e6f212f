#pragma once

#include "toric/polytope.hpp"

#include <string>
#include <vector>

// Named polytopes with offsets exactly as in the classical examples.
namespace toric::fixtures {

// [-1, 1]: ℓ_{-1} = 1 + x, ℓ_1 = 1 - x. Canonical metric is the round S^2.
DelzantPolytope sphere_interval();

// ℓ_1 = 1 + x1, ℓ_2 = 1 + x2, ℓ_3 = 1 - x1 - x2 (Fubini-Study CP^2).
DelzantPolytope cp2_triangle();

// The CP^2 triangle cut by ℓ_{-3} = 1 + x1 + x2 (blow-up of CP^2 at a point).
DelzantPolytope cp2_blowup_4gon();

// ℓ_{±1} = 1 ± x1, ℓ_{±2} = 1 ± x2, ℓ_{±3} = 1 ∓ (x1 + x2), in that order.
DelzantPolytope hexagon();

std::vector<std::string> names();

// Throws InvalidArgument for an unknown name.
DelzantPolytope by_name(const std::string& name);

}  // namespace toric::fixtures

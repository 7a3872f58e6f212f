"""Kähler geometry of toric manifolds on Delzant polytopes."""

from ._core import (
    Polytope,
    Potential,
    ToricError,
    bessel_bounds,
    cohomology,
    ddbar_legendre,
    fixture_names,
    generator_form,
    spectral_invariance,
)

__all__ = [
    "Polytope",
    "Potential",
    "ToricError",
    "bessel_bounds",
    "cohomology",
    "ddbar_legendre",
    "fixture_names",
    "generator_form",
    "spectral_invariance",
]

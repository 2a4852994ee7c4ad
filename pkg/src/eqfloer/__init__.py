"""Exact algebra for equivariant instanton Floer complexes and definite lattices."""

from .complex import (
    ADMISSIBLE, HOMOLOGY_SPHERE, FloerComplex, Generator, build_complex, reverse_orientation,
    validate_complex,
)
from .floer import (
    cohomology, delta_tower, euler_and_casson, h_invariant, nilpotency_index, periodicity_report,
    reduced_group, u_on_cohomology,
)
from .linalg import GF, QQ, ZZ, RingSpec, smith_normal_form

__all__ = [
    "ADMISSIBLE", "HOMOLOGY_SPHERE", "FloerComplex", "Generator", "build_complex",
    "reverse_orientation", "validate_complex", "cohomology", "delta_tower", "euler_and_casson",
    "h_invariant", "nilpotency_index", "periodicity_report", "reduced_group", "u_on_cohomology",
    "GF", "QQ", "ZZ", "RingSpec", "smith_normal_form",
]

"""gerbekit: circle-valued cocycle geometry on finite simplicial complexes.

The package computes with the local (cocycle) presentation of gerbes:
validation of circle 2-cocycles, Dixmier-Douady classes, trivializations,
Bockstein and finite lifting obstructions, discrete connective structures,
surface holonomy, and the Wess-Zumino-Witten term for maps into SU(2).

Nerve cohomology is interpreted as cohomology of the underlying space, so
inputs should come from good covers.
"""

from .cochains import (
    CIRCLE,
    INTEGERS,
    REALS,
    Cochain,
    CoefficientSystem,
    CyclicOfOrder,
    coboundary,
    constant_cochain,
    identity_cochain,
    pullback_cochain,
    system_from_tag,
)
from .cohomology import (
    ClassCoordinates,
    CohomologyGroup,
    cocycle_class,
    cohomology_group,
    solve_integer_coboundary,
)
from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    build_complex,
    coboundary_matrix,
    simplex_boundary,
    suspension,
    torsion_sphere,
    wrapped_disk,
)
from .snf import SmithDecomposition, integer_matrix, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "CIRCLE",
    "INTEGERS",
    "REALS",
    "ClassCoordinates",
    "Cochain",
    "CoefficientSystem",
    "CohomologyGroup",
    "CyclicOfOrder",
    "SimplicialComplex",
    "SimplicialMap",
    "SmithDecomposition",
    "build_complex",
    "coboundary",
    "coboundary_matrix",
    "cocycle_class",
    "cohomology_group",
    "constant_cochain",
    "identity_cochain",
    "integer_matrix",
    "pullback_cochain",
    "simplex_boundary",
    "smith_normal_form",
    "solve_integer_coboundary",
    "suspension",
    "system_from_tag",
    "torsion_sphere",
    "wrapped_disk",
]

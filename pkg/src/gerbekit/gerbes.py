"""Circle-valued 2-cocycles on a nerve: the local presentation of a gerbe.

A LocalGerbe stores one unit-modulus value per 2-simplex with the cocycle
identity delta(g) = 1 holding on every 3-simplex.  Its characteristic class
lives in H^3(K, Z) and is extracted by lifting the phases to the reals: the
coboundary of the lift is an integer cocycle whose class is independent of
the branch choice.

With one value per simplex the image of that construction is exactly the
n-torsion of H^3 (the connecting-map image of the finite-coefficient
theory); free classes such as the degree-k class on a triangulated 3-sphere
require curvature data and are produced by the connective machinery instead.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .cochains import CIRCLE, INTEGERS, REALS, Cochain, coboundary, pullback_cochain
from .cohomology import (
    ClassCoordinates,
    CohomologyGroup,
    cochain_vector,
    cohomology_group,
    real_cochain_vector,
    real_vector_cochain,
    solve_integer_coboundary,
    vector_cochain,
)
from .complexes import SimplicialComplex, SimplicialMap, cached_coboundary_matrix
from .errors import (
    ContractViolationError,
    InconsistentInputError,
    NotACocycleError,
)

COCYCLE_TOL = 1e-10
INTEGRALITY_TOL = 1e-6
TRIVIALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class LocalGerbe:
    """Circle 2-cochain g on a nerve with delta(g) = 1 on every 3-simplex."""

    complex: SimplicialComplex
    g: Cochain

    def __post_init__(self):
        if self.g.complex != self.complex or self.g.degree != 2:
            raise ContractViolationError("gerbe data must be a degree-2 cochain on the nerve")
        if self.g.system is not CIRCLE:
            raise ContractViolationError("gerbe data must have circle coefficients")
        report = validate_cocycle(self.g, tol=COCYCLE_TOL)
        if report:
            worst = max(v for _, v in report)
            raise NotACocycleError(
                f"delta(g) != 1 on {len(report)} 3-simplices (worst deviation {worst:.2e})"
            )


@dataclass(frozen=True)
class LineCocycle:
    """Circle 1-cochain; when delta(h) = 1 it presents a line bundle on the base."""

    complex: SimplicialComplex
    h: Cochain

    def __post_init__(self):
        if self.h.complex != self.complex or self.h.degree != 1:
            raise ContractViolationError("line data must be a degree-1 cochain")
        if self.h.system is not CIRCLE:
            raise ContractViolationError("line data must have circle coefficients")


@dataclass(frozen=True)
class DixmierDouadyClass:
    """Class in H^3(K, Z): coordinates plus an integer representative cocycle."""

    group: CohomologyGroup
    coords: ClassCoordinates
    representative: Cochain

    @property
    def is_zero(self) -> bool:
        return self.coords.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, DixmierDouadyClass):
            return NotImplemented
        return self.group.complex == other.group.complex and self.coords == other.coords

    def __neg__(self) -> "DixmierDouadyClass":
        return DixmierDouadyClass(
            self.group, -self.coords, self.representative.inverse()
        )

    def __add__(self, other: "DixmierDouadyClass") -> "DixmierDouadyClass":
        if self.group.complex != other.group.complex:
            raise ContractViolationError("classes live on different complexes")
        return DixmierDouadyClass(
            self.group,
            self.coords + other.coords,
            self.representative.combine(other.representative),
        )


def validate_cocycle(g: Cochain, tol: float = COCYCLE_TOL):
    """All 3-simplices where |delta(g) - 1| exceeds tol, with deviations."""
    dg = coboundary(g)
    return [
        (simplex, abs(value - 1.0))
        for simplex, value in dg.values.items()
        if abs(value - 1.0) > tol
    ]


def validate_gerbe(g: Cochain | LocalGerbe, tol: float = COCYCLE_TOL):
    """Cocycle-violation report for raw circle 2-cochain data; empty = valid."""
    data = g.g if isinstance(g, LocalGerbe) else g
    return validate_cocycle(data, tol=tol)


def principal_lift(g: Cochain) -> Cochain:
    """Real 2-cochain a with exp(2*pi*i*a) = g and a in [0, 1) per simplex."""
    return g.map_values(lambda z: CIRCLE.angle_fraction(z), system=REALS)


def _integral_rounding(c: Cochain, tol: float) -> Cochain:
    rounded = {}
    for s, v in c.values.items():
        n = round(v)
        if abs(v - n) > tol:
            raise InconsistentInputError(
                f"coboundary of the lift is {v:.3e} on {s}, not within {tol:g} of an integer"
            )
        rounded[s] = int(n)
    return Cochain(c.complex, c.degree, INTEGERS, rounded)


def dd_class(gerbe: LocalGerbe) -> DixmierDouadyClass:
    """Characteristic class of the gerbe in H^3(K, Z).

    Lifts g through the principal branch, rounds the coboundary of the lift
    to an integer 3-cocycle and reduces it to class coordinates.  The result
    does not depend on the branch: shifting the lift by any integer cochain
    changes the representative by a coboundary only.
    """
    lift = principal_lift(gerbe.g)
    c = _integral_rounding(coboundary(lift), INTEGRALITY_TOL)
    group = cohomology_group(gerbe.complex, 3)
    return DixmierDouadyClass(group, group.coordinates_of(c), c)


def dual(gerbe: LocalGerbe) -> LocalGerbe:
    """Pointwise inverse; the class negates."""
    return LocalGerbe(gerbe.complex, gerbe.g.inverse())


def product(a: LocalGerbe, b: LocalGerbe) -> LocalGerbe:
    """Pointwise product on a shared nerve; the classes add."""
    if a.complex != b.complex:
        raise ContractViolationError("product requires a common nerve")
    return LocalGerbe(a.complex, a.g.combine(b.g))


def pullback_gerbe(gerbe: LocalGerbe, phi: SimplicialMap) -> LocalGerbe:
    """Pullback along a simplicial map into the gerbe's nerve."""
    return LocalGerbe(phi.source, pullback_cochain(gerbe.g, phi))


def stably_isomorphic(a: LocalGerbe, b: LocalGerbe) -> bool:
    """True exactly when the two classes agree (equivalence of gerbes)."""
    if a.complex != b.complex:
        raise ContractViolationError("stable isomorphism needs a common nerve")
    return dd_class(a) == dd_class(b)


def _real_class_coordinates(group: CohomologyGroup, vec: np.ndarray) -> np.ndarray:
    """Free-part coordinates of a real cocycle, via the integer basis."""
    kernel_coords = (group._vinv_up.astype(float) @ vec)[group._rank_up :]
    u = group._uc.astype(float) @ kernel_coords
    s = len(group._image_factors)
    return u[s:]


def _integer_class_with_free_coords(group: CohomologyGroup, free) -> Cochain:
    coords = ClassCoordinates(
        tuple(int(v) for v in free), tuple((d, 0) for d in group.torsion)
    )
    return group.representative(coords)


def trivialize(gerbe: LocalGerbe) -> LineCocycle | None:
    """Circle 1-cochain h with delta(h) = g, or None when no such h exists.

    The construction lifts g to the reals, removes the integer obstruction
    with the exact coboundary solver, removes the residual integer cocycle
    detected in real cohomology, and solves the remaining real coboundary
    equation by least squares before exponentiating.

    None is returned when the class in H^3 is nonzero, and also in the
    rarer situation of a complex with free H^2 where the phases carry a
    non-integral period: in both cases no trivialization exists.
    """
    complex_ = gerbe.complex
    lift = principal_lift(gerbe.g)
    c = _integral_rounding(coboundary(lift), INTEGRALITY_TOL)
    m = solve_integer_coboundary(c)
    if m is None:
        return None
    corrected = real_cochain_vector(lift) - cochain_vector(m).astype(float)

    group2 = cohomology_group(complex_, 2)
    free_coords = _real_class_coordinates(group2, corrected)
    if free_coords.size:
        nearest = np.round(free_coords)
        if np.max(np.abs(free_coords - nearest)) > INTEGRALITY_TOL:
            return None  # nonzero period in H^2(R)/H^2(Z): not trivializable
        if np.any(nearest):
            w = _integer_class_with_free_coords(group2, nearest.astype(int))
            corrected = corrected - cochain_vector(w).astype(float)

    delta1 = cached_coboundary_matrix(complex_, 1).astype(float)
    b, *_ = np.linalg.lstsq(delta1, corrected, rcond=None)
    h = real_vector_cochain(complex_, 1, b).map_values(
        CIRCLE.from_angle_fraction, system=CIRCLE
    )
    line = LineCocycle(complex_, h)
    residual = trivialization_residual(gerbe, line)
    if residual > TRIVIALIZATION_TOL:
        raise InconsistentInputError(
            f"trivialization residual {residual:.2e} exceeds {TRIVIALIZATION_TOL:g} "
            "although the obstruction class vanishes"
        )
    return line


def trivialization_residual(gerbe: LocalGerbe, line: LineCocycle) -> float:
    """Max circle distance between delta(h) and g over all 2-simplices."""
    dh = coboundary(line.h)
    return max(
        (abs(dh.values[s] - gerbe.g.values[s]) for s in gerbe.complex.simplices(2)),
        default=0.0,
    )


def trivialization_difference(h1: LineCocycle, h2: LineCocycle, tol: float = 1e-8) -> LineCocycle:
    """Quotient of two trivializations of the same gerbe: a line bundle cocycle.

    Requires delta(h1) = delta(h2) within tol; the result q = h1 / h2 then
    satisfies delta(q) = 1 because delta is a homomorphism.
    """
    if h1.complex != h2.complex:
        raise ContractViolationError("trivializations live on different complexes")
    d1, d2 = coboundary(h1.h), coboundary(h2.h)
    if not d1.allclose(d2, tol=tol):
        raise ContractViolationError("the two cochains do not trivialize the same gerbe")
    return LineCocycle(h1.complex, h1.h.combine(h2.h.inverse()))


def gerbe_from_angles(complex_: SimplicialComplex, fractions) -> LocalGerbe:
    """Gerbe with g = exp(2*pi*i*t) per 2-simplex, t given as a mapping."""
    values = {s: cmath.exp(2j * cmath.pi * float(t)) for s, t in fractions.items()}
    return LocalGerbe(complex_, Cochain(complex_, 2, CIRCLE, values))

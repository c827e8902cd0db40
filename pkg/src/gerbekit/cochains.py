"""Cochains on a simplicial complex with several coefficient systems.

Values are stored on strictly increasing tuples only; evaluation on an
arbitrary ordering applies the sign of the permutation (group inverse for
odd permutations) and degenerate tuples evaluate to the identity element.
Additive systems (integers, reals, integers mod n) use sums; the circle
uses unit-modulus complex numbers under multiplication.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Mapping

from .complexes import SimplicialComplex, boundary_with_signs
from .errors import ContractViolationError, MalformedInputError

_CIRCLE_RENORM = 1e-12


def _permutation_sign(tup) -> int:
    """Sign of the permutation sorting ``tup``; 0 if entries repeat."""
    if len(set(tup)) != len(tup):
        return 0
    order = sorted(range(len(tup)), key=lambda i: tup[i])
    sign = 1
    seen = [False] * len(tup)
    for start in range(len(tup)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = order[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class CoefficientSystem:
    """Abelian coefficient group: identity, composition, inversion, powers."""

    tag: str

    def identity(self):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def power(self, a, exponent: int):
        if exponent == 0:
            return self.identity()
        base = a if exponent > 0 else self.inverse(a)
        out = self.identity()
        for _ in range(abs(exponent)):
            out = self.op(out, base)
        return out

    def validate(self, value):
        return value

    def close(self, a, b, tol: float) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return self.tag


class _Integers(CoefficientSystem):
    tag = "Z"

    def identity(self):
        return 0

    def op(self, a, b):
        return a + b

    def inverse(self, a):
        return -a

    def power(self, a, exponent):
        return a * exponent

    def validate(self, value):
        if not isinstance(value, (int,)) or isinstance(value, bool):
            raise MalformedInputError(f"integer coefficient expected, got {value!r}")
        return int(value)

    def close(self, a, b, tol):
        return a == b


class _Reals(CoefficientSystem):
    tag = "R"

    def identity(self):
        return 0.0

    def op(self, a, b):
        return a + b

    def inverse(self, a):
        return -a

    def power(self, a, exponent):
        return a * exponent

    def validate(self, value):
        return float(value)

    def close(self, a, b, tol):
        return abs(a - b) <= tol


class _Circle(CoefficientSystem):
    """Unit-modulus complex numbers, renormalized after every operation."""

    tag = "U1"

    def identity(self):
        return 1 + 0j

    def _renorm(self, z):
        return z / abs(z)

    def op(self, a, b):
        return self._renorm(a * b)

    def inverse(self, a):
        return self._renorm(a.conjugate())

    def validate(self, value):
        z = complex(value)
        if abs(abs(z) - 1.0) > 1e-9:
            raise MalformedInputError(f"circle value {value!r} is far from unit modulus")
        return self._renorm(z)

    def close(self, a, b, tol):
        return abs(a - b) <= tol

    @staticmethod
    def from_angle_fraction(t: float) -> complex:
        """exp(2*pi*i*t) for a fraction t of a full turn."""
        return cmath.exp(2j * cmath.pi * t)

    @staticmethod
    def angle_fraction(z: complex) -> float:
        """Principal fraction in [0, 1) with exp(2*pi*i*t) = z/|z|."""
        t = cmath.phase(z) / (2 * cmath.pi)
        return t % 1.0


class CyclicOfOrder(CoefficientSystem):
    """Integers modulo n, stored as representatives in {0, ..., n-1}."""

    def __init__(self, n: int):
        if n < 2:
            raise MalformedInputError("cyclic order must be at least 2")
        self.n = int(n)
        self.tag = f"Zn:{self.n}"

    def identity(self):
        return 0

    def op(self, a, b):
        return (a + b) % self.n

    def inverse(self, a):
        return (-a) % self.n

    def power(self, a, exponent):
        return (a * exponent) % self.n

    def validate(self, value):
        v = int(value)
        return v % self.n

    def close(self, a, b, tol):
        return (a - b) % self.n == 0

    def __eq__(self, other):
        return isinstance(other, CyclicOfOrder) and other.n == self.n

    def __hash__(self):
        return hash(("Zn", self.n))


INTEGERS = _Integers()
REALS = _Reals()
CIRCLE = _Circle()


def system_from_tag(tag: str) -> CoefficientSystem:
    if tag == "Z":
        return INTEGERS
    if tag == "R":
        return REALS
    if tag == "U1":
        return CIRCLE
    if tag.startswith("Zn:"):
        return CyclicOfOrder(int(tag.split(":", 1)[1]))
    raise MalformedInputError(f"unknown coefficient tag {tag!r}")


@dataclass(frozen=True)
class Cochain:
    """Total assignment of coefficient values to the p-simplices of a complex."""

    complex: SimplicialComplex
    degree: int
    system: CoefficientSystem
    values: Mapping

    def __post_init__(self):
        expected = self.complex.simplices(self.degree)
        vals = dict(self.values)
        missing = [s for s in expected if s not in vals]
        if missing:
            raise ContractViolationError(
                f"cochain of degree {self.degree} missing values on {missing[:3]}..."
                if len(missing) > 3
                else f"cochain of degree {self.degree} missing values on {missing}"
            )
        extra = set(vals) - set(expected)
        if extra:
            raise ContractViolationError(f"values on non-simplices: {sorted(extra)[:3]}")
        object.__setattr__(
            self, "values", {s: self.system.validate(v) for s, v in vals.items()}
        )

    def __call__(self, tup):
        """Alternating evaluation on an arbitrary vertex tuple."""
        tup = tuple(tup)
        if len(tup) != self.degree + 1:
            raise ContractViolationError(
                f"tuple {tup} has wrong length for degree {self.degree}"
            )
        sign = _permutation_sign(tup)
        if sign == 0:
            return self.system.identity()
        value = self.values[tuple(sorted(tup))]
        return value if sign > 0 else self.system.inverse(value)

    def map_values(self, fn, system: CoefficientSystem | None = None) -> "Cochain":
        return Cochain(
            self.complex,
            self.degree,
            system or self.system,
            {s: fn(v) for s, v in self.values.items()},
        )

    def combine(self, other: "Cochain") -> "Cochain":
        """Pointwise group operation with another cochain of the same shape."""
        _require_same_shape(self, other)
        return Cochain(
            self.complex,
            self.degree,
            self.system,
            {s: self.system.op(v, other.values[s]) for s, v in self.values.items()},
        )

    def inverse(self) -> "Cochain":
        return self.map_values(self.system.inverse)

    def allclose(self, other: "Cochain", tol: float = 1e-10) -> bool:
        _require_same_shape(self, other)
        return all(
            self.system.close(v, other.values[s], tol) for s, v in self.values.items()
        )

    def is_identity(self, tol: float = 1e-10) -> bool:
        e = self.system.identity()
        return all(self.system.close(v, e, tol) for v in self.values.values())


def _require_same_shape(a: Cochain, b: Cochain):
    if a.complex != b.complex or a.degree != b.degree:
        raise ContractViolationError("cochains live on different complexes or degrees")
    if type(a.system) is not type(b.system) or getattr(a.system, "n", None) != getattr(
        b.system, "n", None
    ):
        raise ContractViolationError(
            f"coefficient mismatch: {a.system} vs {b.system}"
        )


def constant_cochain(complex_, degree, system, value) -> Cochain:
    return Cochain(complex_, degree, system, {s: value for s in complex_.simplices(degree)})


def identity_cochain(complex_, degree, system) -> Cochain:
    return constant_cochain(complex_, degree, system, system.identity())


def coboundary(c: Cochain) -> Cochain:
    """Alternating sum (or product, for the circle) over codimension-one faces.

    When the complex has no simplices in degree p+1 the result is the empty
    cochain of that degree.
    """
    complex_ = c.complex
    target = complex_.simplices(c.degree + 1)
    values = {}
    for simplex in target:
        acc = c.system.identity()
        for face, sign in boundary_with_signs(simplex):
            acc = c.system.op(acc, c.system.power(c.values[face], sign))
        values[simplex] = acc
    return Cochain(complex_, c.degree + 1, c.system, values)


def pullback_cochain(c: Cochain, phi) -> Cochain:
    """Pullback along a simplicial map into the complex carrying ``c``.

    ``phi`` is a SimplicialMap whose target is ``c.complex``.  Degenerate
    images evaluate to the identity element, so the pullback of a positive
    degree cochain along a constant map is trivial.
    """
    if phi.target != c.complex:
        raise ContractViolationError("map target differs from the cochain's complex")
    values = {}
    for simplex in phi.source.simplices(c.degree):
        image = phi(simplex)
        if len(set(image)) != len(image):
            values[simplex] = c.system.identity()
        else:
            values[simplex] = c(image)
    return Cochain(phi.source, c.degree, c.system, values)

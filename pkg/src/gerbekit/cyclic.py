"""Finite-coefficient obstructions: Bockstein classes and lifting data.

A cyclic 2-cocycle (values mod n) maps to an n-torsion class in H^3(K, Z)
through the connecting homomorphism: lift the values to {0, ..., n-1},
take the integer coboundary and divide by n.  Transition data valued in the
quotient of a finite central extension produces such a cocycle, and its
class obstructs lifting the data through the extension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import INTEGERS, Cochain, CyclicOfOrder, coboundary
from .cohomology import cohomology_group
from .complexes import SimplicialComplex
from .errors import (
    ContractViolationError,
    InvalidTransitionDataError,
    MalformedInputError,
    NotACocycleError,
)
from .gerbes import DixmierDouadyClass


@dataclass(frozen=True)
class CyclicCocycle:
    """Degree-2 cochain mod n with the mod-n cocycle identity."""

    complex: SimplicialComplex
    epsilon: Cochain

    def __post_init__(self):
        if self.epsilon.complex != self.complex or self.epsilon.degree != 2:
            raise ContractViolationError("cyclic data must be a degree-2 cochain")
        if not isinstance(self.epsilon.system, CyclicOfOrder):
            raise ContractViolationError("cyclic coefficients required")
        if not coboundary(self.epsilon).is_identity(tol=0):
            raise NotACocycleError("delta(epsilon) != 0 mod n")

    @property
    def order(self) -> int:
        return self.epsilon.system.n


def integer_lift(c: Cochain) -> Cochain:
    """Integer cochain with values in {0, ..., n-1} reducing to c mod n."""
    if not isinstance(c.system, CyclicOfOrder):
        raise ContractViolationError("integer_lift expects cyclic coefficients")
    return Cochain(c.complex, c.degree, INTEGERS, {s: int(v) for s, v in c.values.items()})


def bockstein(cocycle: CyclicCocycle) -> DixmierDouadyClass:
    """Connecting homomorphism H^2(K, Z_n) -> H^3(K, Z).

    The coboundary of the canonical lift is divisible by n exactly, and the
    quotient is an integer 3-cocycle; its class is n-torsion and additive in
    the input.
    """
    n = cocycle.order
    lifted = integer_lift(cocycle.epsilon)
    dlift = coboundary(lifted)
    values = {}
    for s, v in dlift.values.items():
        if v % n != 0:
            raise NotACocycleError("lifted coboundary not divisible by n")
        values[s] = v // n
    rep = Cochain(cocycle.complex, 3, INTEGERS, values)
    group = cohomology_group(cocycle.complex, 3)
    return DixmierDouadyClass(group, group.coordinates_of(rep), rep)


class CentralExtensionTable:
    """Finite central extension of a finite group by Z_n, given by tables.

    The quotient group is a list of element labels with a multiplication
    table of indices; omega is a normalized Z_n group 2-cocycle, so the
    extension consists of pairs (q, z) multiplying as

        (q1, z1) * (q2, z2) = (q1 q2, z1 + z2 + omega(q1, q2)).

    The canonical section sends q to (q, 0).
    """

    def __init__(self, n: int, quotient, multiplication, omega):
        self.n = int(n)
        if self.n < 2:
            raise MalformedInputError("central kernel must have order >= 2")
        self.quotient = list(quotient)
        size = len(self.quotient)
        self.multiplication = [[int(v) for v in row] for row in multiplication]
        self.omega = [[int(v) % self.n for v in row] for row in omega]
        if len(self.multiplication) != size or any(len(r) != size for r in self.multiplication):
            raise MalformedInputError("multiplication table has wrong shape")
        if len(self.omega) != size or any(len(r) != size for r in self.omega):
            raise MalformedInputError("omega table has wrong shape")
        self.identity = self._find_identity()
        self._inverse = self._find_inverses()
        self._check_normalized()
        self._check_cocycle_identity()

    def _find_identity(self) -> int:
        size = len(self.quotient)
        for e in range(size):
            if all(
                self.multiplication[e][q] == q and self.multiplication[q][e] == q
                for q in range(size)
            ):
                return e
        raise MalformedInputError("quotient multiplication table has no identity")

    def _find_inverses(self):
        size = len(self.quotient)
        inv = [None] * size
        for q in range(size):
            for r in range(size):
                if (
                    self.multiplication[q][r] == self.identity
                    and self.multiplication[r][q] == self.identity
                ):
                    inv[q] = r
                    break
            if inv[q] is None:
                raise MalformedInputError(f"element {self.quotient[q]} has no inverse")
        return inv

    def _check_normalized(self):
        e = self.identity
        for q in range(len(self.quotient)):
            if self.omega[e][q] != 0 or self.omega[q][e] != 0:
                raise MalformedInputError(
                    "omega must be normalized: omega(1, q) = omega(q, 1) = 0"
                )

    def _check_cocycle_identity(self):
        size = len(self.quotient)
        mul = self.multiplication
        for a in range(size):
            for b in range(size):
                for c in range(size):
                    lhs = (self.omega[a][b] + self.omega[mul[a][b]][c]) % self.n
                    rhs = (self.omega[b][c] + self.omega[a][mul[b][c]]) % self.n
                    if lhs != rhs:
                        raise MalformedInputError(
                            "omega violates the group 2-cocycle identity "
                            f"at ({a}, {b}, {c}): table is not associative"
                        )

    # -- arithmetic in the extension, elements are (quotient index, phase) --

    def mul(self, x, y):
        qx, zx = x
        qy, zy = y
        return (
            self.multiplication[qx][qy],
            (zx + zy + self.omega[qx][qy]) % self.n,
        )

    def inv(self, x):
        q, z = x
        qi = self._inverse[q]
        return (qi, (-z - self.omega[q][qi]) % self.n)

    def section(self, q: int):
        return (int(q), 0)

    def quotient_index(self, label) -> int:
        try:
            return self.quotient.index(label)
        except ValueError:
            raise MalformedInputError(f"unknown quotient element {label!r}") from None


def cyclic_extension(n: int) -> CentralExtensionTable:
    """The nonsplit extension of Z_m by Z_n realising Z_{nm} (carry cocycle)."""
    return CentralExtensionTable(
        n,
        quotient=list(range(n)),
        multiplication=[[(a + b) % n for b in range(n)] for a in range(n)],
        omega=[[((a + b) // n) % n for b in range(n)] for a in range(n)],
    )


def lifting_obstruction(
    ext: CentralExtensionTable, complex_: SimplicialComplex, t
) -> CyclicCocycle:
    """Obstruction cocycle of quotient-valued transition data.

    ``t`` maps every increasing edge of the complex to a quotient index and
    must satisfy t(b,c) t(a,c)^{-1} t(a,b) = 1 on every triangle (a < b < c).
    The central phase of the same word evaluated through the canonical
    section is a Z_n 2-cocycle; its Bockstein class vanishes iff the data
    lifts through the extension.
    """
    size = len(ext.quotient)
    table = dict(t)

    def lifted(a, b):
        try:
            q = int(table[(a, b)])
        except KeyError:
            raise MalformedInputError(f"transition data missing edge ({a},{b})") from None
        if not 0 <= q < size:
            raise MalformedInputError(f"edge ({a},{b}) carries invalid index {q}")
        return ext.section(q)

    values = {}
    for tri in complex_.simplices(2):
        a, b, c = tri
        word = ext.mul(ext.mul(lifted(b, c), ext.inv(lifted(a, c))), lifted(a, b))
        if word[0] != ext.identity:
            raise InvalidTransitionDataError(
                f"transition data fails the cocycle identity on {tri}"
            )
        values[tri] = word[1]
    system = CyclicOfOrder(ext.n)
    return CyclicCocycle(complex_, Cochain(complex_, 2, system, values))

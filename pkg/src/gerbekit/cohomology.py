"""Integer simplicial cohomology via Smith normal form.

For a complex K and degree p this computes H^p(K, Z) = ker(delta_p) / im(delta_{p-1})
together with enough change-of-basis data to reduce any integer cocycle to
coordinates: an integer vector on the free part and residues on the torsion
part.  Groups are cached per (complex, degree) since the reduction is the
expensive step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cochains import INTEGERS, REALS, Cochain, coboundary
from .complexes import SimplicialComplex, cached_coboundary_matrix
from .errors import DomainError, NotACocycleError
from .snf import SmithDecomposition, smith_normal_form, solve_smith, zeros_matrix


@dataclass(frozen=True)
class ClassCoordinates:
    """Coordinates of a cohomology class: free integers and torsion residues.

    ``torsion`` pairs each invariant factor with the residue modulo it.
    """

    free: tuple[int, ...]
    torsion: tuple[tuple[int, int], ...]

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.free) and all(r % d == 0 for d, r in self.torsion)

    def __add__(self, other: "ClassCoordinates") -> "ClassCoordinates":
        return ClassCoordinates(
            tuple(a + b for a, b in zip(self.free, other.free, strict=True)),
            tuple(
                (d, (r + s) % d)
                for (d, r), (d2, s) in zip(self.torsion, other.torsion, strict=True)
            ),
        )

    def __neg__(self) -> "ClassCoordinates":
        return ClassCoordinates(
            tuple(-v for v in self.free), tuple((d, (-r) % d) for d, r in self.torsion)
        )

    def scaled(self, n: int) -> "ClassCoordinates":
        return ClassCoordinates(
            tuple(n * v for v in self.free), tuple((d, (n * r) % d) for d, r in self.torsion)
        )


@dataclass(frozen=True)
class CohomologyGroup:
    """H^p(K, Z) with reduction data.

    free_rank and torsion (a divisibility chain of invariant factors > 1)
    describe the abstract group; the private matrices reduce cocycles to
    ClassCoordinates and produce representatives.
    """

    complex: SimplicialComplex
    degree: int
    free_rank: int
    torsion: tuple[int, ...]
    _kernel_basis: np.ndarray
    _vinv_up: np.ndarray
    _rank_up: int
    _uc: np.ndarray
    _uc_inv: np.ndarray
    _image_factors: tuple[int, ...]

    @property
    def order_infinite(self) -> bool:
        return self.free_rank > 0

    def _kernel_coordinates(self, vec: np.ndarray) -> np.ndarray:
        full = self._vinv_up @ vec
        return full[self._rank_up :]

    def coordinates_of(self, z: Cochain) -> ClassCoordinates:
        """Class coordinates of an integer cocycle; errors if delta(z) != 0."""
        _require_integer_cocycle(z, self.degree, self.complex)
        vec = cochain_vector(z)
        w = self._kernel_coordinates(vec)
        u = self._uc @ w
        s = len(self._image_factors)
        torsion = []
        free = []
        for i, e in enumerate(self._image_factors):
            if e > 1:
                torsion.append((int(e), int(u[i]) % int(e)))
        for i in range(s, len(u)):
            free.append(int(u[i]))
        return ClassCoordinates(tuple(free), tuple(torsion))

    def representative(self, coords: ClassCoordinates) -> Cochain:
        """An integer cocycle whose class has the given coordinates."""
        k = self._uc.shape[0]
        u = np.zeros(k, dtype=object)
        s = len(self._image_factors)
        ti = 0
        for i, e in enumerate(self._image_factors):
            if e > 1:
                u[i] = int(coords.torsion[ti][1])
                ti += 1
        for i, v in enumerate(coords.free):
            u[s + i] = int(v)
        w = self._uc_inv @ u
        vec = self._kernel_basis @ w
        return vector_cochain(self.complex, self.degree, vec)


def cochain_vector(c: Cochain) -> np.ndarray:
    """Integer coordinate vector of a cochain in the canonical simplex order."""
    simplices = c.complex.simplices(c.degree)
    return np.array([int(c.values[s]) for s in simplices], dtype=object)


def vector_cochain(complex_: SimplicialComplex, degree: int, vec) -> Cochain:
    simplices = complex_.simplices(degree)
    return Cochain(complex_, degree, INTEGERS, {s: int(v) for s, v in zip(simplices, vec)})


def real_cochain_vector(c: Cochain) -> np.ndarray:
    simplices = c.complex.simplices(c.degree)
    return np.array([float(c.values[s]) for s in simplices], dtype=float)


def real_vector_cochain(complex_: SimplicialComplex, degree: int, vec) -> Cochain:
    simplices = complex_.simplices(degree)
    return Cochain(complex_, degree, REALS, {s: float(v) for s, v in zip(simplices, vec)})


def _require_integer_cocycle(z: Cochain, degree: int, complex_: SimplicialComplex):
    if z.complex != complex_ or z.degree != degree:
        raise NotACocycleError("cochain does not match the group's complex and degree")
    if z.system is not INTEGERS:
        raise NotACocycleError("integer coefficients required")
    if not coboundary(z).is_identity(tol=0):
        raise NotACocycleError("delta(z) != 0")


@lru_cache(maxsize=None)
def _group(complex_: SimplicialComplex, p: int) -> CohomologyGroup:
    n_p = len(complex_.simplices(p))
    delta_p = (
        cached_coboundary_matrix(complex_, p)
        if 0 <= p <= complex_.dimension
        else zeros_matrix(0, n_p)
    )
    if delta_p.shape[1] != n_p:
        delta_p = zeros_matrix(delta_p.shape[0], n_p)
    dec_up: SmithDecomposition = smith_normal_form(delta_p)
    r = dec_up.rank
    kernel_basis = dec_up.V[:, r:]
    k = kernel_basis.shape[1]

    if p >= 1 and p - 1 <= complex_.dimension:
        delta_down = cached_coboundary_matrix(complex_, p - 1)
    else:
        delta_down = zeros_matrix(n_p, 0)
    # Express the image of delta_{p-1} in kernel coordinates: delta(delta) = 0
    # forces the first r rows of vinv @ delta_down to vanish.
    in_kernel = (dec_up.vinv @ delta_down)[r:, :] if n_p else zeros_matrix(0, 0)
    dec_im = smith_normal_form(in_kernel)
    factors = dec_im.diagonal
    s = sum(1 for e in factors if e != 0)
    torsion = tuple(int(e) for e in factors if e > 1)
    return CohomologyGroup(
        complex=complex_,
        degree=p,
        free_rank=k - s,
        torsion=torsion,
        _kernel_basis=kernel_basis,
        _vinv_up=dec_up.vinv,
        _rank_up=r,
        _uc=dec_im.U,
        _uc_inv=dec_im.uinv,
        _image_factors=tuple(int(e) for e in factors[:s]),
    )


def cohomology_group(complex_: SimplicialComplex, p: int) -> CohomologyGroup:
    """H^p(K, Z).  Degrees outside 0..dim give the zero group."""
    return _group(complex_, p)


def cocycle_class(z: Cochain) -> ClassCoordinates:
    """Coordinates of an integer cocycle's class; zero iff z is a coboundary."""
    group = cohomology_group(z.complex, z.degree)
    return group.coordinates_of(z)


@lru_cache(maxsize=None)
def _snf_of_coboundary(complex_: SimplicialComplex, p: int) -> SmithDecomposition:
    return smith_normal_form(cached_coboundary_matrix(complex_, p))


def solve_integer_coboundary(c: Cochain) -> Cochain | None:
    """Find an integer b with delta(b) = c, or None when the class is nonzero.

    Requires delta(c) = 0; raises NotACocycleError otherwise.
    """
    _require_integer_cocycle(c, c.degree, c.complex)
    p = c.degree
    if p == 0:
        raise DomainError("degree-0 cochains have no potential of degree -1")
    if p - 1 > c.complex.dimension:
        return Cochain(c.complex, p - 1, INTEGERS, {})
    dec = _snf_of_coboundary(c.complex, p - 1)
    x = solve_smith(dec, cochain_vector(c))
    if x is None:
        return None
    return vector_cochain(c.complex, p - 1, x)

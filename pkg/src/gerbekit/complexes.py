"""Finite abstract simplicial complexes and their coboundary matrices.

A complex stores, for each dimension p, the sorted list of strictly
increasing vertex tuples.  It is always closed under taking faces, so it can
model the nerve of a finite open cover as well as a triangulated manifold.
All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import DomainError, InvalidMapError, MalformedInputError

Simplex = tuple[int, ...]


def _check_facet(facet) -> Simplex:
    tup = tuple(int(v) for v in facet)
    if len(set(tup)) != len(tup):
        raise MalformedInputError(f"facet {facet!r} repeats a vertex")
    if any(v < 0 for v in tup):
        raise MalformedInputError(f"facet {facet!r} uses a negative vertex id")
    return tuple(sorted(tup))


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of strictly increasing vertex tuples.

    ``simplices_by_dim[p]`` is the sorted tuple of p-simplices.  The empty
    complex has ``dimension == -1``.
    """

    simplices_by_dim: tuple[tuple[Simplex, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for p, simplices in enumerate(self.simplices_by_dim):
            index[p] = {s: i for i, s in enumerate(simplices)}
        object.__setattr__(self, "_index", index)

    @property
    def dimension(self) -> int:
        return len(self.simplices_by_dim) - 1

    @property
    def vertices(self) -> tuple[int, ...]:
        if not self.simplices_by_dim:
            return ()
        return tuple(s[0] for s in self.simplices_by_dim[0])

    @property
    def vertex_count(self) -> int:
        return len(self.simplices_by_dim[0]) if self.simplices_by_dim else 0

    def simplices(self, p: int) -> tuple[Simplex, ...]:
        if p < 0 or p > self.dimension:
            return ()
        return self.simplices_by_dim[p]

    def has_simplex(self, simplex: Simplex) -> bool:
        p = len(simplex) - 1
        return p in self._index and tuple(simplex) in self._index[p]

    def index_of(self, simplex: Simplex) -> int:
        """Position of a simplex in the canonical ordering of its dimension."""
        p = len(simplex) - 1
        try:
            return self._index[p][tuple(simplex)]
        except KeyError:
            raise DomainError(f"{simplex} is not a simplex of the complex") from None

    def star_closed(self) -> bool:
        """True when every face of every stored simplex is stored."""
        for p in range(1, self.dimension + 1):
            for s in self.simplices_by_dim[p]:
                for face in combinations(s, p):
                    if not self.has_simplex(face):
                        return False
        return True


def build_complex(facets) -> SimplicialComplex:
    """Downward closure of the given facets, sorted canonically.

    Raises MalformedInputError when a facet repeats a vertex or uses a
    non-natural vertex id.
    """
    by_dim: dict[int, set[Simplex]] = {}
    for facet in facets:
        top = _check_facet(facet)
        for p in range(len(top)):
            bucket = by_dim.setdefault(p, set())
            for s in combinations(top, p + 1):
                bucket.add(s)
    if not by_dim:
        return SimplicialComplex(())
    dims = max(by_dim) + 1
    return SimplicialComplex(
        tuple(tuple(sorted(by_dim.get(p, ()))) for p in range(dims))
    )


def boundary_with_signs(simplex: Simplex):
    """Codimension-one faces with alternating signs: [(face_i, (-1)^i)]."""
    out = []
    for i in range(len(simplex)):
        face = simplex[:i] + simplex[i + 1 :]
        out.append((face, -1 if i % 2 else 1))
    return out


def coboundary_matrix(complex_: SimplicialComplex, p: int) -> np.ndarray:
    """Integer matrix of delta from p-cochains to (p+1)-cochains.

    Rows are indexed by (p+1)-simplices, columns by p-simplices, both in
    canonical order; entries lie in {-1, 0, +1}.  Exact object dtype.
    """
    if p < 0 or p > complex_.dimension:
        raise DomainError(f"degree {p} outside 0..{complex_.dimension}")
    rows = complex_.simplices(p + 1)
    cols = complex_.simplices(p)
    mat = np.zeros((len(rows), len(cols)), dtype=object)
    for r, simplex in enumerate(rows):
        for face, sign in boundary_with_signs(simplex):
            mat[r, complex_.index_of(face)] += sign
    return mat


@lru_cache(maxsize=None)
def _cached_coboundary(complex_: SimplicialComplex, p: int):
    return coboundary_matrix(complex_, p)


def cached_coboundary_matrix(complex_: SimplicialComplex, p: int) -> np.ndarray:
    """Memoized coboundary matrix; callers must not mutate the result."""
    return _cached_coboundary(complex_, p)


class SimplicialMap:
    """Vertex map between complexes that sends simplices to simplices.

    The image of a simplex may be degenerate (repeated vertices); the
    nondegenerate image must be a simplex of the target.
    """

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        missing = [v for v in source.vertices if v not in self.vertex_map]
        if missing:
            raise InvalidMapError(f"vertex map undefined on {missing}")
        for p in range(source.dimension + 1):
            for s in source.simplices(p):
                image = tuple(sorted(set(self.vertex_map[v] for v in s)))
                if not target.has_simplex(image):
                    raise InvalidMapError(
                        f"image {image} of simplex {s} is not a simplex of the target"
                    )

    def __call__(self, simplex: Simplex) -> Simplex:
        return tuple(self.vertex_map[v] for v in simplex)


# ---------------------------------------------------------------------------
# Stock complexes used throughout the test-suite and the demos.
# ---------------------------------------------------------------------------


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex: a triangulated (n-1)-sphere."""
    verts = tuple(range(n + 1))
    return build_complex(combinations(verts, n))


def wrapped_disk(n: int, sectors_per_edge: int = 1) -> SimplicialComplex:
    """Disk whose boundary wraps n times around a 3-vertex circle.

    A cone over an inner 3n-gon, an annulus of triangles, and an outer ring
    glued n-to-1 onto the circle (w0, w1, w2).  The result realises a CW
    complex with H_1 = Z/n, which provides n-torsion test spaces once
    suspended.  ``sectors_per_edge`` is reserved for finer models.
    """
    if n < 2:
        raise DomainError("need n >= 2 for a nontrivial wrap")
    m = 3 * n * sectors_per_edge
    apex = 0
    inner = [1 + i for i in range(m)]
    outer = [1 + m + j for j in range(3)]
    faces = []
    for i in range(m):
        j = (i + 1) % m
        faces.append((apex, inner[i], inner[j]))
        faces.append((inner[i], outer[i % 3], outer[(i + 1) % 3]))
        faces.append((inner[i], inner[j], outer[(i + 1) % 3]))
    return build_complex(faces)


def suspension(complex_: SimplicialComplex) -> SimplicialComplex:
    """Suspension: cone the complex off two fresh pole vertices."""
    if complex_.dimension < 0:
        raise DomainError("cannot suspend the empty complex")
    top = max(complex_.vertices)
    poles = (top + 1, top + 2)
    facets = []
    top_dim = complex_.dimension
    for s in complex_.simplices(top_dim):
        for pole in poles:
            facets.append(s + (pole,))
    return build_complex(facets)


def torsion_sphere(n: int) -> SimplicialComplex:
    """3-complex with H^3 = Z/n: the suspension of a disk wrapped n times."""
    return suspension(wrapped_disk(n))

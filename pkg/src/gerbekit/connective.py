"""Discrete connective structures and triangulated surface holonomy.

The data of a connective structure is indexed by a chart set (the vertices
of the gerbe's nerve) and a geometric triangulation:

* ``A[(alpha, beta), (u, v)]``  -- normalized edge integrals of the
  connection between two charts, antisymmetric in both slots;
* ``f[alpha, (u, v, w)]``       -- normalized face integrals of the curving
  in a single chart, alternating in the face;
* ``g_samples[(alpha, beta, gamma), v]`` -- transition cocycle sampled at a
  geometric vertex, alternating in the chart triple.

All real data is stored pre-divided by 2*pi*i, so the holonomy of a charted
closed surface is exp(2*pi*i * (face and edge sums)) times a product of
sampled transition values with incidence-sign exponents.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations

from .complexes import boundary_with_signs
from .errors import (
    ContractViolationError,
    IncompleteStructureError,
    InvalidChartError,
    MalformedInputError,
)
from .gerbes import LocalGerbe


def _sorted_key(simplex):
    return tuple(sorted(simplex))


def _parity(tup) -> int:
    """+1 / -1 for even / odd orderings; 0 when entries repeat."""
    from .cochains import _permutation_sign

    return _permutation_sign(tup)


@dataclass(frozen=True)
class ConnectiveStructure:
    """Connection edge-integrals, curving face-integrals, sampled transitions."""

    gerbe: LocalGerbe
    A: dict
    f: dict
    g_samples: dict

    def __post_init__(self):
        a_norm = {}
        for (pair, edge), value in self.A.items():
            alpha, beta = pair
            u, v = edge
            if alpha == beta or u == v:
                raise MalformedInputError(f"degenerate connection key {(pair, edge)}")
            sign = 1.0
            if alpha > beta:
                alpha, beta = beta, alpha
                sign = -sign
            if u > v:
                u, v = v, u
                sign = -sign
            key = ((alpha, beta), (u, v))
            val = sign * float(value)
            if key in a_norm and abs(a_norm[key] - val) > 1e-12:
                raise MalformedInputError(f"inconsistent duplicate connection data {key}")
            a_norm[key] = val
        f_norm = {}
        for (chart, face), value in self.f.items():
            sign = _parity(face)
            if sign == 0:
                raise MalformedInputError(f"degenerate face {face}")
            f_norm[(chart, _sorted_key(face))] = sign * float(value)
        g_norm = {}
        for (triple, vertex), value in self.g_samples.items():
            sign = _parity(triple)
            if sign == 0:
                raise MalformedInputError(f"degenerate chart triple {triple}")
            z = complex(value)
            z = z / abs(z)
            g_norm[(_sorted_key(triple), vertex)] = z if sign > 0 else z.conjugate()
        object.__setattr__(self, "A", a_norm)
        object.__setattr__(self, "f", f_norm)
        object.__setattr__(self, "g_samples", g_norm)

    # -- evaluation with full antisymmetry ---------------------------------

    def connection(self, alpha, beta, edge) -> float:
        if alpha == beta:
            return 0.0
        u, v = edge
        sign = 1.0
        if alpha > beta:
            alpha, beta = beta, alpha
            sign = -sign
        if u > v:
            u, v = v, u
            sign = -sign
        try:
            return sign * self.A[((alpha, beta), (u, v))]
        except KeyError:
            raise IncompleteStructureError(
                f"no connection data for charts ({alpha},{beta}) on edge {edge}"
            ) from None

    def curving(self, chart, face) -> float:
        sign = _parity(face)
        if sign == 0:
            return 0.0
        try:
            return sign * self.f[(chart, _sorted_key(face))]
        except KeyError:
            raise IncompleteStructureError(
                f"no curving data for chart {chart} on face {tuple(face)}"
            ) from None

    def transition(self, charts, vertex) -> complex:
        sign = _parity(charts)
        if sign == 0:
            return 1 + 0j
        try:
            z = self.g_samples[(_sorted_key(charts), vertex)]
        except KeyError:
            raise IncompleteStructureError(
                f"no transition sample for charts {tuple(charts)} at vertex {vertex}"
            ) from None
        return z if sign > 0 else z.conjugate()

    # -- algebra -----------------------------------------------------------

    def dual(self) -> "ConnectiveStructure":
        from .gerbes import dual as dual_gerbe

        return ConnectiveStructure(
            dual_gerbe(self.gerbe),
            {k: -v for k, v in self.A.items()},
            {k: -v for k, v in self.f.items()},
            {k: v.conjugate() for k, v in self.g_samples.items()},
        )

    def product(self, other: "ConnectiveStructure") -> "ConnectiveStructure":
        from .gerbes import product as product_gerbe

        if set(self.A) != set(other.A) or set(self.f) != set(other.f) or set(
            self.g_samples
        ) != set(other.g_samples):
            raise ContractViolationError("structures carry data on different simplices")
        return ConnectiveStructure(
            product_gerbe(self.gerbe, other.gerbe),
            {k: v + other.A[k] for k, v in self.A.items()},
            {k: v + other.f[k] for k, v in self.f.items()},
            {k: v * other.g_samples[k] for k, v in self.g_samples.items()},
        )


def _face_edges(face):
    """Oriented boundary edges of an oriented face with alternating signs."""
    return boundary_with_signs(tuple(face))


@dataclass(frozen=True)
class ChartedSurface:
    """Closed oriented triangulated surface with a chart assignment.

    ``faces`` are oriented vertex triples; every undirected edge must occur
    in exactly two faces with opposite induced orientations.  ``chi`` picks
    a chart per simplex (keys are sorted tuples) and must be a member of the
    ``admissible`` witness set of that simplex.
    """

    faces: tuple
    chi: dict
    admissible: dict
    _edges: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        faces = tuple(tuple(f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        for face in faces:
            if len(set(face)) != 3:
                raise MalformedInputError(f"degenerate face {face}")
        if len({_sorted_key(f) for f in faces}) != len(faces):
            raise MalformedInputError("repeated face")
        counter = {}
        for face in faces:
            for (u, v), sign in _face_edges(face):
                key = (u, v) if u < v else (v, u)
                direction = sign if u < v else -sign
                counter.setdefault(key, []).append(direction)
        edges = []
        for key, dirs in counter.items():
            if sorted(dirs) != [-1, 1]:
                raise MalformedInputError(
                    f"edge {key} does not bound exactly two coherently oriented faces"
                )
            edges.append(key)
        object.__setattr__(self, "_edges", tuple(sorted(edges)))
        self._check_charts()

    def _check_charts(self):
        for simplex in self.all_simplices():
            if simplex not in self.chi:
                raise InvalidChartError(f"no chart assigned to {simplex}")
            if simplex not in self.admissible:
                raise InvalidChartError(f"no admissible set for {simplex}")
            if self.chi[simplex] not in self.admissible[simplex]:
                raise InvalidChartError(
                    f"chart {self.chi[simplex]} is not admissible for {simplex}"
                )

    def all_simplices(self):
        out = set()
        for face in self.faces:
            out.add(_sorted_key(face))
            for (u, v), _ in _face_edges(face):
                out.add(_sorted_key((u, v)))
            for v in face:
                out.add((v,))
        return sorted(out, key=lambda s: (len(s), s))

    @property
    def edges(self):
        return self._edges

    def reversed_orientation(self) -> "ChartedSurface":
        flipped = tuple((f[1], f[0], f[2]) for f in self.faces)
        return ChartedSurface(flipped, dict(self.chi), dict(self.admissible))

    def rechart(self, chi_prime: dict) -> "ChartedSurface":
        """Same surface with a different admissible chart assignment."""
        return ChartedSurface(self.faces, dict(chi_prime), dict(self.admissible))


@dataclass(frozen=True)
class ChartedVolume:
    """Compact oriented triangulated 3-manifold, possibly with boundary.

    ``cells`` are coherently oriented vertex 4-tuples: every interior face
    occurs in exactly two cells with opposite induced orientations.
    """

    cells: tuple
    chi: dict
    admissible: dict
    _boundary_faces: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = tuple(tuple(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        face_count = {}
        for cell in cells:
            if len(set(cell)) != 4:
                raise MalformedInputError(f"degenerate cell {cell}")
            for face, sign in boundary_with_signs(cell):
                key = _sorted_key(face)
                direction = sign * _parity(face)
                face_count.setdefault(key, []).append((face, direction))
        boundary = []
        for key, hits in face_count.items():
            if len(hits) == 1:
                face, direction = hits[0]
                oriented = key if direction > 0 else (key[1], key[0], key[2])
                boundary.append(oriented)
            elif len(hits) == 2:
                if hits[0][1] + hits[1][1] != 0:
                    raise MalformedInputError(
                        f"cells are not coherently oriented at face {key}"
                    )
            else:
                raise MalformedInputError(f"face {key} lies in {len(hits)} cells")
        object.__setattr__(self, "_boundary_faces", tuple(sorted(boundary)))
        for simplex in self.all_simplices():
            if simplex not in self.chi or self.chi[simplex] not in self.admissible.get(
                simplex, ()
            ):
                raise InvalidChartError(f"missing or inadmissible chart for {simplex}")

    def all_simplices(self):
        out = set()
        for cell in self.cells:
            for r in range(1, 5):
                for s in combinations(sorted(cell), r):
                    out.add(s)
        return sorted(out, key=lambda s: (len(s), s))

    def boundary(self) -> ChartedSurface:
        """Boundary surface with induced orientation and inherited charts."""
        faces = self._boundary_faces
        needed = set()
        for face in faces:
            needed.add(_sorted_key(face))
            for (u, v), _ in _face_edges(face):
                needed.add(_sorted_key((u, v)))
            for v in face:
                needed.add((v,))
        chi = {s: self.chi[s] for s in needed}
        adm = {s: self.admissible[s] for s in needed}
        return ChartedSurface(faces, chi, adm)

    def sub_volume(self, keep) -> "ChartedVolume":
        """Charted sub-volume of the cells selected by the predicate."""
        cells = tuple(c for c in self.cells if keep(c))
        needed = set()
        for cell in cells:
            for r in range(1, 5):
                for s in combinations(sorted(cell), r):
                    needed.add(s)
        chi = {s: self.chi[s] for s in needed}
        adm = {s: self.admissible[s] for s in needed}
        return ChartedVolume(cells, chi, adm)


@dataclass(frozen=True)
class HolonomyResult:
    """Holonomy value with its real exponent and transition factor parts."""

    value: complex
    log_real_part: float
    vertex_factor: complex


def face_contribution(cs: ConnectiveStructure, face, chi: dict):
    """Real exponent and circle factor contributed by one oriented face.

    The edge terms use the orientations induced by the face; each sampled
    transition enters with exponent -(sign of vertex in edge)(sign of edge
    in face), the convention under which recharting is a symmetry.
    """
    face = tuple(face)
    chart2 = chi[_sorted_key(face)]
    real = cs.curving(chart2, face)
    circle = 1 + 0j
    for edge, s12 in _face_edges(face):
        chart1 = chi[_sorted_key(edge)]
        real += s12 * cs.connection(chart2, chart1, edge)
        for vertex, s01 in ((edge[1], 1), (edge[0], -1)):
            chart0 = chi[(vertex,)]
            if len({chart2, chart1, chart0}) == 3:
                z = cs.transition((chart2, chart1, chart0), vertex)
                circle *= z if -s01 * s12 > 0 else z.conjugate()
    return real, circle


def surface_holonomy(cs: ConnectiveStructure, surface: ChartedSurface) -> HolonomyResult:
    """Product formula for the holonomy of the structure over a closed surface."""
    total_real = 0.0
    vertex_factor = 1 + 0j
    for face in sorted(surface.faces, key=_sorted_key):
        real, circle = face_contribution(cs, face, surface.chi)
        total_real += real
        vertex_factor *= circle
    vertex_factor /= abs(vertex_factor)
    value = cmath.exp(2j * cmath.pi * total_real) * vertex_factor
    return HolonomyResult(value=value, log_real_part=total_real, vertex_factor=vertex_factor)


def rechart(surface: ChartedSurface, chi_prime: dict) -> ChartedSurface:
    return surface.rechart(chi_prime)


@dataclass(frozen=True)
class DescentViolation:
    kind: str
    where: tuple
    magnitude: float


def check_connective(cs: ConnectiveStructure, tol: float = 1e-8):
    """All stored-data instances of the two descent equations beyond tol.

    Connection descent is checked on the circle for every chart triple with
    samples at both endpoints of an edge carrying all three connection
    values; curving descent is checked over the reals for every face storing
    two curvings whose boundary edges carry the pair's connection data.
    """
    violations = []
    edges = sorted({edge for (_, edge) in cs.A})
    triples = sorted({t for (t, _) in cs.g_samples})
    sampled = {t: {v for (t2, v) in cs.g_samples if t2 == t} for t in triples}
    for triple in triples:
        a, b, c = triple
        for u, v in edges:
            if u not in sampled[triple] or v not in sampled[triple]:
                continue
            try:
                exponent = (
                    cs.connection(b, c, (u, v))
                    - cs.connection(a, c, (u, v))
                    + cs.connection(a, b, (u, v))
                )
            except IncompleteStructureError:
                continue
            lhs = cmath.exp(2j * cmath.pi * exponent)
            rhs = cs.transition(triple, v) / cs.transition(triple, u)
            if abs(lhs - rhs) > tol:
                violations.append(
                    DescentViolation("connection", (triple, (u, v)), abs(lhs - rhs))
                )
    faces = sorted({face for (_, face) in cs.f})
    charts_per_face = {
        face: sorted({chart for (chart, f2) in cs.f if f2 == face}) for face in faces
    }
    for face in faces:
        charts = charts_per_face[face]
        for i, a in enumerate(charts):
            for b in charts[i + 1 :]:
                try:
                    edge_sum = sum(
                        sign * cs.connection(a, b, edge)
                        for edge, sign in _face_edges(face)
                    )
                except IncompleteStructureError:
                    continue
                gap = abs((cs.curving(b, face) - cs.curving(a, face)) - edge_sum)
                if gap > tol:
                    violations.append(DescentViolation("curving", ((a, b), face), gap))
    return violations


def three_curvature(cs: ConnectiveStructure, volume: ChartedVolume) -> dict:
    """Per-cell curvature: boundary sum of the cell chart's curving integrals."""
    out = {}
    for cell in volume.cells:
        chart = volume.chi[_sorted_key(cell)]
        total = 0.0
        for face, sign in boundary_with_signs(cell):
            total += sign * cs.curving(chart, face)
        out[cell] = total
    return out


def boundary_holonomy_check(
    cs: ConnectiveStructure, volume: ChartedVolume, tol: float = 1e-8
):
    """Compare boundary holonomy with the exponentiated curvature total.

    Returns (passed, distance, holonomy, curvature_total).
    """
    hol = surface_holonomy(cs, volume.boundary())
    total = math.fsum(three_curvature(cs, volume).values())
    predicted = cmath.exp(2j * cmath.pi * total)
    distance = abs(hol.value - predicted)
    return distance <= tol, distance, hol, total


def transgression_cochain(cs: ConnectiveStructure, volume: ChartedVolume) -> dict:
    """Integer obstruction cocycle of the discretized structure, per cell.

    For each cell, the curvature value minus the boundary sum of the face
    contributions (with transition phases folded in through the principal
    branch) is an integer up to discretization error; the rounded values
    form an integer 3-cocycle representing the structure's class.
    Returns (values, max_rounding_residual).
    """
    face_value = {}
    for cell in volume.cells:
        for face, _ in boundary_with_signs(cell):
            key = _sorted_key(face)
            if key not in face_value:
                real, circle = face_contribution(cs, key, volume.chi)
                face_value[key] = real + cmath.phase(circle) / (2 * math.pi)
    omega = three_curvature(cs, volume)
    values = {}
    residual = 0.0
    for cell in volume.cells:
        df = 0.0
        for face, sign in boundary_with_signs(cell):
            df += sign * _parity(face) * face_value[_sorted_key(face)]
        raw = omega[cell] - df
        n = round(raw)
        residual = max(residual, abs(raw - n))
        values[cell] = int(n)
    return values, residual


def transgression_degree(cs: ConnectiveStructure, volume: ChartedVolume):
    """Pairing of the obstruction cocycle with the oriented fundamental cycle.

    Only defined for closed volumes; for a triangulated 3-sphere this is the
    full characteristic class.  Returns (degree, max_rounding_residual).
    """
    if volume._boundary_faces:
        raise ContractViolationError("transgression degree needs a closed volume")
    values, residual = transgression_cochain(cs, volume)
    return sum(values.values()), residual

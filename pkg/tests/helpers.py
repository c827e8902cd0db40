"""Shared fixture builders for the test-suite."""

import cmath
import random

from gerbekit.cochains import CIRCLE, INTEGERS, Cochain, CyclicOfOrder, coboundary
from gerbekit.cohomology import cohomology_group, solve_integer_coboundary
from gerbekit.complexes import SimplicialComplex
from gerbekit.cyclic import CyclicCocycle, integer_lift
from gerbekit.gerbes import LineCocycle, LocalGerbe


def random_line_cocycle(rng: random.Random, complex_: SimplicialComplex) -> LineCocycle:
    values = {
        s: cmath.exp(2j * cmath.pi * rng.random()) for s in complex_.simplices(1)
    }
    return LineCocycle(complex_, Cochain(complex_, 1, CIRCLE, values))


def coboundary_gerbe(rng: random.Random, complex_: SimplicialComplex) -> LocalGerbe:
    line = random_line_cocycle(rng, complex_)
    return LocalGerbe(complex_, coboundary(line.h))


def torsion_seed_cocycle(complex_: SimplicialComplex, n: int) -> CyclicCocycle:
    """A mod-n 2-cocycle whose Bockstein class generates the torsion of H^3.

    Built from a representative integer 3-cocycle c of a torsion class with
    n c = delta(b): the reduction of b mod n has Bockstein class [c].
    """
    group = cohomology_group(complex_, 3)
    if not group.torsion:
        raise ValueError("complex has no 3-torsion")
    from gerbekit.cohomology import ClassCoordinates

    coords = ClassCoordinates(
        (0,) * group.free_rank, tuple((d, 1 if d == n else 0) for d in group.torsion)
    )
    rep = group.representative(coords)
    scaled = rep.map_values(lambda v: n * v)
    b = solve_integer_coboundary(scaled)
    if b is None:
        raise ValueError("torsion representative is not n-divisible")
    system = CyclicOfOrder(n)
    eps = Cochain(complex_, 2, system, {s: v % n for s, v in b.values.items()})
    return CyclicCocycle(complex_, eps)


def gerbe_from_cyclic(cocycle: CyclicCocycle) -> LocalGerbe:
    """Circle gerbe exp(2*pi*i*lift/n): its class is the Bockstein class."""
    n = cocycle.order
    lifted = integer_lift(cocycle.epsilon)
    values = {
        s: cmath.exp(2j * cmath.pi * v / n) for s, v in lifted.values.items()
    }
    return LocalGerbe(cocycle.complex, Cochain(cocycle.complex, 2, CIRCLE, values))


def twist(gerbe: LocalGerbe, line: LineCocycle) -> LocalGerbe:
    """Class-preserving surgery: multiply by the coboundary of a line cocycle."""
    return LocalGerbe(gerbe.complex, gerbe.g.combine(coboundary(line.h)))


# -- synthetic connective structures on abstract charted surfaces -----------

import itertools

from gerbekit.cochains import identity_cochain
from gerbekit.complexes import build_complex
from gerbekit.connective import ChartedSurface, ChartedVolume, ConnectiveStructure


def tetrahedron_surface_faces():
    """Outward-oriented boundary of the 3-simplex."""
    return [(1, 2, 3), (2, 0, 3), (0, 1, 3), (1, 0, 2)]


def octahedron_surface_faces():
    return [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
        (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4),
    ]


def closed_s3_cells():
    """Coherently oriented cells of the 4-simplex boundary."""
    return [(1, 2, 3, 4), (2, 0, 3, 4), (0, 1, 3, 4), (1, 0, 2, 4), (0, 1, 2, 3)]


def cone_cells(surface_faces, apex):
    return [(apex,) + tuple(f) for f in surface_faces]


def simplices_of_faces(faces):
    out = set()
    for f in faces:
        out.add(tuple(sorted(f)))
        for u, v in itertools.combinations(sorted(f), 2):
            out.add((u, v))
        for v in f:
            out.add((v,))
    return out


def simplices_of_cells(cells):
    out = set()
    for c in cells:
        for r in range(1, 5):
            for s in itertools.combinations(sorted(c), r):
                out.add(s)
    return out


def full_chart_assignment(simplices, charts, rng=None, chart=None):
    chi = {}
    adm = {}
    for s in simplices:
        adm[s] = frozenset(charts)
        if chart is not None:
            chi[s] = chart
        else:
            chi[s] = rng.choice(list(charts))
    return chi, adm


def synthetic_structure(rng, simplices, charts):
    """Exact-descent structure built from potentials.

    A = (vertex potential difference) + (per-chart edge potential
    difference), g = exp(2 pi i delta(vertex potentials)), and the curvings
    differ between charts by the edge-potential boundary sums, so every
    descent identity holds to machine precision.  The holonomy over a
    closed surface equals exp(2 pi i sum(rho)) regardless of the charts.
    """
    vertices = sorted(s[0] for s in simplices if len(s) == 1)
    edges = sorted(s for s in simplices if len(s) == 2)
    faces = sorted(s for s in simplices if len(s) == 3)
    pairs = list(itertools.combinations(charts, 2))
    triples = list(itertools.combinations(charts, 3))

    phi = {(p, v): rng.uniform(-1, 1) for p in pairs for v in vertices}
    psi = {(a, e): rng.uniform(-1, 1) for a in charts for e in edges}
    rho = {f: rng.uniform(-1, 1) for f in faces}

    A = {}
    for (a, b) in pairs:
        for (u, v) in edges:
            A[((a, b), (u, v))] = (
                phi[((a, b), v)] - phi[((a, b), u)]
                + psi[(b, (u, v))] - psi[(a, (u, v))]
            )
    g_samples = {}
    for (a, b, c) in triples:
        for v in vertices:
            angle = phi[((b, c), v)] - phi[((a, c), v)] + phi[((a, b), v)]
            g_samples[((a, b, c), v)] = cmath.exp(2j * cmath.pi * angle)
    f = {}
    from gerbekit.complexes import boundary_with_signs

    for face in faces:
        for a in charts:
            edge_part = sum(
                sign * psi[(a, tuple(sorted(e)))]
                for e, sign in boundary_with_signs(face)
            )
            f[(a, face)] = rho[face] + edge_part

    nerve = build_complex([tuple(charts)]) if len(charts) >= 3 else build_complex(
        [tuple(charts)]
    )
    gerbe = LocalGerbe(nerve, identity_cochain(nerve, 2, CIRCLE))
    cs = ConnectiveStructure(gerbe, A, f, g_samples)
    expected = sum(rho.values())
    return cs, rho, expected

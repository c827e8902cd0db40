import cmath
import random

import pytest

from gerbekit.cochains import CIRCLE, Cochain, coboundary, identity_cochain
from gerbekit.complexes import SimplicialMap, simplex_boundary, torsion_sphere
from gerbekit.errors import ContractViolationError, NotACocycleError
from gerbekit.gerbes import (
    LineCocycle,
    LocalGerbe,
    dd_class,
    dual,
    product,
    pullback_gerbe,
    stably_isomorphic,
    trivialization_difference,
    trivialization_residual,
    trivialize,
    validate_gerbe,
)

from helpers import (
    coboundary_gerbe,
    gerbe_from_cyclic,
    random_line_cocycle,
    torsion_seed_cocycle,
    twist,
)

S3 = simplex_boundary(4)
S2 = simplex_boundary(3)


def trivial_gerbe(complex_):
    return LocalGerbe(complex_, identity_cochain(complex_, 2, CIRCLE))


def test_trivial_gerbe_is_valid():
    assert validate_gerbe(trivial_gerbe(S3)) == []


def test_coboundary_gerbe_is_valid():
    rng = random.Random(1)
    for _ in range(5):
        g = coboundary_gerbe(rng, S3)
        assert validate_gerbe(g) == []


def test_perturbed_triangle_reports_cofaces():
    rng = random.Random(2)
    g = coboundary_gerbe(rng, S3)
    tris = S3.simplices(2)
    target = tris[4]
    bumped = dict(g.g.values)
    bumped[target] = bumped[target] * cmath.exp(0.3j)
    report = validate_gerbe(Cochain(S3, 2, CIRCLE, bumped))
    cofaces = {s for s in S3.simplices(3) if set(target) <= set(s)}
    assert {s for s, _ in report} == cofaces
    with pytest.raises(NotACocycleError):
        LocalGerbe(S3, Cochain(S3, 2, CIRCLE, bumped))


def test_dd_class_trivial_and_coboundary():
    rng = random.Random(3)
    assert dd_class(trivial_gerbe(S3)).is_zero
    for _ in range(5):
        assert dd_class(coboundary_gerbe(rng, S3)).is_zero


def test_dd_class_branch_independent():
    # Offsetting the lift by integers changes the representative by a
    # coboundary only; coordinates must be identical.
    k = torsion_sphere(2)
    seed = gerbe_from_cyclic(torsion_seed_cocycle(k, 2))
    base = dd_class(seed)
    rng = random.Random(4)
    rotated = {
        s: v * cmath.exp(2j * cmath.pi * rng.randint(-3, 3)) for s, v in seed.g.values.items()
    }
    again = dd_class(LocalGerbe(k, Cochain(k, 2, CIRCLE, rotated)))
    assert again.coords == base.coords


def test_dd_torsion_class_nonzero():
    for n in (2, 3, 4):
        k = torsion_sphere(n)
        seed = gerbe_from_cyclic(torsion_seed_cocycle(k, n))
        cls = dd_class(seed)
        assert not cls.is_zero
        assert cls.coords.scaled(n).is_zero


def test_dual_and_product_arithmetic():
    rng = random.Random(5)
    k = torsion_sphere(3)
    seed = gerbe_from_cyclic(torsion_seed_cocycle(k, 3))
    for _ in range(10):
        a = twist(seed, random_line_cocycle(rng, k))
        b = twist(twist(seed, random_line_cocycle(rng, k)), random_line_cocycle(rng, k))
        assert dd_class(dual(a)).coords == -dd_class(a).coords
        assert dd_class(product(a, b)).coords == dd_class(a).coords + dd_class(b).coords
        assert dual(dual(a)).g.allclose(a.g)
        assert dd_class(product(a, dual(a))).is_zero


def test_product_requires_same_complex():
    with pytest.raises(ContractViolationError):
        product(trivial_gerbe(S3), trivial_gerbe(S2))


def test_pullback_identity_and_constant():
    rng = random.Random(6)
    g = coboundary_gerbe(rng, S3)
    ident = SimplicialMap(S3, S3, {v: v for v in S3.vertices})
    assert pullback_gerbe(g, ident).g.allclose(g.g)
    const = SimplicialMap(S3, S3, {v: 0 for v in S3.vertices})
    assert pullback_gerbe(g, const).g.is_identity()


def torsion_sphere_automorphisms(n):
    """Pole swap and sector rotation of the suspended n-wrapped disk."""
    k = torsion_sphere(n)
    m = 3 * n
    poles = (m + 4, m + 5)
    swap = {v: v for v in k.vertices}
    swap[poles[0]], swap[poles[1]] = poles[1], poles[0]
    rotate = {0: 0, poles[0]: poles[0], poles[1]: poles[1]}
    for i in range(m):
        rotate[1 + i] = 1 + (i + 1) % m
    for j in range(3):
        rotate[1 + m + j] = 1 + m + (j + 1) % 3
    return k, [swap, rotate]


def test_pullback_naturality():
    # dd(pullback) equals the class of the pulled-back dd representative.
    rng = random.Random(7)
    from gerbekit.cochains import pullback_cochain
    from gerbekit.cohomology import cohomology_group

    k, autos = torsion_sphere_automorphisms(2)
    seed = gerbe_from_cyclic(torsion_seed_cocycle(k, 2))
    group = cohomology_group(k, 3)
    for vm in autos:
        phi = SimplicialMap(k, k, vm)
        lhs = dd_class(pullback_gerbe(seed, phi)).coords
        rhs = group.coordinates_of(pullback_cochain(dd_class(seed).representative, phi))
        assert lhs == rhs

    # On the 4-simplex boundary every vertex map is simplicial.
    verts = list(S3.vertices)
    group3 = cohomology_group(S3, 3)
    for _ in range(10):
        image = [rng.choice(verts) for _ in verts]
        phi = SimplicialMap(S3, S3, dict(zip(verts, image)))
        g = coboundary_gerbe(rng, S3)
        lhs = dd_class(pullback_gerbe(g, phi)).coords
        rhs = group3.coordinates_of(pullback_cochain(dd_class(g).representative, phi))
        assert lhs == rhs


def test_trivialize_trivial_and_coboundary():
    rng = random.Random(8)
    h = trivialize(trivial_gerbe(S3))
    assert h is not None
    assert trivialization_residual(trivial_gerbe(S3), h) <= 1e-9
    for _ in range(5):
        g = coboundary_gerbe(rng, S3)
        h = trivialize(g)
        assert h is not None
        assert trivialization_residual(g, h) <= 1e-9


def test_trivialize_on_sphere_with_free_h2():
    # The 2-sphere has H^2 = Z: the integer-class correction must kick in.
    rng = random.Random(9)
    for _ in range(10):
        g = coboundary_gerbe(rng, S2)
        h = trivialize(g)
        assert h is not None
        assert trivialization_residual(g, h) <= 1e-9


def test_trivialize_detects_period_obstruction():
    # A circle 2-cochain on the 2-sphere with irrational total period is a
    # cocycle (no 3-simplices) but admits no trivialization.
    values = {s: 1 + 0j for s in S2.simplices(2)}
    values[S2.simplices(2)[0]] = cmath.exp(2j * cmath.pi * 0.37)
    g = LocalGerbe(S2, Cochain(S2, 2, CIRCLE, values))
    assert dd_class(g).is_zero
    assert trivialize(g) is None


def test_trivialize_nonzero_class_returns_none():
    for n in (2, 3):
        k = torsion_sphere(n)
        seed = gerbe_from_cyclic(torsion_seed_cocycle(k, n))
        assert trivialize(seed) is None


def test_stably_isomorphic():
    rng = random.Random(10)
    k = torsion_sphere(3)
    seed = gerbe_from_cyclic(torsion_seed_cocycle(k, 3))
    twisted = twist(seed, random_line_cocycle(rng, k))
    assert stably_isomorphic(seed, twisted)
    assert not stably_isomorphic(seed, trivial_gerbe(k))
    # 2 * dd != 0 in Z/3, so a gerbe is not equivalent to its dual.
    assert not stably_isomorphic(seed, dual(seed))


def test_trivialization_difference():
    rng = random.Random(11)
    g = coboundary_gerbe(rng, S3)
    h1 = trivialize(g)
    q0 = random_line_cocycle(rng, S3)
    base_cocycle = coboundary(q0.h)
    # h2 = h1 * (a cocycle with delta = 1): still trivializes g.
    flat = {s: 1 + 0j for s in S3.simplices(1)}
    flat[S3.simplices(1)[0]] = cmath.exp(0.4j)
    q_flat_values = flat
    # Build a genuine delta(q) = 1 cocycle: constant phases per vertex.
    phases = {v: cmath.exp(2j * cmath.pi * rng.random()) for v in S3.vertices}
    q_values = {
        (a, b): phases[b] / phases[a] for (a, b) in S3.simplices(1)
    }
    q = LineCocycle(S3, Cochain(S3, 1, CIRCLE, q_values))
    assert coboundary(q.h).is_identity(tol=1e-12)
    h2 = LineCocycle(S3, h1.h.combine(q.h))
    diff = trivialization_difference(h2, h1)
    assert diff.h.allclose(q.h, tol=1e-9)
    assert coboundary(diff.h).is_identity(tol=1e-9)
    same = trivialization_difference(h1, h1)
    assert same.h.is_identity(tol=1e-12)


def test_trivialization_difference_rejects_mismatch():
    rng = random.Random(12)
    g1 = coboundary_gerbe(rng, S3)
    g2 = coboundary_gerbe(rng, S3)
    h1 = trivialize(g1)
    h2 = trivialize(g2)
    with pytest.raises(ContractViolationError):
        trivialization_difference(h1, h2)

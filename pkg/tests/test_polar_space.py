import random
from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_polar.pauli_core import parse_point, q0, symplectic_form
from pauli_polar.polar_space import (
    ELLIPTIC,
    HYPERBOLIC,
    OVOID,
    PERP,
    all_hyperplanes,
    build_polar_space,
    classify_grid_hyperplane,
    classify_hyperplane,
    geometry_veldkamp_lines,
    grid_geometry,
    hyperplane_census,
    is_generalized_quadrangle_22,
    is_hyperplane,
    is_triangle_free,
    mask_of,
    perp_set,
    points_of,
    quadric,
    transvection,
    veldkamp_census,
    veldkamp_sum,
)


def brute_lines(n):
    """Oracle: all isotropic triples {a, b, a+b} by direct search."""
    pts = range(1, 4 ** n)
    return {tuple(sorted((a, b, a ^ b))) for a, b in combinations(pts, 2) if not symplectic_form(a, b)}


@pytest.mark.parametrize("n,points,lines,planes", [(1, 3, 0, 0), (2, 15, 15, 0), (3, 63, 315, 135)])
def test_census(n, points, lines, planes):
    sp = build_polar_space(n)
    assert len(sp.points) == points
    assert len(sp.lines) == lines
    assert len(sp.planes) == planes


@pytest.mark.parametrize("n", [2, 3])
def test_lines_match_brute_force(n):
    assert set(build_polar_space(n).lines) == brute_lines(n)


def test_planes_are_isotropic_fano(w5):
    for pl in w5.planes:
        assert len(pl) == 7
        for a, b in combinations(pl, 2):
            assert not symplectic_form(a, b)
            assert a ^ b in pl


def test_doily_is_gq22(doily):
    assert is_generalized_quadrangle_22(doily.points, doily.lines)
    assert is_triangle_free(doily.points, doily.lines)
    per_point = Counter(p for l in doily.lines for p in l)
    assert set(per_point.values()) == {3}


def test_doily_hyperplanes_brute_force(doily):
    """Oracle: test every subset of the 15 points against the line condition."""
    lines = [mask_of(l) for l in doily.lines]
    full = doily.points_mask
    found = set()
    for bits in range(1, 1 << 15):
        mask = 0
        for k, p in enumerate(doily.points):
            if bits >> k & 1:
                mask |= 1 << p
        if mask == full:
            continue
        if all(l & mask == l or bin(l & mask).count("1") == 1 for l in lines):
            found.add(mask)
    assert found == {h.mask for h in all_hyperplanes(doily)}
    assert len(found) == 31


def test_hyperplane_examples(doily, w5):
    xx = perp_set(doily, parse_point("XX"))
    assert len(xx) == 7 and parse_point("XX") in xx
    assert len(perp_set(w5, parse_point("YYY"))) == 31
    assert len(quadric(w5, 0)) == 35
    e = quadric(w5, parse_point("YYY"))
    assert len(e) == 27 and e.kind == ELLIPTIC
    assert len(quadric(doily, 0)) == 9
    assert len(quadric(doily, parse_point("YI"))) == 5
    assert len(quadric(doily, parse_point("YY"))) == 9  # even Y count: symmetric, a grid
    assert not is_hyperplane(doily, doily.points_mask)
    for h in all_hyperplanes(doily):
        assert is_hyperplane(doily, h.mask)


def test_lines_through_centre_in_perp(w5):
    q = parse_point("XZY")
    c = perp_set(w5, q)
    for l in w5.lines:
        if q in l:
            assert all(p in c for p in l)


@pytest.mark.parametrize("n,expected", [(2, {PERP: 15, HYPERBOLIC: 10, ELLIPTIC: 6}),
                                        (3, {PERP: 63, HYPERBOLIC: 36, ELLIPTIC: 28})])
def test_hyperplane_census(n, expected):
    sp = build_polar_space(n)
    census = hyperplane_census(sp)
    for k, v in expected.items():
        assert census[k] == v
    assert census["total"] == 2 ** (2 * n + 1) - 1
    assert set(sp.enumerate_hyperplanes()) == {h.mask for h in all_hyperplanes(sp)}


@pytest.mark.parametrize("n", [2, 3])
def test_hyperplane_sizes(n):
    sp = build_polar_space(n)
    sizes = {PERP: 2 ** (2 * n - 1) - 1,
             HYPERBOLIC: 2 ** (2 * n - 1) + 2 ** (n - 1) - 1,
             ELLIPTIC: 2 ** (2 * n - 1) - 2 ** (n - 1) - 1}
    for h in all_hyperplanes(sp):
        assert len(h) == sizes[h.kind]
        if h.kind == HYPERBOLIC:
            assert q0(h.q) == 0
        if h.kind == ELLIPTIC:
            assert q0(h.q) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_classify_round_trip(n):
    sp = build_polar_space(n)
    for q in range(4 ** n):
        h = classify_hyperplane(sp, quadric(sp, q).mask)
        assert (h.kind, h.q) == (ELLIPTIC if q0(q) else HYPERBOLIC, q)
        if q:
            assert classify_hyperplane(sp, perp_set(sp, q).mask).q == q


def test_classify_rejects_non_hyperplane(doily):
    with pytest.raises(ValueError):
        classify_hyperplane(doily, mask_of(doily.points[:4]))


def test_veldkamp_identities(doily):
    n = doily.n
    for p in range(1, 16):
        for q in range(16):
            hp = quadric(doily, p)
            hq = quadric(doily, q)
            if p != q:
                s = veldkamp_sum(hp, hq)
                assert (s.kind, s.q) == (PERP, p ^ q)
            if q and p != q:
                s = veldkamp_sum(perp_set(doily, p), perp_set(doily, q))
                assert (s.kind, s.q) == (PERP, p ^ q)
            s = veldkamp_sum(perp_set(doily, p), hq)
            assert s.kind != PERP and s.q == p ^ q
    a, b = perp_set(doily, 3), quadric(doily, 5)
    assert veldkamp_sum(a, veldkamp_sum(a, b)).mask == b.mask
    assert n == 2


def test_doily_veldkamp_census(doily):
    census = veldkamp_census(doily)
    assert sum(census.values()) == 155
    assert len(census) == 5


def test_grid_census():
    g = grid_geometry()
    hs = g.enumerate_hyperplanes()
    kinds = Counter(classify_grid_hyperplane(g, h) for h in hs)
    assert kinds == {PERP: 9, OVOID: 6}
    assert len(geometry_veldkamp_lines(g, hs)) == 35


def _relabel(mask, h):
    return mask_of(transvection(h, p) for p in points_of(mask))


def test_transvection_invariance(w5):
    rng = random.Random(7)
    lines = {mask_of(l) for l in w5.lines}
    hyperplanes = {h.mask for h in all_hyperplanes(w5)}
    for _ in range(10):
        h = rng.randrange(1, 64)
        assert {_relabel(l, h) for l in lines} == lines
        assert {_relabel(m, h) for m in hyperplanes} == hyperplanes


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 63), st.integers(1, 63), st.integers(1, 63))
def test_transvection_preserves_form(h, u, v):
    assert symplectic_form(transvection(h, u), transvection(h, v)) == symplectic_form(u, v)


def test_backends_agree(w5):
    assert w5.enumerate_hyperplanes(pure=True) == w5.enumerate_hyperplanes(pure=False)

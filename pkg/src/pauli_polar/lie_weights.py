"""The magic Veldkamp line of W(5,2), its core doily, the A5 weight diagram and the Pfaffian.

The core is the 15 symmetric three-qubit operators commuting with YYY. Its
points are labelled by duads {i, j} of {1..6} (collinear iff disjoint), and
roots of A5 are skew-symmetric operators multiplied into the core.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional, Sequence

import numpy as np

from . import gf2
from .pauli_core import (
    PauliOperator,
    multiply,
    parse_point,
    product,
    q0,
    symplectic_form,
    to_matrix,
    vector_letters,
)
from .polar_space import (
    Hyperplane,
    PolarSpace,
    build_polar_space,
    is_generalized_quadrangle_22,
    mask_of,
    perp_set,
    points_of,
    quadric,
)

CORE_OPERATORS = (
    "YYI", "YIY", "IYY", "ZZI", "ZIZ", "IZZ", "XXI", "XIX",
    "IXX", "ZXI", "ZIX", "IZX", "XZI", "XIZ", "IXZ",
)

DUADS = tuple(combinations(range(1, 7), 2))

# A5 weight levels of the 15-dimensional representation, read from the highest weight
LAMBDA2_LEVELS = (1, 1, 2, 2, 3, 2, 2, 1, 1)


@dataclass(frozen=True)
class MagicVeldkampLine:
    perp: Hyperplane
    elliptic: Hyperplane
    hyperbolic: Hyperplane
    core: int

    @property
    def space(self) -> PolarSpace:
        return self.perp.space

    @property
    def core_points(self) -> list[int]:
        return points_of(self.core)

    def to_json(self) -> dict:
        sp = self.space
        return {
            "perp": self.perp.to_json(),
            "elliptic": self.elliptic.to_json(),
            "hyperbolic": self.hyperbolic.to_json(),
            "core": [sp.label(p) for p in self.core_points],
        }


def magic_veldkamp_line(space: Optional[PolarSpace] = None) -> MagicVeldkampLine:
    """(C_YYY, H_YYY, H_III) and their common pairwise intersection."""
    space = space or build_polar_space(3)
    if space.n != 3:
        raise ValueError("the magic line lives in W(5,2)")
    yyy = parse_point("YYY")
    c, e, h = perp_set(space, yyy), quadric(space, yyy), quadric(space, 0)
    core = c.mask & h.mask
    if not (core == c.mask & e.mask == h.mask & e.mask):
        raise AssertionError("pairwise intersections differ: not a Veldkamp line")
    return MagicVeldkampLine(c, e, h, core)


def induced_lines(space: PolarSpace, mask: int) -> list[tuple[int, int, int]]:
    return space.lines_within(mask)


def core_is_doily(space: PolarSpace, mask: int) -> bool:
    """GQ(2,2) test on a point set with the isotropic lines it contains."""
    return is_generalized_quadrangle_22(points_of(mask), induced_lines(space, mask))


@dataclass(frozen=True)
class DuadLabeling:
    """Duad -> core point, with disjoint duads on a common line."""

    space: PolarSpace
    mapping: dict  # (i, j) -> point

    def point(self, i: int, j: int) -> int:
        return self.mapping[(min(i, j), max(i, j))]

    def operator(self, i: int, j: int) -> PauliOperator:
        return PauliOperator.from_vector(self.point(i, j), self.space.n)

    def to_json(self) -> dict:
        return {f"{i}{j}": self.space.label(p) for (i, j), p in sorted(self.mapping.items())}


def _duad_geometry():
    lines = []
    for a, b, c in combinations(range(len(DUADS)), 3):
        s = set(DUADS[a]) | set(DUADS[b]) | set(DUADS[c])
        if len(s) == 6:
            lines.append((a, b, c))
    return lines


def duad_isomorphisms(space: PolarSpace, mask: int, *, limit: Optional[int] = None) -> list[dict]:
    """All bijections duads -> core points mapping synthemes onto core lines.

    Backtracking over duads in order; a partial map is pruned as soon as two
    mapped duads disagree on disjointness vs collinearity.
    """
    pts = points_of(mask)
    core_lines = induced_lines(space, mask)
    collinear = {p: set() for p in pts}
    for l in core_lines:
        for a, b in combinations(l, 2):
            collinear[a].add(b)
            collinear[b].add(a)
    disjoint = [[not set(d) & set(e) for e in DUADS] for d in DUADS]
    found: list[dict] = []
    image: list[int] = []

    def extend(k: int) -> bool:
        if k == len(DUADS):
            found.append({DUADS[i]: image[i] for i in range(k)})
            return limit is not None and len(found) >= limit
        for p in pts:
            if p in image:
                continue
            if all((image[i] in collinear[p]) == disjoint[k][i] for i in range(k)):
                image.append(p)
                if extend(k + 1):
                    return True
                image.pop()
        return False

    extend(0)
    return found


def find_duad_labeling(space: PolarSpace, mask: int) -> DuadLabeling:
    """First duad labeling in search order (duads lexicographic, points ascending)."""
    if not core_is_doily(space, mask):
        raise ValueError("point set is not a doily")
    isos = duad_isomorphisms(space, mask, limit=1)
    if not isos:
        raise AssertionError("doily admits no duad labeling")
    return DuadLabeling(space, isos[0])


@dataclass(frozen=True)
class WeightDiagram:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (from, to, root index 1..5)
    highest: int
    depth: dict

    def levels(self) -> tuple[int, ...]:
        counts: dict[int, int] = {}
        for d in self.depth.values():
            counts[d] = counts.get(d, 0) + 1
        return tuple(counts[d] for d in sorted(counts))

    def to_dot(self, n: int = 3) -> str:
        out = ["digraph weights {", "  rankdir=TB;"]
        for p in self.nodes:
            out.append(f"  p{p} [label={json.dumps(vector_letters(p, n))}];")
        for a, b, k in self.edges:
            out.append(f"  p{a} -> p{b} [label=\"a{k}\"];")
        out.append("}")
        return "\n".join(out) + "\n"


class RootError(ValueError):
    """Root multiplication leaves the allowed point set."""


def weight_orbit(roots: Sequence[int], highest: int, allowed: Optional[int] = None) -> WeightDiagram:
    """Breadth-first closure of ``highest`` under projective multiplication by roots.

    A root acts on a weight when the two operators anticommute; edges point
    away from the highest weight. With ``allowed`` given, leaving it is an error.
    """
    depth = {highest: 0}
    edges = []
    queue = deque([highest])
    while queue:
        u = queue.popleft()
        for k, r in enumerate(roots, start=1):
            if not symplectic_form(u, r):
                continue
            v = u ^ r
            if allowed is not None and not allowed >> v & 1:
                raise RootError(f"root {k} maps {u} outside the allowed set")
            if v not in depth:
                depth[v] = depth[u] + 1
                queue.append(v)
            if depth[v] == depth[u] + 1:
                edges.append((u, v, k))
    return WeightDiagram(tuple(sorted(depth)), tuple(edges), highest, depth)


def _cartan_ok(roots: Sequence[int]) -> bool:
    for i, j in combinations(range(len(roots)), 2):
        if symplectic_form(roots[i], roots[j]) != (1 if j == i + 1 else 0):
            return False
    return True


def is_valid_root_system(roots: Sequence[int], highest: int, core: int) -> bool:
    """A5 pattern, orbit of ``highest`` is the whole core with the 15-dim level profile."""
    if len(roots) != 5 or not all(q0(r) == 1 for r in roots) or not _cartan_ok(roots):
        return False
    try:
        wd = weight_orbit(roots, highest, allowed=core)
    except RootError:
        return False
    if mask_of(wd.nodes) != core or wd.levels() != LAMBDA2_LEVELS:
        return False
    per_root = [sum(1 for e in wd.edges if e[2] == k) for k in range(1, 6)]
    return per_root == [4] * 5


def find_root_systems(space: PolarSpace, highest: int, core: int, *,
                      limit: Optional[int] = None) -> list[tuple[int, ...]]:
    """Ordered skew-symmetric 5-tuples with adjacent roots anticommuting, others commuting.

    Chain search in ascending point order; each tuple is kept if its weight
    orbit from ``highest`` reproduces the core.
    """
    skew = [p for p in space.points if q0(p) == 1]
    found = []

    def extend(chain: list[int]) -> bool:
        if len(chain) == 5:
            if is_valid_root_system(chain, highest, core):
                found.append(tuple(chain))
                return limit is not None and len(found) >= limit
            return False
        for r in skew:
            if r in chain:
                continue
            if chain and not symplectic_form(chain[-1], r):
                continue
            if any(symplectic_form(c, r) for c in chain[:-1]):
                continue
            chain.append(r)
            stop = extend(chain)
            chain.pop()
            if stop:
                return True
        return False

    extend([])
    return found


def default_roots(space: Optional[PolarSpace] = None) -> tuple[int, ...]:
    space = space or build_polar_space(3)
    line = magic_veldkamp_line(space)
    found = find_root_systems(space, parse_point("ZIZ"), line.core, limit=1)
    if not found:
        raise AssertionError("no A5 root system reproduces the core")
    return found[0]


def pfaffian(a: np.ndarray) -> complex:
    """Sum over the perfect matchings of {0..n-1} of signed entry products."""
    a = np.asarray(a)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("square matrix required")
    if not np.allclose(a, -a.T, atol=1e-12 * max(1.0, float(np.abs(a).max(initial=0.0)))):
        raise ValueError("matrix is not skew-symmetric")
    if n % 2:
        return 0.0 * a.dtype.type(0)
    total = 0
    for matching, sign in perfect_matchings(n):
        term = sign
        for i, j in matching:
            term = term * a[i, j]
        total = total + term
    return total


def perfect_matchings(n: int):
    """Perfect matchings of range(n) with the sign of their permutation (i1 j1 i2 j2 ...)."""
    if n == 0:
        yield (), 1
        return
    for k in range(1, n):
        # pairing 0 with k moves k past k-1 entries
        sign = -1 if (k - 1) % 2 else 1
        rest = [x for x in range(1, n) if x != k]
        for sub, s in perfect_matchings(len(rest)):
            yield ((0, k),) + tuple((rest[i], rest[j]) for i, j in sub), sign * s


def labeled_operators(labeling: DuadLabeling, signs: Optional[dict] = None) -> dict:
    """Duad -> dense 8x8 matrix of the (optionally sign-adjusted) operator."""
    signs = signs or {}
    return {d: signs.get(d, 1) * to_matrix(labeling.operator(*d)) for d in DUADS}


def matching_signs(labeling: DuadLabeling) -> dict:
    """Sign s with O_a O_b O_c = s I for each perfect matching {a, b, c} of duads."""
    out = {}
    for a, b, c in combinations(DUADS, 3):
        if len(set(a) | set(b) | set(c)) == 6:
            out[(a, b, c)] = product([labeling.operator(*a), labeling.operator(*b), labeling.operator(*c)]).phase
    return {k: (1 if v == 0 else -1) for k, v in out.items()}


def pfaffian_sign_adjustment(labeling: DuadLabeling) -> dict:
    """Operator signs eps_d making every matching term agree with the Pfaffian sign.

    Solves, over F2, eps_a + eps_b + eps_c = [operator sign != permutation sign] for
    all 15 matchings. Returns {duad: +-1}; raises if the system is inconsistent.
    """
    msigns = matching_signs(labeling)
    perm_sign = {}
    for matching, s in perfect_matchings(6):
        key = tuple(sorted(tuple(sorted((i + 1, j + 1))) for i, j in matching))
        perm_sign[key] = s
    index = {d: k for k, d in enumerate(DUADS)}
    rows, rhs = [], []
    for trip, s in msigns.items():
        rows.append(mask_of(index[d] for d in trip))
        rhs.append(0 if s == perm_sign[tuple(sorted(trip))] else 1)
    x = gf2.solve(rows, rhs, len(DUADS))
    if x is None:
        raise AssertionError("no operator signs align the trace cube with the Pfaffian")
    return {d: (-1 if x >> index[d] & 1 else 1) for d in DUADS}


def omega(labeling: DuadLabeling, a: np.ndarray, signs: Optional[dict] = None) -> np.ndarray:
    mats = labeled_operators(labeling, signs)
    out = np.zeros((8, 8), dtype=complex)
    for (i, j), m in mats.items():
        out += a[i - 1, j - 1] * m
    return out


def random_skew(rng: np.random.Generator, n: int = 6) -> np.ndarray:
    upper = np.triu(rng.standard_normal((n, n)), 1)
    return upper - upper.T


def trace_cube_pfaffian_check(labeling: DuadLabeling, samples: int = 20, *, seed: int = 0,
                              rtol: float = 1e-9, signs: Optional[dict] = None) -> float:
    """Measure c with Tr(Omega^3) = c Pf(A) over random skew A; raise if c varies."""
    if signs is None:
        signs = pfaffian_sign_adjustment(labeling)
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(samples):
        a = random_skew(rng)
        om = omega(labeling, a, signs)
        tr3 = np.trace(om @ om @ om)
        pf = pfaffian(a)
        ratios.append(tr3 / pf)
    ratios = np.array(ratios)
    c = ratios.mean()
    spread = np.max(np.abs(ratios - c)) / abs(c)
    if abs(c) < 1e-12 or spread > rtol:
        raise AssertionError(f"Tr(Omega^3)/Pf(A) not constant (relative spread {spread:.3e})")
    return float(c.real)


def partition_35(space: Optional[PolarSpace] = None) -> tuple[int, int]:
    """Split the 35 symmetric operators into those commuting (15) and anticommuting (20) with YYY."""
    space = space or build_polar_space(3)
    h = quadric(space, 0)
    yyy = parse_point("YYY")
    inner = mask_of(p for p in h.points if not symplectic_form(p, yyy))
    return inner, h.mask & ~inner

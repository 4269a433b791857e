"""The symplectic polar space W(2N-1, 2), its geometric hyperplanes and Veldkamp lines.

Points are packed symplectic vectors ``1 .. 4**N - 1`` (see :mod:`pauli_polar.pauli_core`).
Point sets are Python ints used as bitmasks indexed by the point itself, so the
Veldkamp sum is ``full & ~(a ^ b)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import _backend
from .pauli_core import q0, symplectic_form, vector_letters

MAX_QUBITS = 6

PERP = "perp"
HYPERBOLIC = "hyperbolic"
ELLIPTIC = "elliptic"
OVOID = "ovoid"


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def gaussian_binomial_isotropic(n: int, k: int) -> int:
    """Number of totally isotropic k-dim subspaces of the 2n-dim symplectic space over F2."""
    num = 1
    den = 1
    for i in range(k):
        num *= 4 ** (n - i) - 1
        den *= 2 ** (i + 1) - 1
    return num // den


class IncidenceGeometry:
    """Finite point-line geometry with three points per line.

    ``points_mask`` selects which bit indices are points; lines are sorted triples.
    """

    def __init__(self, points: Sequence[int], lines: Sequence[tuple[int, int, int]],
                 labels: Optional[dict] = None):
        self.points = tuple(sorted(points))
        self.points_mask = mask_of(self.points)
        self._lines = tuple(tuple(sorted(l)) for l in lines)
        self.labels = labels or {p: str(p) for p in self.points}

    @property
    def lines(self) -> tuple[tuple[int, int, int], ...]:
        return self._lines

    @cached_property
    def line_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(l) for l in self.lines)

    def is_hyperplane(self, mask: int) -> bool:
        """Proper nonempty subset meeting every line in 1 or 3 points."""
        if mask == 0 or mask & ~self.points_mask or mask == self.points_mask:
            return False
        for lm in self.line_masks:
            k = bin(mask & lm).count("1")
            if k != 1 and k != 3:
                return False
        return True

    def enumerate_hyperplanes(self, *, pure: bool = False) -> list[int]:
        """Exhaustive hyperplane search (independent of any algebraic description)."""
        return _backend.enumerate_hyperplanes(self.points_mask, self.lines, pure=pure)

    def veldkamp_sum(self, a: int, b: int) -> int:
        """Complement of the symmetric difference of two point sets."""
        if a == b:
            raise ValueError("Veldkamp sum needs two distinct hyperplanes")
        return self.points_mask & ~(a ^ b)

    def lines_within(self, mask: int) -> list[tuple[int, int, int]]:
        return [l for l, lm in zip(self.lines, self.line_masks) if lm & mask == lm]

    def collinear(self, p: int, q: int) -> bool:
        return any((lm >> p) & 1 and (lm >> q) & 1 for lm in self.line_masks)


def grid_geometry() -> IncidenceGeometry:
    """The 3x3 grid GQ(2,1): points 3*r + c, rows and columns as lines."""
    rows = [(3 * r, 3 * r + 1, 3 * r + 2) for r in range(3)]
    cols = [(c, c + 3, c + 6) for c in range(3)]
    return IncidenceGeometry(range(9), rows + cols, {3 * r + c: f"({r},{c})" for r in range(3) for c in range(3)})


def classify_grid_hyperplane(grid: IncidenceGeometry, mask: int) -> str:
    """``perp`` if the hyperplane contains a line (two perpendicular lines), else ``ovoid``."""
    if not grid.is_hyperplane(mask):
        raise ValueError("not a hyperplane of the grid")
    return PERP if grid.lines_within(mask) else OVOID


class PolarSpace(IncidenceGeometry):
    """Points and totally isotropic lines (and planes) of W(2N-1, 2)."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"N must be in 1..{MAX_QUBITS}, got {n}")
        self.n = n
        pts = range(1, 4 ** n)
        super().__init__(pts, (), {p: vector_letters(p, n) for p in pts})

    @cached_property
    def lines(self) -> tuple[tuple[int, int, int], ...]:
        out = []
        pts = self.points
        for a in pts:
            for b in pts:
                if b <= a:
                    continue
                c = a ^ b
                if c > b and not symplectic_form(a, b):
                    out.append((a, b, c))
        return tuple(out)

    @cached_property
    def planes(self) -> tuple[tuple[int, ...], ...]:
        """Totally isotropic Fano planes as sorted 7-tuples (empty for N < 3)."""
        if self.n < 3:
            return ()
        seen = set()
        perp = self._perp_masks
        for a, b, c in self.lines:
            # only extend by points above the line's max so each plane is hit fewer times
            for d in points_of(perp[a] & perp[b] & ~((1 << (c + 1)) - 1)):
                seen.add(tuple(sorted((a, b, c, d, a ^ d, b ^ d, c ^ d))))
        return tuple(sorted(seen))

    def perp_points(self, *qs: int) -> list[int]:
        """Points orthogonal to every given vector."""
        return [p for p in self.points if not any(symplectic_form(p, q) for q in qs)]

    @cached_property
    def full_mask(self) -> int:
        return self.points_mask

    def label(self, p: int) -> str:
        return self.labels[p]

    def point_of(self, text: str) -> int:
        from .pauli_core import parse_point

        p = parse_point(text)
        if p >> (2 * self.n):
            raise ValueError(f"{text!r} is not an operator on {self.n} qubits")
        return p

    @cached_property
    def _perp_masks(self) -> dict[int, int]:
        return {q: mask_of(self.perp_points(q)) for q in self.points}

    @cached_property
    def _quadric_masks(self) -> dict[int, int]:
        return {q: mask_of(p for p in self.points if not (q0(p) ^ symplectic_form(q, p)))
                for q in range(4 ** self.n)}

    @cached_property
    def _classification(self) -> dict[int, tuple[str, int]]:
        table = {}
        for q, m in self._perp_masks.items():
            table[m] = (PERP, q)
        for q, m in self._quadric_masks.items():
            if m in table:
                raise AssertionError("perp set and quadric coincide")
            table[m] = (ELLIPTIC if q0(q) else HYPERBOLIC, q)
        return table

    def census(self) -> dict[str, int]:
        return {
            "n": self.n,
            "points": len(self.points),
            "lines": len(self.lines),
            "planes": len(self.planes),
        }


def build_polar_space(n: int, *, planes: Optional[bool] = None) -> PolarSpace:
    """Build W(2n-1, 2) with lines and, by default for 3 <= n <= 4, its planes materialized."""
    space = PolarSpace(n)
    space.lines
    if planes if planes is not None else 3 <= n <= 4:
        space.planes
    return space


@dataclass(frozen=True)
class Hyperplane:
    """Geometric hyperplane of a polar space with its type and parameter vector."""

    space: PolarSpace = field(repr=False, compare=False)
    mask: int
    kind: str
    q: int

    @property
    def points(self) -> list[int]:
        return points_of(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, p: int) -> bool:
        return bool(self.mask >> p & 1)

    @property
    def name(self) -> str:
        letters = vector_letters(self.q, self.space.n)
        return f"C_{letters}" if self.kind == PERP else f"H_{letters}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "q": vector_letters(self.q, self.space.n),
            "size": len(self),
            "points": [self.space.label(p) for p in self.points],
        }


def perp_set(space: PolarSpace, q: int) -> Hyperplane:
    """C_q: the operators commuting with O_q."""
    if q == 0:
        raise ValueError("perp set needs a nonzero point")
    if q not in space._perp_masks:
        raise ValueError(f"{q} is not a point of W({2 * space.n - 1},2)")
    return Hyperplane(space, space._perp_masks[q], PERP, q)


def quadric(space: PolarSpace, q: int) -> Hyperplane:
    """H_q: zero set of Q_q = Q_0 + <q, .>; hyperbolic iff q0(q) == 0."""
    if q not in space._quadric_masks:
        raise ValueError(f"{q} is not a vector of F2^{2 * space.n}")
    return Hyperplane(space, space._quadric_masks[q], ELLIPTIC if q0(q) else HYPERBOLIC, q)


def is_hyperplane(space: IncidenceGeometry, mask: int) -> bool:
    return space.is_hyperplane(mask)


def classify_hyperplane(space: PolarSpace, mask: int) -> Hyperplane:
    """Recover (kind, q) such that the point set is C_q or H_q."""
    if not space.is_hyperplane(mask):
        raise ValueError("point set is not a geometric hyperplane")
    try:
        kind, q = space._classification[mask]
    except KeyError:
        raise AssertionError("hyperplane is neither a perp set nor a quadric") from None
    return Hyperplane(space, mask, kind, q)


def all_hyperplanes(space: PolarSpace) -> list[Hyperplane]:
    """Every C_q and H_q, perp sets first, each group ordered by q."""
    out = [perp_set(space, q) for q in space.points]
    out += [quadric(space, q) for q in range(4 ** space.n)]
    return out


def hyperplane_census(space: PolarSpace, hyperplanes: Optional[Iterable[Hyperplane]] = None) -> dict[str, int]:
    hyperplanes = all_hyperplanes(space) if hyperplanes is None else hyperplanes
    counts = Counter(h.kind for h in hyperplanes)
    return {
        PERP: counts[PERP],
        HYPERBOLIC: counts[HYPERBOLIC],
        ELLIPTIC: counts[ELLIPTIC],
        "total": sum(counts.values()),
    }


def veldkamp_sum(h1: Hyperplane, h2: Hyperplane) -> Hyperplane:
    """Third hyperplane on the Veldkamp line through h1 and h2."""
    if h1.space is not h2.space and h1.space.n != h2.space.n:
        raise ValueError("hyperplanes live in different spaces")
    if h1.mask == h2.mask:
        raise ValueError("Veldkamp sum needs two distinct hyperplanes")
    return classify_hyperplane(h1.space, h1.space.veldkamp_sum(h1.mask, h2.mask))


def veldkamp_line_type(space: PolarSpace, line: Sequence[Hyperplane]) -> str:
    kinds = sorted((h.kind for h in line), key=[PERP, HYPERBOLIC, ELLIPTIC].index)
    key = "-".join(kinds)
    if kinds == [PERP, PERP, PERP]:
        a, b, _ = (h.q for h in line)
        key += "/collinear" if not symplectic_form(a, b) else "/noncollinear"
    return key


def veldkamp_lines(space: PolarSpace) -> list[tuple[Hyperplane, Hyperplane, Hyperplane]]:
    """All Veldkamp lines as triples closed under the Veldkamp sum."""
    hs = all_hyperplanes(space)
    by_mask = {h.mask: h for h in hs}
    seen = set()
    lines = []
    for h1, h2 in combinations(hs, 2):
        m3 = space.veldkamp_sum(h1.mask, h2.mask)
        h3 = by_mask.get(m3)
        if h3 is None:
            raise AssertionError("Veldkamp sum left the hyperplane set")
        key = tuple(sorted((h1.mask, h2.mask, m3)))
        if key in seen:
            continue
        seen.add(key)
        lines.append((h1, h2, h3))
    return lines


def veldkamp_census(space: PolarSpace) -> dict[str, int]:
    counts = Counter(veldkamp_line_type(space, l) for l in veldkamp_lines(space))
    return dict(sorted(counts.items()))


def geometry_veldkamp_lines(geom: IncidenceGeometry, hyperplanes: Sequence[int]) -> list[tuple[int, int, int]]:
    """Veldkamp lines of a generic geometry: triples {a, b, a (+) b} inside the hyperplane set."""
    hset = set(hyperplanes)
    seen = set()
    for a, b in combinations(hyperplanes, 2):
        c = geom.veldkamp_sum(a, b)
        if c in hset:
            seen.add(tuple(sorted((a, b, c))))
    return sorted(seen)


def is_generalized_quadrangle_22(points: Sequence[int], lines: Sequence[Sequence[int]]) -> bool:
    """GQ(2,2) axioms: 15 points, 15 lines, 3 points per line, 3 lines per point, no triangles."""
    pts = set(points)
    if len(pts) != 15 or len(lines) != 15:
        return False
    if any(len(set(l)) != 3 or not set(l) <= pts for l in lines):
        return False
    per_point = Counter(p for l in lines for p in l)
    if any(per_point[p] != 3 for p in pts):
        return False
    return is_triangle_free(pts, lines)


def is_triangle_free(points, lines) -> bool:
    """No three pairwise collinear points that are not on a common line."""
    line_of = {}
    for idx, l in enumerate(lines):
        for a, b in combinations(l, 2):
            line_of[frozenset((a, b))] = idx
    for a, b, c in combinations(sorted(points), 3):
        lab = line_of.get(frozenset((a, b)))
        lbc = line_of.get(frozenset((b, c)))
        lac = line_of.get(frozenset((a, c)))
        if lab is not None and lbc is not None and lac is not None and not (lab == lbc == lac):
            return False
    return True


def transvection(h: int, x: int) -> int:
    """Symplectic transvection x -> x + <x, h> h."""
    return x ^ h if symplectic_form(x, h) else x


def space_to_json(space: PolarSpace, *, planes: bool = False) -> dict:
    out = {
        "n": space.n,
        "points": [space.label(p) for p in space.points],
        "lines": [[space.label(p) for p in l] for l in space.lines],
    }
    if planes:
        out["planes"] = [[space.label(p) for p in pl] for pl in space.planes]
    return out


def incidence_dot(geom: IncidenceGeometry, name: str = "geometry", mask: Optional[int] = None) -> str:
    """Levi graph (points and lines as nodes) in DOT, optionally restricted to a point set."""
    mask = geom.points_mask if mask is None else mask
    out = [f"graph {json.dumps(name)} {{", "  node [shape=circle];"]
    for p in points_of(mask):
        out.append(f"  p{p} [label={json.dumps(geom.labels[p])}];")
    for k, l in enumerate(geom.lines_within(mask)):
        out.append(f"  l{k} [shape=point];")
        for p in l:
            out.append(f"  l{k} -- p{p};")
    out.append("}")
    return "\n".join(out) + "\n"

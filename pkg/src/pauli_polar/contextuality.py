"""Contexts, magic configurations, grids, pentagrams and the magic-square game."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product as iproduct
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend, gf2
from .pauli_core import PauliOperator, parse_pauli, product, symplectic_form, to_matrix
from .polar_space import PolarSpace, all_hyperplanes, HYPERBOLIC, mask_of, points_of


class ContextError(ValueError):
    """Operators do not form a valid context."""


def context_sign(ops: Sequence[PauliOperator]) -> int:
    """Sign s of a context: the product of its commuting operators equals s * I."""
    ops = list(ops)
    if len(ops) < 2:
        raise ContextError("a context needs at least two operators")
    for a, b in combinations(ops, 2):
        if symplectic_form(a, b):
            raise ContextError(f"{a} and {b} anticommute")
    prod = product(ops)
    if prod.vector:
        raise ContextError("context vectors do not sum to zero")
    if prod.phase == 0:
        return 1
    if prod.phase == 2:
        return -1
    raise AssertionError(f"commuting context with product phase i^{prod.phase}")


def context_sign_oracle(ops: Sequence[PauliOperator]) -> int:
    """Same sign read off the dense matrix product."""
    m = to_matrix(ops[0])
    for op in ops[1:]:
        m = m @ to_matrix(op)
    ident = np.eye(m.shape[0])
    if np.array_equal(m, ident):
        return 1
    if np.array_equal(m, -ident):
        return -1
    raise ContextError("matrix product is not +-I")


@dataclass(frozen=True)
class Configuration:
    """Point-context incidence structure labelled by Pauli operators.

    ``signs`` are the values the contexts are asked to multiply to; they normally
    equal the operator products but may be overridden to build non-quantum games.
    """

    operators: tuple[PauliOperator, ...]
    contexts: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.contexts):
            raise ValueError("one sign per context required")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        vectors = [op.vector for op in self.operators]
        if 0 in vectors or len(set(vectors)) != len(vectors):
            raise ValueError("points must be projectively distinct non-identity operators")
        keys = [tuple(sorted(c)) for c in self.contexts]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate context")
        for c in self.contexts:
            if not 2 <= len(c) <= 4:
                raise ValueError("contexts hold 2 to 4 operators")
            context_sign([self.operators[i] for i in c])

    @classmethod
    def from_operators(cls, operators: Iterable[PauliOperator | str],
                       contexts: Sequence[Sequence[int]]) -> "Configuration":
        ops = tuple(parse_pauli(o) if isinstance(o, str) else o for o in operators)
        ctx = tuple(tuple(c) for c in contexts)
        return cls(ops, ctx, tuple(context_sign([ops[i] for i in c]) for c in ctx))

    def with_signs(self, signs: Sequence[int]) -> "Configuration":
        return Configuration(self.operators, self.contexts, tuple(signs))

    @property
    def operator_signs(self) -> tuple[int, ...]:
        return tuple(context_sign([self.operators[i] for i in c]) for c in self.contexts)

    @cached_property
    def incidence(self) -> np.ndarray:
        m = np.zeros((len(self.contexts), len(self.operators)), dtype=np.uint8)
        for r, c in enumerate(self.contexts):
            m[r, list(c)] = 1
        return m

    @property
    def point_mask(self) -> int:
        return mask_of(op.vector for op in self.operators)

    @property
    def negative_contexts(self) -> list[tuple[int, ...]]:
        return [c for c, s in zip(self.contexts, self.signs) if s < 0]

    def to_json(self) -> dict:
        return {
            "points": [str(op) for op in self.operators],
            "contexts": [{"points": [str(self.operators[i]) for i in c], "sign": s}
                         for c, s in zip(self.contexts, self.signs)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Configuration":
        ops = [parse_pauli(t) for t in obj["points"]]
        index = {op.vector: k for k, op in enumerate(ops)}
        contexts, signs = [], []
        for entry in obj["contexts"]:
            pts = entry["points"]
            contexts.append(tuple(p if isinstance(p, int) else index[parse_pauli(p).vector] for p in pts))
            signs.append(int(entry["sign"]))
        return cls(tuple(ops), tuple(contexts), tuple(signs))

    def to_dot(self, name: str = "configuration") -> str:
        out = [f"graph {json.dumps(name)} {{"]
        for k, op in enumerate(self.operators):
            out.append(f"  p{k} [label={json.dumps(str(op))}];")
        for k, (c, s) in enumerate(zip(self.contexts, self.signs)):
            style = "bold" if s < 0 else "solid"
            out.append(f"  c{k} [shape=box, label=\"{'-' if s < 0 else '+'}\"];")
            for i in c:
                out.append(f"  c{k} -- p{i} [style={style}];")
        out.append("}")
        return "\n".join(out) + "\n"


def is_magic(config: Configuration) -> bool:
    """True iff no +-1 assignment to the points reproduces every context sign.

    Solves incidence . x = s over F2 with s_c = 1 for negative contexts.
    """
    rows = [mask_of(c) for c in config.contexts]
    rhs = [1 if s < 0 else 0 for s in config.signs]
    return gf2.solve(rows, rhs, len(config.operators)) is None


def parity_obstruction(config: Configuration) -> Optional[bool]:
    """Sign-product criterion, defined when every point is on an even number of contexts."""
    counts = config.incidence.sum(axis=0)
    if np.any(counts % 2):
        return None
    return int(np.prod(config.signs)) == -1


def mermin_square_canonical() -> Configuration:
    ops = ["IZ", "ZI", "ZZ", "XI", "IX", "XX", "XZ", "ZX", "YY"]
    rows = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    cols = [(0, 3, 6), (1, 4, 7), (2, 5, 8)]
    return Configuration.from_operators(ops, rows + cols)


def mermin_pentagram_canonical() -> Configuration:
    ops = ["XXX", "XZZ", "ZXZ", "ZZX", "XII", "IXI", "IIX", "ZII", "IZI", "IIZ"]
    contexts = [(0, 1, 2, 3), (0, 4, 5, 6), (1, 4, 8, 9), (2, 7, 5, 9), (3, 7, 8, 6)]
    return Configuration.from_operators(ops, contexts)


def configuration_from_points(space: PolarSpace, context_masks: Sequence[int]) -> Configuration:
    """Configuration on the union of the given contexts, Hermitian operator labels."""
    union = 0
    for m in context_masks:
        union |= m
    pts = points_of(union)
    index = {p: k for k, p in enumerate(pts)}
    ops = tuple(PauliOperator.from_vector(p, space.n) for p in pts)
    contexts = [tuple(index[p] for p in points_of(m)) for m in context_masks]
    return Configuration.from_operators(ops, contexts)


def enumerate_grids(space: PolarSpace) -> list[Configuration]:
    """The Mermin-Peres grids of the doily: hyperbolic quadrics with their six lines."""
    if space.n != 2:
        raise ValueError("grids are enumerated in W(3,2) only")
    out = []
    for h in all_hyperplanes(space):
        if h.kind != HYPERBOLIC:
            continue
        lines = space.lines_within(h.mask)
        rows, cols = _split_parallel_classes([mask_of(l) for l in lines])
        out.append(configuration_from_points(space, rows + cols))
    return out


def _split_parallel_classes(lines: list[int]) -> tuple[list[int], list[int]]:
    first = lines[0]
    rows = [l for l in lines if l == first or not l & first]
    cols = [l for l in lines if l not in rows]
    if len(rows) != 3 or len(cols) != 3:
        raise ValueError("line set is not a 3x3 grid")
    return rows, cols


def affine_contexts(space: PolarSpace) -> list[int]:
    """Four-point contexts {a, b, c, a+b+c} of totally isotropic planes, as sorted masks."""
    out = set()
    for plane in space.planes:
        for quad in combinations(plane, 4):
            if quad[0] ^ quad[1] ^ quad[2] ^ quad[3] == 0:
                out.add(mask_of(quad))
    return sorted(out)


def _thread_count(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get("PAULI_POLAR_THREADS", "1") or 1)
    return max(1, threads)


def enumerate_pentagrams(space: PolarSpace, *, threads: Optional[int] = None,
                         pure: bool = False) -> list[tuple[int, ...]]:
    """All Mermin pentagrams of W(5,2) as sorted 5-tuples of context masks.

    A pentagram is five four-point contexts, each pair sharing exactly one point,
    no point on three of them: ten points, each on two contexts.
    """
    if space.n != 3:
        raise ValueError("pentagrams are enumerated in W(5,2) only")
    masks = affine_contexts(space)
    workers = _thread_count(threads)
    n = len(masks)
    bounds = [(n * k // workers, n * (k + 1) // workers) for k in range(workers)]
    if workers == 1:
        chunks = [_backend.find_pentagrams(masks, 0, n, pure=pure)]
    else:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(lambda b: _backend.find_pentagrams(masks, b[0], b[1], pure=pure), bounds))
    return [tuple(masks[i] for i in hit) for chunk in chunks for hit in chunk]


def pentagram_configuration(space: PolarSpace, pentagram: Sequence[int]) -> Configuration:
    return configuration_from_points(space, pentagram)


def pentagrams_within(space: PolarSpace, mask: int, pentagrams: Optional[Sequence[Sequence[int]]] = None) -> int:
    """Number of pentagrams whose ten points all lie in ``mask``."""
    pentagrams = enumerate_pentagrams(space) if pentagrams is None else pentagrams
    count = 0
    for pg in pentagrams:
        union = 0
        for m in pg:
            union |= m
        if union & ~mask == 0:
            count += 1
    return count


def square_shape(config: Configuration) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Split a 3x3 configuration into rows (first three contexts) and columns."""
    if len(config.operators) != 9 or len(config.contexts) != 6:
        raise ValueError("square game needs 9 points and 6 contexts")
    rows, cols = [list(c) for c in config.contexts[:3]], [list(c) for c in config.contexts[3:]]
    if any(len(c) != 3 for c in rows + cols):
        raise ValueError("square game contexts hold three points")
    for group in (rows, cols):
        if sorted(p for c in group for p in c) != list(range(9)):
            raise ValueError("rows (and columns) must partition the points")
    for r in rows:
        for c in cols:
            if len(set(r) & set(c)) != 1:
                raise ValueError("each row must meet each column once")
    return [tuple(r) for r in rows], [tuple(c) for c in cols]


def _parity_triples(sign: int) -> list[tuple[int, int, int]]:
    return [t for t in iproduct((1, -1), repeat=3) if t[0] * t[1] * t[2] == sign]


def classical_game_value(config: Configuration) -> Fraction:
    """Best deterministic winning probability of the square game, uniform (row, column).

    Alice answers row r with a triple whose product is the row sign, Bob answers
    column c with one matching the column sign; they win when they agree on the
    shared cell.
    """
    rows, cols = square_shape(config)
    row_signs, col_signs = config.signs[:3], config.signs[3:]
    # cell position of (r, c) inside row r and inside column c
    pos = [[(rows[r].index(p), cols[c].index(p))
            for c in range(3) for p in set(rows[r]) & set(cols[c])] for r in range(3)]
    alice = list(iproduct(*[_parity_triples(s) for s in row_signs]))
    bob = list(iproduct(*[_parity_triples(s) for s in col_signs]))
    best = 0
    for a in alice:
        for b in bob:
            wins = sum(a[r][pos[r][c][0]] == b[c][pos[r][c][1]] for r in range(3) for c in range(3))
            if wins > best:
                best = wins
    return Fraction(best, 9)

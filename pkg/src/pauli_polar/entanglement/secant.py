"""Secant-variety dimensions of Segre and Veronese varieties via Terracini's lemma."""

from __future__ import annotations

from functools import reduce
from math import comb, prod
from typing import Sequence

import numpy as np

from .tensors import DEFAULT_EPS, numeric_rank

MAX_SIZE = 10_000


def _kron_all(vectors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, vectors)


def _random_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.standard_normal(d) + 1j * rng.standard_normal(d)


def segre_tangent_basis(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Rows spanning the affine tangent space at x1 (x) ... (x) xn (Leibniz rule)."""
    rows = []
    for k, xk in enumerate(factors):
        for i in range(len(xk)):
            e = np.zeros(len(xk), dtype=complex)
            e[i] = 1
            rows.append(_kron_all([e if j == k else f for j, f in enumerate(factors)]))
    return np.array(rows)


def veronese_tangent_basis(x: np.ndarray, degree: int) -> np.ndarray:
    """Rows spanning the affine tangent space of the cone over v_degree(P^{n-1}) at x^degree."""
    rows = []
    for i in range(len(x)):
        e = np.zeros(len(x), dtype=complex)
        e[i] = 1
        rows.append(sum(_kron_all([e if j == k else x for j in range(degree)]) for k in range(degree)))
    return np.array(rows)


def secant_dimension_estimate(fmt: Sequence[int], k: int, *, seed: int = 0,
                              symmetric: bool = False, eps: float = DEFAULT_EPS) -> int:
    """Affine dimension of the k-th secant of the Segre of ``fmt`` at random points.

    With ``symmetric=True`` the format (n, ..., n) is read as the Veronese
    embedding of P^{n-1} of degree ``len(fmt)`` (bosonic states).
    """
    fmt = tuple(int(d) for d in fmt)
    if k < 0 or any(d < 1 for d in fmt):
        raise ValueError("bad format or k")
    if k == 0:
        return 0
    if symmetric and len(set(fmt)) != 1:
        raise ValueError("symmetric format needs equal local dimensions")
    if k * (sum(d - 1 for d in fmt) + 1) >= MAX_SIZE or prod(fmt) >= MAX_SIZE:
        raise ValueError("format too large for the numeric estimate")
    rng = np.random.default_rng(seed)
    blocks = []
    for _ in range(k):
        if symmetric:
            blocks.append(veronese_tangent_basis(_random_vector(rng, fmt[0]), len(fmt)))
        else:
            blocks.append(segre_tangent_basis([_random_vector(rng, d) for d in fmt]))
    return numeric_rank(np.vstack(blocks), eps)


def variety_dimension(fmt: Sequence[int], *, symmetric: bool = False) -> int:
    return fmt[0] - 1 if symmetric else sum(d - 1 for d in fmt)


def ambient_dimension(fmt: Sequence[int], *, symmetric: bool = False) -> int:
    if symmetric:
        return comb(fmt[0] + len(fmt) - 1, len(fmt)) - 1
    return prod(fmt) - 1


def zak_dichotomy(fmt: Sequence[int], *, symmetric: bool = False, seed: int = 0) -> dict:
    """Which alternative of Zak's theorem holds for the separable-state variety.

    Branch 1: sigma_2 has dimension 2d + 1 and the tangential variety is a
    hypersurface in it; branch 2: sigma_2 is defective and equals the tangential variety.
    """
    d = variety_dimension(fmt, symmetric=symmetric)
    expected = 2 * d + 1
    actual = secant_dimension_estimate(fmt, 2, seed=seed, symmetric=symmetric) - 1
    branch = 1 if actual == expected else 2
    return {
        "format": list(fmt),
        "symmetric": symmetric,
        "dimension": d,
        "ambient": ambient_dimension(fmt, symmetric=symmetric),
        "expected": expected,
        "actual": actual,
        "branch": branch,
        "tau_equals_sigma": branch == 2,
    }

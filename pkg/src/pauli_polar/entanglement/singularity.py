"""Hyperplane sections of the Segre variety and their local singularity invariants.

Polynomials are sparse dicts ``{exponent tuple: coefficient}``. The Milnor
number is the dimension of C[x]/(J + m^D) once it stops changing between D and
D + 1; that equality means m^D lies in J + m^(D+1), hence in J locally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb, prod
from typing import Optional, Sequence

import numpy as np

from .tensors import DEFAULT_EPS, StateTensor, numeric_rank

D_MAX = 12


class NotCriticalError(ValueError):
    """Basepoint is not a singular point of the germ."""


class NonIsolatedError(ValueError):
    """Local algebra did not stabilize below the truncation bound."""


@dataclass(frozen=True)
class Poly:
    nvars: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1.0 + 0j})

    @classmethod
    def constant(cls, nvars: int, c: complex) -> "Poly":
        return cls(nvars, {(0,) * nvars: complex(c)} if c else {})

    def _clean(self, terms: dict) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in terms.items() if c != 0})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._clean(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def scale(self, s: complex) -> "Poly":
        return self._clean({e: c * s for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._clean(out)

    __rmul__ = scale

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), 0) + c * e[i]
        return self._clean(out)

    def __call__(self, point: Sequence[complex]) -> complex:
        return complex(sum(c * prod(x ** k for x, k in zip(point, e)) for e, c in self.terms.items()))

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def truncate(self, degree: int) -> "Poly":
        """Drop terms of total degree >= ``degree``."""
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) < degree})

    def translate(self, shift: Sequence[complex]) -> "Poly":
        """p(x + shift)."""
        if not any(shift):
            return self
        xs = [Poly.variable(self.nvars, i) + Poly.constant(self.nvars, s) for i, s in enumerate(shift)]
        out = Poly(self.nvars, {})
        for e, c in self.terms.items():
            term = Poly.constant(self.nvars, c)
            for x, k in zip(xs, e):
                term = term * (x ** k)
            out = out + term
        return out

    def substitute_linear(self, columns: Sequence[Sequence[complex]]) -> "Poly":
        """p(M y) for an nvars x m matrix given by its ``m`` columns."""
        m = len(columns)
        lin = [sum((Poly.variable(m, j).scale(columns[j][i]) for j in range(m)), Poly(m, {}))
               for i in range(self.nvars)]
        out = Poly(m, {})
        for e, c in self.terms.items():
            term = Poly.constant(m, c)
            for x, k in zip(lin, e):
                term = term * (x ** k)
            out = out + term
        return out

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def to_string(self, names: Sequence[str]) -> str:
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-k for k in t[0]])):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            coef = c.real if abs(c.imag) < 1e-15 else c
            if mono:
                parts.append(mono if coef == 1 else f"{coef:g}*{mono}")
            else:
                parts.append(f"{coef:g}")
        return " + ".join(parts) or "0"


def parse_polynomial(text: str, names: Sequence[str]) -> Poly:
    """Polynomial from a sympy-readable expression in the given variable names."""
    import sympy

    syms = sympy.symbols(list(names))
    p = sympy.Poly(sympy.sympify(text, locals=dict(zip(names, syms))), *syms)
    return Poly(len(names), {tuple(m): complex(c) for m, c in zip(p.monoms(), p.coeffs())})


@dataclass(frozen=True)
class LocalGerm:
    variables: tuple[str, ...]
    polynomial: Poly
    basepoint: tuple = ()

    def __post_init__(self):
        if not self.basepoint:
            object.__setattr__(self, "basepoint", (0,) * len(self.variables))
        if len(self.basepoint) != len(self.variables) or self.polynomial.nvars != len(self.variables):
            raise ValueError("variables, polynomial and basepoint disagree in size")

    @classmethod
    def from_string(cls, text: str, variables: Sequence[str], basepoint: Sequence[complex] = ()) -> "LocalGerm":
        return cls(tuple(variables), parse_polynomial(text, variables), tuple(basepoint))

    def centered(self) -> Poly:
        return self.polynomial.translate(self.basepoint)

    def __str__(self) -> str:
        return self.polynomial.to_string(self.variables)


_DEFAULT_NAMES = ("x", "y", "z", "t")


class SectionPolynomial:
    """f_psi = sum a_J x^1_{j1} ... x^n_{jn} on P^{d1-1} x ... x P^{dn-1}."""

    def __init__(self, t: StateTensor):
        self.tensor = t
        self.format = t.format

    def __call__(self, factors: Sequence[Sequence[complex]]) -> complex:
        a = self.tensor.amplitudes
        for x in factors:
            a = np.tensordot(np.asarray(x, dtype=complex), a, axes=([0], [0]))
        return complex(a)

    def gradient(self, factors: Sequence[Sequence[complex]]) -> list[np.ndarray]:
        """Partial derivatives grouped by factor."""
        a = self.tensor.amplitudes
        out = []
        for k in range(len(factors)):
            b = a
            # contract every factor but k; axes shift as we go
            for j in reversed(range(len(factors))):
                if j != k:
                    b = np.tensordot(b, np.asarray(factors[j], dtype=complex), axes=([j], [0]))
            out.append(np.asarray(b))
        return out

    def variable_names(self, chart: Sequence[int]) -> list[str]:
        n = len(self.format)
        bases = list(_DEFAULT_NAMES[:n]) if n <= len(_DEFAULT_NAMES) else [f"x{k + 1}_" for k in range(n)]
        names = []
        for k, d in enumerate(self.format):
            for i in range(d):
                if i == chart[k]:
                    continue
                names.append(bases[k] if d == 2 and n <= len(_DEFAULT_NAMES) else f"{bases[k]}{i}")
        return names

    def localize(self, chart: Sequence[int]) -> LocalGerm:
        """Set coordinate ``chart[k]`` of factor k to 1; the other coordinates become variables."""
        chart = tuple(int(c) for c in chart)
        if len(chart) != len(self.format) or any(not 0 <= c < d for c, d in zip(chart, self.format)):
            raise ValueError(f"chart {chart} out of range for format {self.format}")
        names = self.variable_names(chart)
        nv = len(names)
        # variable index of (factor, coordinate)
        slot = {}
        idx = 0
        for k, d in enumerate(self.format):
            for i in range(d):
                if i != chart[k]:
                    slot[(k, i)] = idx
                    idx += 1
        terms: dict = {}
        for J in product(*[range(d) for d in self.format]):
            c = self.tensor.amplitudes[J]
            if c == 0:
                continue
            e = [0] * nv
            for k, i in enumerate(J):
                if i != chart[k]:
                    e[slot[(k, i)]] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + complex(c)
        return LocalGerm(tuple(names), Poly(nv, {e: c for e, c in terms.items() if c != 0}))


def hyperplane_section_poly(t: StateTensor) -> SectionPolynomial:
    return SectionPolynomial(t)


def _monomials_below(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def quotient_dimension(generators: Sequence[Poly], nvars: int, degree: int, eps: float = DEFAULT_EPS) -> int:
    """dim C[x] / (J + m^degree) for J generated by ``generators``."""
    monos = _monomials_below(nvars, degree)
    if not monos:
        return 0
    index = {e: k for k, e in enumerate(monos)}
    rows = []
    for g in generators:
        low = min((sum(e) for e in g.terms), default=None)
        if low is None:
            continue
        for alpha in monos:
            if sum(alpha) + low >= degree:
                continue
            row = np.zeros(len(monos), dtype=complex)
            for e, c in g.terms.items():
                m = tuple(a + b for a, b in zip(alpha, e))
                if sum(m) < degree:
                    row[index[m]] += c
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - numeric_rank(np.array(rows), eps)


def milnor_number(f: Poly, *, d_max: int = D_MAX, eps: float = DEFAULT_EPS) -> int:
    """Local Milnor number at the origin; raises NonIsolatedError past ``d_max``."""
    grads = [f.diff(i) for i in range(f.nvars)]
    prev = quotient_dimension(grads, f.nvars, 1, eps)
    for degree in range(2, d_max + 2):
        cur = quotient_dimension(grads, f.nvars, degree, eps)
        if cur == prev:
            return cur
        prev = cur
    raise NonIsolatedError(f"local algebra not finite below degree {d_max}")


def hessian(f: Poly) -> np.ndarray:
    n = f.nvars
    h = np.zeros((n, n), dtype=complex)
    zero = (0,) * n
    for i in range(n):
        for j in range(n):
            h[i, j] = f.diff(i).diff(j)(zero)
    return h


@dataclass(frozen=True)
class SingularityAnalysis:
    is_singular: bool
    hessian_corank: int
    milnor_number: int
    cubic_discriminant: Optional[complex] = None

    def to_json(self) -> dict:
        out = {"is_singular": self.is_singular, "hessian_corank": self.hessian_corank,
               "milnor_number": self.milnor_number}
        if self.cubic_discriminant is not None:
            out["cubic_discriminant_abs"] = abs(self.cubic_discriminant)
        return out


def _binary_cubic_discriminant(p: Poly) -> complex:
    a = p.terms.get((3, 0), 0)
    b = p.terms.get((2, 1), 0)
    c = p.terms.get((1, 2), 0)
    d = p.terms.get((0, 3), 0)
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def singular_point_analysis(germ: LocalGerm, *, eps: float = DEFAULT_EPS, d_max: int = D_MAX) -> SingularityAnalysis:
    """Hessian corank and Milnor number of the germ at its basepoint."""
    f = germ.centered()
    n = f.nvars
    zero = (0,) * n
    scale = max((abs(c) for c in f.terms.values()), default=1.0) or 1.0
    if abs(f(zero)) > eps * scale:
        raise NotCriticalError("polynomial does not vanish at the basepoint")
    if any(abs(f.diff(i)(zero)) > eps * scale for i in range(n)):
        raise NotCriticalError("gradient does not vanish at the basepoint")
    h = hessian(f)
    corank = n - numeric_rank(h, eps) if np.any(h) else n
    mu = milnor_number(f, d_max=d_max, eps=eps)
    disc = None
    if corank == 2:
        _, s, vh = np.linalg.svd(h)
        kernel = vh.conj()[n - 2:] if np.any(h) else np.eye(n)[:2]
        cubic = f.homogeneous_part(3).substitute_linear([kernel[0], kernel[1]])
        disc = _binary_cubic_discriminant(cubic)
    return SingularityAnalysis(True, corank, mu, disc)


def singularity_type(result: SingularityAnalysis, eps: float = DEFAULT_EPS) -> str:
    """A1/A2/A3 from corank <= 1 and mu; D4 from corank 2, mu 4 and a cubic with three distinct roots."""
    mu, corank = result.milnor_number, result.hessian_corank
    if corank <= 1 and 1 <= mu <= 3 and (corank == 1) == (mu > 1):
        return f"A{mu}"
    if corank == 2 and mu == 4 and result.cubic_discriminant is not None and abs(result.cubic_discriminant) > eps:
        return "D4"
    return "OTHER"

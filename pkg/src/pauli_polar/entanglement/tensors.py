"""Pure-state tensors, flattening ranks, the Cayley hyperdeterminant and 3-qubit SLOCC classes."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

DEFAULT_EPS = 1e-8


@dataclass(frozen=True)
class StateTensor:
    """Amplitudes a[i1, ..., in] of a state in C^d1 (x) ... (x) C^dn (normalization optional)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=complex)
        if arr.ndim < 1:
            raise ValueError("tensor needs at least one factor")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def format(self) -> tuple[int, ...]:
        return self.amplitudes.shape

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateTensor":
        n = self.norm
        if n == 0:
            raise ValueError("zero tensor")
        return StateTensor(self.amplitudes / n)

    @classmethod
    def from_kets(cls, kets: dict[str, complex], fmt: Sequence[int] | None = None) -> "StateTensor":
        """Build from {"000": amp, ...}; digits index the factors."""
        n = len(next(iter(kets)))
        fmt = tuple(fmt) if fmt is not None else (2,) * n
        arr = np.zeros(fmt, dtype=complex)
        for key, amp in kets.items():
            arr[tuple(int(c) for c in key)] += amp
        return cls(arr)

    def to_json(self) -> dict:
        flat = self.amplitudes.reshape(-1)
        return {"format": list(self.format), "re": flat.real.tolist(), "im": flat.imag.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "StateTensor":
        fmt = tuple(int(d) for d in obj["format"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        size = int(np.prod(fmt))
        if re.size != size or im.size != size:
            raise ValueError(f"format {fmt} needs {size} amplitudes")
        return cls((re + 1j * im).reshape(fmt))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "StateTensor":
        return cls.from_json(json.loads(Path(path).read_text()))


def ket(label: str) -> StateTensor:
    return StateTensor.from_kets({label: 1.0})


GHZ = StateTensor.from_kets({"000": 2 ** -0.5, "111": 2 ** -0.5})
W = StateTensor.from_kets({"100": 3 ** -0.5, "010": 3 ** -0.5, "001": 3 ** -0.5})
B1 = StateTensor.from_kets({"000": 2 ** -0.5, "011": 2 ** -0.5})
B2 = StateTensor.from_kets({"000": 2 ** -0.5, "101": 2 ** -0.5})
B3 = StateTensor.from_kets({"000": 2 ** -0.5, "110": 2 ** -0.5})
SEP = ket("000")
EPR = StateTensor.from_kets({"00": 2 ** -0.5, "11": 2 ** -0.5})


def _require_format(t: StateTensor, fmt: tuple[int, ...]) -> None:
    if t.format != fmt:
        raise ValueError(f"expected format {fmt}, got {t.format}")


def two_qubit_separable(t: StateTensor, eps: float = DEFAULT_EPS) -> bool:
    """Product state iff a00 a11 - a01 a10 vanishes (relative to |t|^2)."""
    _require_format(t, (2, 2))
    norm2 = t.norm ** 2
    if norm2 == 0:
        raise ValueError("zero tensor")
    a = t.amplitudes
    return abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]) <= eps * norm2


def numeric_rank(m: np.ndarray, eps: float = DEFAULT_EPS) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > eps * s[0]))


def flattening(t: StateTensor, k: int) -> np.ndarray:
    """Factor k against the rest: a d_k x (prod of the others) matrix."""
    a = np.moveaxis(t.amplitudes, k, 0)
    return a.reshape(a.shape[0], -1)


def flattening_ranks(t: StateTensor, eps: float = DEFAULT_EPS) -> tuple[int, ...]:
    if t.norm == 0:
        raise ValueError("zero tensor")
    return tuple(numeric_rank(flattening(t, k), eps) for k in range(len(t.format)))


def cayley_hyperdet(t: StateTensor) -> complex:
    """Cayley's 2x2x2 hyperdeterminant (degree 4)."""
    _require_format(t, (2, 2, 2))
    a = t.amplitudes
    a000, a001, a010, a011 = a[0, 0, 0], a[0, 0, 1], a[0, 1, 0], a[0, 1, 1]
    a100, a101, a110, a111 = a[1, 0, 0], a[1, 0, 1], a[1, 1, 0], a[1, 1, 1]
    return complex(
        a000 ** 2 * a111 ** 2 + a001 ** 2 * a110 ** 2 + a010 ** 2 * a101 ** 2 + a100 ** 2 * a011 ** 2
        - 2 * (a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 + a000 * a111 * a110 * a001
               + a011 * a100 * a101 * a010 + a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001)
        + 4 * (a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100)
    )


def hyperdet_via_discriminant(t: StateTensor) -> complex:
    """Independent route: discriminant of det(A0 x + A1 y) as a binary quadratic form."""
    _require_format(t, (2, 2, 2))
    a0, a1 = t.amplitudes[0], t.amplitudes[1]
    # det(x A0 + y A1) = p x^2 + q x y + r y^2
    p = np.linalg.det(a0)
    r = np.linalg.det(a1)
    q = np.linalg.det(a0 + a1) - p - r
    return complex(q * q - 4 * p * r)


class SloccClass(str, enum.Enum):
    ZERO = "ZERO"
    SEP = "SEP"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    W = "W"
    GHZ = "GHZ"


_RANK_CLASS = {
    (1, 1, 1): SloccClass.SEP,
    (1, 2, 2): SloccClass.B1,
    (2, 1, 2): SloccClass.B2,
    (2, 2, 1): SloccClass.B3,
    (2, 2, 2): SloccClass.W,
}


def classify_3qubit_report(t: StateTensor, eps: float = DEFAULT_EPS) -> dict:
    """Class plus the quantities it was decided on, for judging marginal cases."""
    _require_format(t, (2, 2, 2))
    norm = t.norm
    if norm == 0:
        return {"class": SloccClass.ZERO.value, "hyperdet_abs": 0.0, "hyperdet_scaled": 0.0,
                "flattening_ranks": [0, 0, 0]}
    delta = abs(cayley_hyperdet(t))
    scaled = delta / norm ** 4
    ranks = flattening_ranks(t, eps)
    if scaled > eps:
        cls = SloccClass.GHZ
    else:
        try:
            cls = _RANK_CLASS[ranks]
        except KeyError:
            raise ValueError(f"inconsistent flattening ranks {ranks}") from None
    return {"class": cls.value, "hyperdet_abs": delta, "hyperdet_scaled": scaled,
            "flattening_ranks": list(ranks)}


def classify_3qubit(t: StateTensor, eps: float = DEFAULT_EPS) -> SloccClass:
    """SLOCC orbit of a three-qubit state: hyperdeterminant first, then flattening ranks."""
    return SloccClass(classify_3qubit_report(t, eps)["class"])


def random_sl(rng: np.random.Generator, d: int) -> np.ndarray:
    """Entries uniform in the unit disk, rescaled to determinant 1."""
    while True:
        r = np.sqrt(rng.random((d, d)))
        g = r * np.exp(2j * np.pi * rng.random((d, d)))
        det = np.linalg.det(g)
        if abs(det) > 1e-12:
            return g / det ** (1.0 / d)


def apply_local(t: StateTensor, gs: Sequence[np.ndarray]) -> StateTensor:
    """(g1 (x) ... (x) gn) applied to the state."""
    a = t.amplitudes
    for k, g in enumerate(gs):
        a = np.moveaxis(np.tensordot(g, a, axes=([1], [k])), 0, k)
    return StateTensor(a)


def random_slocc(rng: np.random.Generator, t: StateTensor) -> StateTensor:
    return apply_local(t, [random_sl(rng, d) for d in t.format])

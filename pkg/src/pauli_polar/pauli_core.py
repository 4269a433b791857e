"""Exact arithmetic in the N-qubit Pauli group.

Operators are stored in the canonical form ``i**phase * Z^mu1 X^nu1 (x) ... (x) Z^muN X^nuN``.
The symplectic vector ``(mu1, nu1, ..., muN, nuN)`` is packed into a Python ``int``
read most-significant-bit first, so qubit 1 owns bits ``2N-1`` (mu) and ``2N-2`` (nu).
With that layout the nu bits of every qubit sit on the even positions and the
symplectic form is two masked ANDs and a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union

import numpy as np

MAX_ORACLE_QUBITS = 6

# (mu, nu) per letter; Z = (1, 0), X = (0, 1), Y = Z X up to phase
_LETTER_BITS = {"I": (0, 0), "X": (0, 1), "Z": (1, 0), "Y": (1, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}
_PREFIX_PHASE = {"": 0, "i": 1, "-": 2, "-i": 3}
_PHASE_PREFIX = {v: k for k, v in _PREFIX_PHASE.items()}

_I2 = np.eye(2, dtype=complex)
_X2 = np.array([[0, 1], [1, 0]], dtype=complex)
_Z2 = np.array([[1, 0], [0, -1]], dtype=complex)


class PauliParseError(ValueError):
    """Malformed operator text. ``position`` is the offending character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def nu_mask(n: int) -> int:
    """Mask selecting the nu bits (even positions) of an n-qubit vector."""
    return int("01" * n, 2) if n > 0 else 0


def popcount(x: int) -> int:
    return bin(x).count("1")


def symplectic_form(u: Union[int, "PauliOperator"], v: Union[int, "PauliOperator"]) -> int:
    """Standard symplectic form sum_j (mu_j nu'_j + mu'_j nu_j) mod 2.

    Accepts packed vectors or operators; 0 means the operators commute.
    """
    if isinstance(u, PauliOperator) or isinstance(v, PauliOperator):
        if not (isinstance(u, PauliOperator) and isinstance(v, PauliOperator)):
            raise TypeError("mix of PauliOperator and raw vector")
        if u.n != v.n:
            raise ValueError(f"width mismatch: {u.n} vs {v.n}")
        u, v = u.vector, v.vector
    m = (u | v).bit_length() // 2 + 1
    nu = nu_mask(m)
    return popcount(((u >> 1) & v & nu) ^ ((v >> 1) & u & nu)) & 1


def q0(v: Union[int, "PauliOperator"]) -> int:
    """Quadratic form sum_j mu_j nu_j: the parity of the number of Y factors."""
    if isinstance(v, PauliOperator):
        v = v.vector
    nu = nu_mask(v.bit_length() // 2 + 1)
    return popcount((v >> 1) & v & nu) & 1


def qq(q: Union[int, "PauliOperator"], p: Union[int, "PauliOperator"]) -> int:
    """Shifted quadratic form Q_q(p) = Q_0(p) + <q, p>."""
    return q0(p) ^ symplectic_form(q, p)


def vector_to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> (2 * n - 1 - k)) & 1 for k in range(2 * n))


def bits_to_vector(bits) -> int:
    bits = list(bits)
    if len(bits) % 2 or not bits:
        raise ValueError("symplectic vector needs an even, positive number of bits")
    out = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        out = (out << 1) | b
    return out


def vector_letters(v: int, n: int) -> str:
    """Letter string (I/X/Y/Z) of a packed vector, phase ignored."""
    return "".join(
        _BITS_LETTER[((v >> (2 * (n - 1 - j) + 1)) & 1, (v >> (2 * (n - 1 - j))) & 1)]
        for j in range(n)
    )


def letters_to_vector(letters: str) -> int:
    v = 0
    for ch in letters:
        mu, nu = _LETTER_BITS[ch]
        v = (v << 2) | (mu << 1) | nu
    return v


def _y_count(v: int, n: int) -> int:
    return popcount((v >> 1) & v & nu_mask(n))


@dataclass(frozen=True, order=True)
class PauliOperator:
    """Element i**phase * Z^mu X^nu of the n-qubit Pauli group."""

    n: int
    phase: int
    vector: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("width must be >= 1")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)
        if not 0 <= self.vector < (1 << (2 * self.n)):
            raise ValueError(f"vector {self.vector} does not fit {self.n} qubits")

    @classmethod
    def from_vector(cls, v: int, n: int) -> "PauliOperator":
        """Hermitian representative of a projective point: the bare letter string."""
        return cls(n, (3 * _y_count(v, n)) % 4, v)

    @property
    def bits(self) -> tuple[int, ...]:
        return vector_to_bits(self.vector, self.n)

    @property
    def letters(self) -> str:
        return vector_letters(self.vector, self.n)

    @property
    def point(self) -> int:
        """Projective point of the operator; the identity has none."""
        if self.vector == 0:
            raise ValueError("identity has no projective point")
        return self.vector

    @property
    def is_identity_class(self) -> bool:
        return self.vector == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.phase + 2, self.vector)

    def __str__(self) -> str:
        rel = (self.phase - 3 * _y_count(self.vector, self.n)) % 4
        return _PHASE_PREFIX[rel] + self.letters

    def to_json(self) -> dict:
        return {"phase_exponent": self.phase, "bits": list(self.bits)}

    @classmethod
    def from_json(cls, obj: dict) -> "PauliOperator":
        bits = obj["bits"]
        return cls(len(bits) // 2, int(obj["phase_exponent"]) % 4, bits_to_vector(bits))


def parse_pauli(text: str) -> PauliOperator:
    """Parse ``["-"]["i"]`` followed by letters from IXYZ, e.g. ``"-iXYZ"``."""
    pos = 0
    prefix = ""
    if text[pos:pos + 1] in ("-", "+"):
        prefix += "-" if text[pos] == "-" else ""
        pos += 1
    if text[pos:pos + 1] == "i":
        prefix += "i"
        pos += 1
    letters = text[pos:]
    if not letters:
        raise PauliParseError("expected at least one Pauli letter", pos)
    for k, ch in enumerate(letters):
        if ch not in _LETTER_BITS:
            raise PauliParseError(f"unexpected character {ch!r}", pos + k)
    n = len(letters)
    v = letters_to_vector(letters)
    # each Y contributes Y = -i Z X
    phase = (_PREFIX_PHASE[prefix] + 3 * _y_count(v, n)) % 4
    return PauliOperator(n, phase, v)


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Group product a.b with the phase from commuting X^nu past Z^mu'."""
    if a.n != b.n:
        raise ValueError(f"width mismatch: {a.n} vs {b.n}")
    nu = nu_mask(a.n)
    swaps = popcount(a.vector & (b.vector >> 1) & nu)
    return PauliOperator(a.n, (a.phase + b.phase + 2 * swaps) % 4, a.vector ^ b.vector)


def product(ops) -> PauliOperator:
    ops = list(ops)
    if not ops:
        raise ValueError("empty product")
    return reduce(multiply, ops)


def identity(n: int) -> PauliOperator:
    return PauliOperator(n, 0, 0)


def to_matrix(a: PauliOperator) -> np.ndarray:
    """Dense 2^N x 2^N matrix by literal Kronecker products (oracle use only)."""
    if a.n > MAX_ORACLE_QUBITS:
        raise ValueError(f"matrix oracle limited to {MAX_ORACLE_QUBITS} qubits")
    out = np.array([[1j ** a.phase]], dtype=complex)
    for mu, nu in zip(a.bits[0::2], a.bits[1::2]):
        factor = (_Z2 if mu else _I2) @ (_X2 if nu else _I2)
        out = np.kron(out, factor)
    return out


def operator_string(v: int, n: int) -> str:
    """Letter string for a projective point."""
    return vector_letters(v, n)


def parse_point(text: str) -> int:
    """Projective point of an operator string (phase dropped)."""
    return parse_pauli(text).point

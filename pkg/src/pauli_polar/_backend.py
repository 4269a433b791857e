"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``PAULI_POLAR_PURE=1`` to force the Python kernels.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("PAULI_POLAR_PURE", "") not in ("", "0"):
    _ext = None
else:
    try:
        from . import _kernels as _ext
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _fits(masks) -> bool:
    return all(int(m) >> 64 == 0 for m in masks)


def kernels(masks=(), *, pure: bool = False):
    """Module providing the kernels for masks of this size."""
    if pure or _ext is None or not _fits(masks):
        return _kernels_py
    return _ext


def find_pentagrams(masks, start, stop, *, pure: bool = False):
    return kernels(masks, pure=pure).find_pentagrams(masks, start, stop)


def meet_once_neighbours(masks, *, pure: bool = False):
    return kernels(masks, pure=pure).meet_once_neighbours(masks)


def enumerate_hyperplanes(points_mask, lines, *, pure: bool = False):
    return kernels([points_mask], pure=pure).enumerate_hyperplanes(points_mask, lines)

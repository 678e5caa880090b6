"""Clock/shift operators, mutually unbiased bases and point projectors.

Operators are plain ``(d, d)`` complex numpy arrays indexed over the
computational basis; kets are length-``d`` complex arrays.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .geometry import Point
from .prime_field import PrimeDim, half, make_prime_dim


def omega(d: int | PrimeDim) -> complex:
    p = make_prime_dim(d)
    return complex(np.exp(2j * np.pi / p.d))


@lru_cache(maxsize=None)
def _roots(d: int) -> np.ndarray:
    # Powers of omega from integer exponents, so omega**k is exact per residue.
    r = np.exp(2j * np.pi * np.arange(d) / d)
    r.setflags(write=False)
    return r


def z_operator(d: int | PrimeDim) -> np.ndarray:
    """Clock: ``Z|n> = omega^n |n>``."""
    p = make_prime_dim(d)
    return np.diag(_roots(p.d)).astype(complex)


def x_operator(d: int | PrimeDim) -> np.ndarray:
    """Shift: ``X|n> = |n+1 mod d>``."""
    p = make_prime_dim(d)
    return np.roll(np.eye(p.d, dtype=complex), 1, axis=0)


def mub_exponents(m: int, b: int, p: PrimeDim) -> np.ndarray:
    """Integer exponents ``(b/2) n(n-1) - n m  (mod d)`` for ``n = 0..d-1``."""
    d = p.d
    n = np.arange(d)
    hb = half(b, p)
    return (hb * (n * (n - 1) % d) - n * m) % d


def mub_state(m: int, b: int, d: int | PrimeDim) -> np.ndarray:
    """The ket ``|m; b>``; ``b = -1`` gives the computational basis ket ``|m>``."""
    p = make_prime_dim(d)
    _check_labels(m, b, p.d)
    return _mub_state(m, b, p.d).copy()


@lru_cache(maxsize=None)
def _mub_state(m: int, b: int, d: int) -> np.ndarray:
    if b == -1:
        ket = np.zeros(d, dtype=complex)
        ket[m] = 1.0
    else:
        p = make_prime_dim(d)
        ket = _roots(d)[mub_exponents(m, b, p)] / np.sqrt(d)
    ket.setflags(write=False)
    return ket


def point_operator(alpha: Point, d: int | PrimeDim) -> np.ndarray:
    """Rank-one projector ``|m,b><b,m|`` attached to the point ``alpha = (m, b)``."""
    m, b = alpha
    ket = mub_state(m, b, d)
    return np.outer(ket, ket.conj())


def mub_matrix(b: int, d: int | PrimeDim) -> np.ndarray:
    """Columns are the kets ``|m; b>`` for ``m = 0..d-1``."""
    p = make_prime_dim(d)
    return np.column_stack([mub_state(m, b, p) for m in range(p.d)])


def all_point_operators(d: int | PrimeDim) -> np.ndarray:
    """Stack of every point projector, shape ``(d(d+1), d, d)``, column-major order."""
    p = make_prime_dim(d)
    return _all_point_operators(p.d).copy()


@lru_cache(maxsize=None)
def _all_point_operators(d: int) -> np.ndarray:
    kets = np.array([_mub_state(m, b, d) for b in range(-1, d) for m in range(d)])
    ops = kets[:, :, None] * kets.conj()[:, None, :]
    ops.setflags(write=False)
    return ops


def _check_labels(m: int, b: int, d: int) -> None:
    if not -1 <= b < d:
        raise ValueError(f"basis label b={b} out of range [-1, {d})")
    if not 0 <= m < d:
        raise ValueError(f"state label m={m} out of range [0, {d})")

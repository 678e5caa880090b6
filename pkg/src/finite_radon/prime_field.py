"""Arithmetic modulo an odd prime dimension."""

from __future__ import annotations

from dataclasses import dataclass, field


class DimensionError(ValueError):
    """Raised when a dimension is not an odd prime."""


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for desk-scale n."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeDim:
    """A validated odd-prime dimension with its table of modular inverses.

    Use :func:`make_prime_dim` rather than constructing directly.
    """

    d: int
    inv2: int = field(compare=False)
    inverses: tuple[int, ...] = field(compare=False, repr=False)

    def inv(self, k: int) -> int:
        k %= self.d
        if k == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.d}")
        return self.inverses[k]

    def __int__(self) -> int:
        return self.d


def make_prime_dim(d: int) -> PrimeDim:
    if isinstance(d, PrimeDim):
        return d
    if isinstance(d, bool) or not isinstance(d, int):
        raise DimensionError(f"dimension must be an integer, got {d!r}")
    if d == 2:
        raise DimensionError("d = 2 is excluded: dimension must be an odd prime")
    if d < 3:
        raise DimensionError(f"d = {d} is too small: dimension must be >= 3")
    if not is_prime(d):
        raise DimensionError(f"d = {d} is composite: dimension must be prime")
    # Fermat: k^(d-2) is the inverse of k mod prime d.
    inverses = (0,) + tuple(pow(k, d - 2, d) for k in range(1, d))
    return PrimeDim(d=d, inv2=inverses[2], inverses=inverses)


def half(x: int, p: PrimeDim) -> int:
    """Return x/2 in Z_d, i.e. ``x * inv2 mod d``."""
    return (x * p.inv2) % p.d

"""Residue arithmetic for strided progressions.

Two progressions ``m ≡ r1 (mod m1)`` and ``m ≡ r2 (mod m2)`` either never meet or meet
exactly on one class modulo ``lcm(m1, m2)``; compatibility is decided by ``gcd(m1, m2)``.
"""

from __future__ import annotations

from math import gcd
from typing import Optional, Tuple

from .models import StridedTail


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out // gcd(out, v) * v
    return out


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Optional[Tuple[int, int]]:
    """Common class of two congruences, or None when they are incompatible.

    Returns ``(r, L)`` with ``0 <= r < L = lcm(m1, m2)``.
    """
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    L = m1 // g * m2
    n2 = m2 // g
    if n2 == 1:
        return r1 % L, L
    t = ((r2 - r1) // g * pow(m1 // g, -1, n2)) % n2
    return (r1 + m1 * t) % L, L


def first_at_least(residue: int, modulus: int, floor: int) -> int:
    """Least m >= floor with m ≡ residue (mod modulus)."""
    return floor + (residue - floor) % modulus


def common_progression(t1: StridedTail, t2: StridedTail) -> Optional[StridedTail]:
    """Exact intersection of two strided tails, or None when it is empty."""
    common = crt_pair(t1.start, t1.stride, t2.start, t2.stride)
    if common is None:
        return None
    r, L = common
    start = first_at_least(r, L, max(t1.start, t2.start))
    excluded = frozenset(
        e for e in t1.excluded | t2.excluded if e >= start and (e - start) % L == 0
    )
    return StridedTail(start, L, excluded)


"""Definable sequences in S_ω: a finite prefix followed by round-robin channels.

With prefix length L and c channels, channel i (0-based) contributes its j-th term
at index ``L + (j-1)*c + i + 1``. Past the prefix and every skipped depth, each
residue class of the index modulo c carries either a constant point or a node whose
depth is affine in the index; that is what makes equality and convergence exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import ceil
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from .errors import NotAccumulating, NotInIP
from .fan import accumulates_at_apex, excluding_neighborhood, neighborhood_contains
from .models import (
    Certificate,
    ConstApex,
    ConstNode,
    DefinableSet,
    FanPoint,
    IncreasingIndexMap,
    NeighborhoodSpec,
    SequenceDescriptor,
    SpokeComponent,
    SpokeRun,
    StridedTail,
)
from .residues import common_progression, lcm
from .sets import in_ip

logger = logging.getLogger(__name__)

DISAGREEMENT_BOUND = 10_000


@dataclass(frozen=True)
class RangeSet:
    """Range of a sequence minus the apex, flagged when the apex occurs."""

    members: DefinableSet
    contains_apex: bool = False

    def to_dict(self) -> dict:
        return {"set": self.members.to_dict(), "containsApex": self.contains_apex}


@dataclass(frozen=True)
class Disagreement:
    kind: Literal["equal", "index", "agree_up_to"]
    index: Optional[int] = None

    @staticmethod
    def equal() -> "Disagreement":
        return Disagreement("equal")

    def __repr__(self) -> str:
        if self.kind == "equal":
            return "Equal"
        if self.kind == "index":
            return f"Index({self.index})"
        return f"AgreeUpTo({self.index})"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index}


def position(T: SequenceDescriptor, channel: int, j: int) -> int:
    """Index at which channel ``channel`` emits its j-th term."""
    return len(T.prefix) + (j - 1) * len(T.channels) + channel + 1


def term(T: SequenceDescriptor, k: int) -> FanPoint:
    if k < 1:
        raise ValueError(f"sequence indices start at 1, got {k}")
    L = len(T.prefix)
    if k <= L:
        return T.prefix[k - 1]
    j, i = divmod(k - L - 1, len(T.channels))
    return T.channels[i].term(j + 1)


def terms(T: SequenceDescriptor, count: int, start: int = 1) -> List[FanPoint]:
    return [term(T, k) for k in range(start, start + count)]


def converges_to_apex(T: SequenceDescriptor) -> Tuple[bool, Certificate]:
    """T → P iff no channel is a constant node."""
    for i, ch in enumerate(T.channels):
        if isinstance(ch, ConstNode):
            first = position(T, i, 1)
            c = len(T.channels)
            return False, Certificate(
                "excluding",
                {
                    "neighborhood": excluding_neighborhood(ch.point),
                    "channel": i,
                    "residue": first % c,
                    "modulus": c,
                    "from": first,
                },
            )
    return True, Certificate(
        "absorption",
        {"prefix_length": len(T.prefix), "channels": [ch.to_dict() for ch in T.channels]},
    )


def absorption_index(T: SequenceDescriptor, U: NeighborhoodSpec) -> int:
    """Least N with term(T, k) in U for every k >= N; T must converge to P."""
    last_bad = 0
    for k, p in enumerate(T.prefix, start=1):
        if not neighborhood_contains(U, p):
            last_bad = k
    for i, ch in enumerate(T.channels):
        if isinstance(ch, ConstApex):
            continue
        if isinstance(ch, ConstNode):
            raise ValueError("a sequence with a constant node channel does not converge to the apex")
        j0 = ch.first_index_at_least(U.threshold(ch.spoke))
        if j0 > 1:
            last_bad = max(last_bad, position(T, i, j0 - 1))
    return last_bad + 1


def _run_tail(run: SpokeRun) -> StridedTail:
    return StridedTail(run.start, run.stride, run.skipped)


def is_injective(T: SequenceDescriptor) -> Tuple[bool, Certificate]:
    """Structural injectivity; a failure names the first colliding index pair found."""

    def collision(k1: int, k2: int) -> Tuple[bool, Certificate]:
        a, b = sorted((k1, k2))
        return False, Certificate("collision", {"indices": [a, b], "point": term(T, a)})

    seen: Dict[FanPoint, int] = {}
    for k, p in enumerate(T.prefix, start=1):
        if p in seen:
            return collision(seen[p], k)
        seen[p] = k
    for i, ch in enumerate(T.channels):
        if isinstance(ch, (ConstApex, ConstNode)):
            return collision(position(T, i, 1), position(T, i, 2))
    for p, k in seen.items():
        if p.is_apex:
            continue
        for i, ch in enumerate(T.channels):
            if ch.spoke == p.spoke:
                j = ch.index_of(p.depth)
                if j is not None:
                    return collision(k, position(T, i, j))
    runs = list(enumerate(T.channels))
    for a, (i1, r1) in enumerate(runs):
        for i2, r2 in runs[a + 1:]:
            if r1.spoke != r2.spoke:
                continue
            common = common_progression(_run_tail(r1), _run_tail(r2))
            if common is not None:
                m = common.start
                return collision(position(T, i1, r1.index_of(m)), position(T, i2, r2.index_of(m)))
    return True, Certificate("injective", {"prefix_length": len(T.prefix), "channels": len(T.channels)})


def modify_prefix(T: SequenceDescriptor, new_prefix: Sequence[FanPoint]) -> Tuple[SequenceDescriptor, int]:
    """Replace the first terms of T by ``new_prefix``.

    Returns ``(S, N)`` where S starts with ``new_prefix`` and agrees with T at
    every index k >= N.
    """
    p = tuple(new_prefix)
    Lp, LT, c = len(p), len(T.prefix), len(T.channels)
    if Lp <= LT:
        S = SequenceDescriptor(p + T.prefix[Lp:], T.channels)
    else:
        q = ceil((Lp - LT) / c)
        padding = tuple(term(T, k) for k in range(Lp + 1, LT + q * c + 1))
        S = SequenceDescriptor(p + padding, tuple(ch.advanced(q) for ch in T.channels))
    return S, Lp + 1


def enumerate_set(M: DefinableSet) -> SequenceDescriptor:
    """Injective sequence converging to P whose range is exactly M (M in I_P).

    On each spoke the tails are periodic modulo the lcm of their strides beyond the
    deepest exclusion D; every depth below D goes into the prefix and each residue
    class from D on becomes one run.
    """
    ok, cert = in_ip(M)
    if not ok:
        raise NotInIP(f"enumeration needs a set in I_P ({cert.kind})")
    prefix: List[FanPoint] = []
    channels: List[SpokeRun] = []
    for comp in M.spoke_components:
        depths = set(comp.finite)
        if comp.tails:
            D = max(t.settled_start for t in comp.tails)
            L = lcm(*(t.stride for t in comp.tails))
            depths |= {m for m in range(1, D) if comp.contains(m)}
            for m in range(D, D + L):
                if any(t.contains(m) for t in comp.tails):
                    channels.append(SpokeRun(comp.spoke, m, L))
        prefix += [FanPoint(comp.spoke, m) for m in sorted(depths)]
    return SequenceDescriptor(tuple(prefix), tuple(channels))


def range_set(T: SequenceDescriptor) -> RangeSet:
    comps = []
    apex = False
    for p in T.prefix:
        if p.is_apex:
            apex = True
        else:
            comps.append(SpokeComponent.chunk(p.spoke, (p.depth,)))
    for ch in T.channels:
        if isinstance(ch, ConstApex):
            apex = True
        elif isinstance(ch, ConstNode):
            comps.append(SpokeComponent.chunk(ch.spoke, (ch.depth,)))
        else:
            comps.append(SpokeComponent(ch.spoke, tails=(_run_tail(ch),)))
    return RangeSet(DefinableSet(tuple(comps)), apex)


def range_in_ip(T: SequenceDescriptor) -> Tuple[bool, Certificate]:
    """I_P membership of the range of T minus the apex."""
    return in_ip(range_set(T).members)


def _settled_index(T: SequenceDescriptor) -> int:
    """First index from which every residue class mod c is constant or affine."""
    js = 1
    for ch in T.channels:
        if isinstance(ch, SpokeRun) and ch.skipped:
            js = max(js, ch.first_index_at_least(max(ch.skipped) + 1))
    return position(T, 0, js)


def _comparison_horizon(T: SequenceDescriptor, a: SequenceDescriptor) -> int:
    K = max(_settled_index(T), _settled_index(a))
    return K + 2 * lcm(len(T.channels), len(a.channels))


def sequences_equal(T: SequenceDescriptor, a: SequenceDescriptor) -> bool:
    """Exact equality of the term functions."""
    if T == a:
        return True
    return all(term(T, k) == term(a, k) for k in range(1, _comparison_horizon(T, a) + 1))


def first_disagreement(T: SequenceDescriptor, a: SequenceDescriptor, bound: int = DISAGREEMENT_BOUND) -> Disagreement:
    if bound < 1:
        raise ValueError("disagreement bound must be positive")
    if T == a:
        return Disagreement.equal()
    horizon = _comparison_horizon(T, a)
    for k in range(1, min(bound, horizon) + 1):
        if term(T, k) != term(a, k):
            return Disagreement("index", k)
    if horizon <= bound:
        return Disagreement.equal()
    return Disagreement("agree_up_to", bound)


def build_spoke_subsequence(a: IncreasingIndexMap) -> SequenceDescriptor:
    """T^a with term k = Node(1, a(k))."""
    a = a.canonical()
    L = len(a.initial)
    prefix = tuple(FanPoint(1, v) for v in a.initial)
    return SequenceDescriptor(prefix, (SpokeRun(1, a(L + 1), a.slope),))


def sequence_in_set(M: DefinableSet) -> SequenceDescriptor:
    """An injective sequence inside M converging to P, for M accumulating at P."""
    accumulates, _ = accumulates_at_apex(M)
    if not accumulates:
        raise NotAccumulating("no spoke meets the set in an infinite set")
    comp = next(c for c in M.spoke_components if c.tails)
    tail = comp.tails[0]
    return SequenceDescriptor((), (SpokeRun(comp.spoke, tail.start, tail.stride, tail.excluded),))

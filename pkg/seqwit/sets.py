"""Exact algebra of definable subsets of S_ω minus the apex.

Intersections are computed exactly: two strided tails on one spoke meet in a single
strided tail (residue compatibility modulo the gcd of the strides), rows meet
spokes in at most one point, and two rows are equal from some spoke on or meet in
at most one point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from .errors import UnsupportedCombination
from .fan import accumulates_at_apex
from .models import (
    Cardinality,
    Certificate,
    DefinableSet,
    FanPoint,
    NeighborhoodSpec,
    RowComponent,
    SpokeComponent,
    StridedTail,
)
from .residues import common_progression

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpokeSupport:
    spokes: FrozenSet[int] = frozenset()
    unbounded_rows: bool = False

    def to_dict(self) -> dict:
        return {"spokes": sorted(self.spokes), "unboundedRows": self.unbounded_rows}


def member(M: DefinableSet, x: FanPoint) -> bool:
    if x.is_apex:
        return False
    comp = M.component(x.spoke)
    if comp is not None and comp.contains(x.depth):
        return True
    return any(r.depth_at(x.spoke) == x.depth for r in M.row_components)


def cardinality_class(M: DefinableSet) -> Cardinality:
    if M.row_components or any(c.tails for c in M.spoke_components):
        return Cardinality.infinite()
    return Cardinality.finite(sum(len(c.finite) for c in M.spoke_components))


def _intersect_components(a: SpokeComponent, b: SpokeComponent) -> Optional[SpokeComponent]:
    finite = {m for m in a.finite if b.contains(m)} | {m for m in b.finite if a.contains(m)}
    tails = []
    for ta in a.tails:
        for tb in b.tails:
            common = common_progression(ta, tb)
            if common is not None:
                tails.append(common)
    if not finite and not tails:
        return None
    return SpokeComponent(a.spoke, frozenset(finite), tuple(tails))


def _row_meets_components(row: RowComponent, comps: Tuple[SpokeComponent, ...]) -> List[FanPoint]:
    hits = []
    for comp in comps:
        depth = row.depth_at(comp.spoke)
        if depth is not None and depth >= 1 and comp.contains(depth):
            hits.append(FanPoint(comp.spoke, depth))
    return hits


def _row_meets_row(r: RowComponent, s: RowComponent) -> Tuple[Optional[RowComponent], Optional[FanPoint]]:
    start = max(r.start_spoke, s.start_spoke)
    if r.slope == s.slope:
        if r.intercept == s.intercept:
            return RowComponent(start, r.slope, r.intercept), None
        return None, None
    num = s.intercept - r.intercept
    den = r.slope - s.slope
    if num % den:
        return None, None
    n = num // den
    if n < start:
        return None, None
    return None, r.point(n)


def intersect(M: DefinableSet, N: DefinableSet) -> DefinableSet:
    """Exact M ∩ N as a definable set."""
    comps = []
    for a in M.spoke_components:
        b = N.component(a.spoke)
        if b is not None:
            common = _intersect_components(a, b)
            if common is not None:
                comps.append(common)
    points: List[FanPoint] = []
    for r in M.row_components:
        points += _row_meets_components(r, N.spoke_components)
    for r in N.row_components:
        points += _row_meets_components(r, M.spoke_components)
    rows = []
    for r in M.row_components:
        for s in N.row_components:
            row, point = _row_meets_row(r, s)
            if row is not None:
                rows.append(row)
            if point is not None:
                points.append(point)
    return DefinableSet(tuple(comps), tuple(rows)).union(DefinableSet.points(points))


def intersection_class(M: DefinableSet, N: DefinableSet) -> Tuple[Cardinality, Certificate]:
    """Classify |M ∩ N| exactly.

    An infinite verdict is certified by a spoke and a residue class (the truncated
    count up to depth D is at least ``D // modulus - slack``) or by a shared row.
    A finite verdict lists every intersection point.
    """
    common = intersect(M, N)
    for comp in common.spoke_components:
        if comp.tails:
            tail = comp.tails[0]
            slack = tail.start // tail.stride + 1 + len(tail.excluded)
            return Cardinality.infinite(), Certificate(
                "residue",
                {
                    "spoke": comp.spoke,
                    "residue": tail.residue,
                    "modulus": tail.stride,
                    "from": tail.start,
                    "excluded": sorted(tail.excluded),
                    "slack": slack,
                },
            )
    if common.row_components:
        return Cardinality.infinite(), Certificate("row", {"row": common.row_components[0]})
    pts = sorted(FanPoint(c.spoke, m) for c in common.spoke_components for m in c.finite)
    return Cardinality.finite(len(pts)), Certificate("points", {"points": pts})


def almost_disjoint(M: DefinableSet, N: DefinableSet) -> bool:
    card, _ = intersection_class(M, N)
    return card.is_finite


def escape_neighborhood(row: RowComponent) -> NeighborhoodSpec:
    """f(n) = m_n + 1 along the row: every row point falls outside."""
    return NeighborhoodSpec(default=max(1, row.intercept + 1), slope=row.slope)


def in_ip(M: DefinableSet) -> Tuple[bool, Certificate]:
    """Decide M ∈ I_P: countably infinite and almost contained in every neighborhood."""
    if M.row_components:
        row = M.row_components[0]
        U = escape_neighborhood(row)
        logger.debug("not in I_P: row %s escapes %s", row, U)
        return False, Certificate("escape", {"neighborhood": U, "row": row})
    card = cardinality_class(M)
    if card.is_finite:
        return False, Certificate("finite", {"count": card.count})
    accumulates, acc = accumulates_at_apex(M)
    return True, Certificate(
        "spoke_support",
        {"spokes": list(M.spokes), "accumulation": acc.data if accumulates else None},
    )


def spoke_support(M: DefinableSet) -> SpokeSupport:
    return SpokeSupport(frozenset(M.spokes), bool(M.row_components))


def union(M: DefinableSet, N: DefinableSet) -> DefinableSet:
    return M.union(N)


def _remove_point(M: DefinableSet, x: FanPoint) -> DefinableSet:
    comps = []
    for comp in M.spoke_components:
        if comp.spoke != x.spoke or not comp.contains(x.depth):
            comps.append(comp)
            continue
        finite = comp.finite - {x.depth}
        tails = tuple(
            StridedTail(t.start, t.stride, t.excluded | {x.depth}) if t.contains(x.depth) else t for t in comp.tails
        )
        if finite or tails:
            comps.append(SpokeComponent(comp.spoke, finite, tails))
    rows = []
    extra = []
    for r in M.row_components:
        if r.depth_at(x.spoke) != x.depth:
            rows.append(r)
            continue
        extra += [r.point(n) for n in range(r.start_spoke, x.spoke)]
        rows.append(RowComponent(x.spoke + 1, r.slope, r.intercept))
    return DefinableSet(tuple(comps), tuple(rows)).union(DefinableSet.points(extra))


def difference(M: DefinableSet, N: DefinableSet) -> DefinableSet:
    """M minus a finite N; other differences leave the definable fragment."""
    if not cardinality_class(N).is_finite:
        raise UnsupportedCombination("set difference is only supported for a finite subtrahend")
    out = M
    for comp in N.spoke_components:
        for m in sorted(comp.finite):
            out = _remove_point(out, FanPoint(comp.spoke, m))
    return out

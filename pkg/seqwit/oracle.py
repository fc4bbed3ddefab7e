"""Truncation oracles: brute-force evaluation over bounded spokes and depths.

These never decide anything about the infinite objects; they cross-check the
symbolic decisions on a finite window.
"""

from __future__ import annotations

from typing import List, Set, Tuple

from .fan import neighborhood_contains
from .functions import evaluate, value_at_apex
from .models import Certificate, DefinableSet, FunctionDescriptor, NeighborhoodSpec, RowComponent, SequenceDescriptor
from .sequences import term
from .sets import member

Point = Tuple[int, int]

SPOKE_SPREAD = 16


def truncate_set(M: DefinableSet, max_spoke: int, max_depth: int) -> Set[Point]:
    """Points of M with spoke <= max_spoke and depth <= max_depth."""
    out: Set[Point] = set()
    for comp in M.spoke_components:
        if comp.spoke > max_spoke:
            continue
        out.update((comp.spoke, m) for m in comp.finite if m <= max_depth)
        for t in comp.tails:
            out.update((comp.spoke, m) for m in range(t.start, max_depth + 1, t.stride) if m not in t.excluded)
    for r in M.row_components:
        for n in range(r.start_spoke, max_spoke + 1):
            depth = r.depth_at(n)
            if depth <= max_depth:
                out.add((n, depth))
    return out


def brute_intersection_count(M: DefinableSet, N: DefinableSet, max_spoke: int, max_depth: int) -> int:
    return len(truncate_set(M, max_spoke, max_depth) & truncate_set(N, max_spoke, max_depth))


def oracle_in_ip(M: DefinableSet, max_spoke: int = 32, max_depth: int = 2048, spread: int = SPOKE_SPREAD) -> bool:
    """Window judgement of I_P membership.

    Infinite when the window count still grows between depth D/2 and D; almost
    contained in every neighborhood when the points stay on at most ``spread`` spokes.
    """
    full = truncate_set(M, max_spoke, max_depth)
    half = truncate_set(M, max_spoke, max_depth // 2)
    spokes = {n for n, _ in full}
    return len(full) > len(half) and len(spokes) <= spread


def validate_escape(M: DefinableSet, U: NeighborhoodSpec, row: RowComponent, count: int = 100) -> bool:
    """The first ``count`` points of the row lie in M and outside U."""
    for n in range(row.start_spoke, row.start_spoke + count):
        p = row.point(n)
        if not member(M, p) or neighborhood_contains(U, p):
            return False
    return True


def canonical_neighborhoods(count: int = 50) -> List[NeighborhoodSpec]:
    """A fixed family of basic neighborhoods mixing constant, affine and overridden thresholds."""
    family = []
    for i in range(count):
        default = 1 + (i * 7) % 40
        slope = i % 3
        overrides = {n: 1 + (i * n * 13) % 60 for n in range(1, i % 6 + 1)}
        family.append(NeighborhoodSpec.of(default, overrides, slope))
    return family


def absorbed(T: SequenceDescriptor, U: NeighborhoodSpec, start: int, window: int = 500) -> bool:
    return all(neighborhood_contains(U, term(T, k)) for k in range(start, start + window + 1))


def terms_agree(T: SequenceDescriptor, S: SequenceDescriptor, start: int, count: int) -> bool:
    return all(term(T, k) == term(S, k) for k in range(start, start + count))


def witness_class_holds(f: FunctionDescriptor, T: SequenceDescriptor, cert: Certificate, count: int = 100) -> bool:
    """|f(T_k) - f(P)| >= ε on the first ``count`` indices of the certified class."""
    apex = value_at_apex(f)
    k0, step, eps = cert["from"], cert["modulus"], cert["epsilon"]
    return all(abs(evaluate(f, term(T, k0 + i * step)) - apex) >= eps for i in range(count))


def eventually_apex_valued(f: FunctionDescriptor, T: SequenceDescriptor, start: int, window: int = 500) -> bool:
    apex = value_at_apex(f)
    return all(evaluate(f, term(T, k)) == apex for k in range(start, start + window))


def range_window(T: SequenceDescriptor, count: int, max_spoke: int, max_depth: int) -> Set[Point]:
    """Non-apex points among the first ``count`` terms, clipped to the window."""
    out: Set[Point] = set()
    for k in range(1, count + 1):
        p = term(T, k)
        if not p.is_apex and p.spoke <= max_spoke and p.depth <= max_depth:
            out.add((p.spoke, p.depth))
    return out


def enumeration_horizon(T: SequenceDescriptor, max_depth: int) -> int:
    """Index by which every run has passed ``max_depth``."""
    return len(T.prefix) + len(T.channels) * (max_depth + 1)

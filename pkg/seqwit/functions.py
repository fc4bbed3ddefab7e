"""Rational-valued definable functions: evaluation, eventual value patterns, discontinuity.

Along a single spoke a descriptor is eventually periodic in the depth: beyond every
override, chunk, row crossing and tail exclusion, the first matching layer depends
only on the depth modulo the lcm of the tail strides on that spoke. Discontinuity at
P therefore reduces to inspecting finitely many spokes: those the descriptor mentions
plus one spoke it does not mention, where the eventual value is ``default_value``.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .errors import NotInSP, UnsupportedChannel
from .models import (
    APEX,
    Certificate,
    Channel,
    ConstApex,
    ConstNode,
    FanPoint,
    FunctionDescriptor,
    NeighborhoodSpec,
    SequenceDescriptor,
    SpokeRun,
    ValuePattern,
)
from .residues import lcm
from .sequences import converges_to_apex, position
from .sets import member

logger = logging.getLogger(__name__)


def evaluate(f: FunctionDescriptor, x: FanPoint) -> Fraction:
    for p, v in f.point_overrides:
        if p == x:
            return v
    if x.is_apex:
        return f.apex_value
    for M, v in f.layers:
        if member(M, x):
            return v
    return f.default_value


def value_at_apex(f: FunctionDescriptor) -> Fraction:
    return evaluate(f, APEX)


def support_spokes(f: FunctionDescriptor) -> Tuple[int, ...]:
    """Spokes on which f is not eventually ``default_value`` by construction."""
    spokes = {p.spoke for p, _ in f.point_overrides if not p.is_apex}
    for M, _ in f.layers:
        spokes.update(M.spokes)
    return tuple(sorted(spokes))


def generic_spoke(f: FunctionDescriptor) -> int:
    """Least spoke the descriptor never mentions by a spoke component or override."""
    support = set(support_spokes(f))
    n = 1
    while n in support:
        n += 1
    return n


def candidate_spokes(f: FunctionDescriptor) -> Tuple[int, ...]:
    return tuple(sorted(set(support_spokes(f)) | {generic_spoke(f)}))


def _irregular_depth(f: FunctionDescriptor, spoke: int) -> int:
    """Depth beyond which f along the spoke is periodic modulo its tail strides."""
    bound = 0
    for p, _ in f.point_overrides:
        if p.spoke == spoke:
            bound = max(bound, p.depth)
    for M, _ in f.layers:
        comp = M.component(spoke)
        if comp is not None:
            bound = max([bound, *comp.finite, *(t.settled_start for t in comp.tails)])
        for r in M.row_components:
            depth = r.depth_at(spoke)
            if depth is not None:
                bound = max(bound, depth)
    return bound


def _spoke_modulus(f: FunctionDescriptor, spoke: int) -> int:
    strides = [1]
    for M, _ in f.layers:
        comp = M.component(spoke)
        if comp is not None:
            strides += [t.stride for t in comp.tails]
    return lcm(*strides)


def _minimal_period(values: List[Fraction]) -> int:
    n = len(values)
    for p in range(1, n + 1):
        if n % p == 0 and all(values[i] == values[i % p] for i in range(n)):
            return p
    return n


def channel_limit_values(f: FunctionDescriptor, ch: Channel) -> ValuePattern:
    """Eventually periodic pattern of ``j -> f(ch(j))``."""
    if isinstance(ch, ConstApex):
        return ValuePattern(1, 1, (value_at_apex(f),))
    if isinstance(ch, ConstNode):
        raise UnsupportedChannel("constant node channels have the constant pattern node_value_pattern gives")
    bound = max([_irregular_depth(f, ch.spoke), *ch.skipped])
    j0 = ch.first_index_at_least(bound + 1)
    Lf = _spoke_modulus(f, ch.spoke)
    period = Lf // gcd(Lf, ch.stride)
    values = [evaluate(f, ch.term(j)) for j in range(j0, j0 + period)]
    p = _minimal_period(values)
    return ValuePattern(j0, p, tuple(values[:p]))


def node_value_pattern(f: FunctionDescriptor, node: ConstNode) -> ValuePattern:
    return ValuePattern(1, 1, (evaluate(f, node.point),))


def _deviation(pattern: ValuePattern, apex: Fraction) -> Tuple[Fraction, int]:
    """Largest |v - apex| over the pattern and the first offset attaining it."""
    devs = [abs(v - apex) for v in pattern.values]
    eps = max(devs)
    return eps, devs.index(eps)


def continuity_neighborhood(f: FunctionDescriptor) -> Optional[NeighborhoodSpec]:
    """A neighborhood on which f is identically f(P), or None when f is discontinuous."""
    apex = value_at_apex(f)
    overrides = {}
    for n in candidate_spokes(f):
        pattern = channel_limit_values(f, SpokeRun(n))
        if any(v != apex for v in pattern.values):
            return None
        overrides[n] = pattern.pattern_start
    rows = [r for M, _ in f.layers for r in M.row_components]
    default = max([1] + [r.intercept + 1 for r in rows])
    slope = max([0] + [r.slope for r in rows])
    base = NeighborhoodSpec(default=default, slope=slope)
    support = set(support_spokes(f))
    return NeighborhoodSpec.of(
        default,
        {n: max(t, base.threshold(n)) for n, t in overrides.items() if n in support},
        slope,
    )


def discontinuous_at_apex(f: FunctionDescriptor) -> Tuple[bool, Certificate]:
    """Decide discontinuity at P.

    True certificates name the least spoke along which f keeps leaving f(P), the
    largest gap ε seen there and the residue class of depths realizing it. False
    certificates carry a neighborhood on which f equals f(P).
    """
    apex = value_at_apex(f)
    for n in candidate_spokes(f):
        pattern = channel_limit_values(f, SpokeRun(n))
        eps, offset = _deviation(pattern, apex)
        if eps > 0:
            depth = pattern.pattern_start + offset
            logger.debug("%s discontinuous along spoke %d (eps=%s)", f.name or "f", n, eps)
            return True, Certificate(
                "discontinuity",
                {"spoke": n, "epsilon": eps, "residue": depth % pattern.period, "modulus": pattern.period, "from": depth},
            )
    U = continuity_neighborhood(f)
    return False, Certificate("continuity", {"neighborhood": U, "value": apex})


def in_witness_family(f: FunctionDescriptor, T: SequenceDescriptor) -> Tuple[bool, Certificate]:
    """Decide T ∈ D(f): T converges to P and f(T_k) does not converge to f(P)."""
    converges, _ = converges_to_apex(T)
    if not converges:
        raise NotInSP("witness families only contain sequences converging to the apex")
    apex = value_at_apex(f)
    c = len(T.channels)
    settled = 1
    for i, ch in enumerate(T.channels):
        pattern = channel_limit_values(f, ch)
        eps, offset = _deviation(pattern, apex)
        if eps > 0:
            k0 = position(T, i, pattern.pattern_start + offset)
            return True, Certificate(
                "witness",
                {"channel": i, "epsilon": eps, "residue": k0 % (c * pattern.period), "modulus": c * pattern.period, "from": k0},
            )
        settled = max(settled, position(T, i, pattern.pattern_start))
    return False, Certificate("no_witness", {"value": apex, "from": settled})

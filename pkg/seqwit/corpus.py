"""Seeded generators for function corpora, definable sets, sequences and probes.

Every draw goes through a ``TraceRNG`` so that a suite report's seed reproduces
its inputs exactly.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from .functions import discontinuous_at_apex
from .models import (
    APEX,
    CanonicalFan,
    ChainDescriptor,
    Channel,
    ConstApex,
    ConstNode,
    DefinableSet,
    FanPoint,
    FunctionCorpus,
    FunctionDescriptor,
    IncreasingIndexMap,
    RowComponent,
    SequenceDescriptor,
    SpokeComponent,
    SpokeRun,
    StridedTail,
)
from .rng import TraceRNG
from .sequences import modify_prefix, term, terms

logger = logging.getLogger(__name__)

SET_SPOKES = 16
VALUES = (Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3, 4))
MIN_DISCONTINUOUS = 40


def random_point(rng: TraceRNG, max_spoke: int = 8, max_depth: int = 12, apex_chance: float = 0.0) -> FanPoint:
    if apex_chance and rng.chance(apex_chance, "point:apex"):
        return APEX
    return FanPoint(rng.randint(1, max_spoke, "point:spoke"), rng.randint(1, max_depth, "point:depth"))


def random_tail(rng: TraceRNG) -> StridedTail:
    start = rng.randint(1, 20, "tail:start")
    stride = rng.randint(1, 6, "tail:stride")
    progression = [start + i * stride for i in range(6)]
    excluded = rng.subset(progression, rng.randint(0, 2, "tail:holes"), "tail:excluded")
    return StridedTail(start, stride, frozenset(excluded))


def random_spoke_component(rng: TraceRNG, spoke: int, infinite: bool = True) -> SpokeComponent:
    chunk = frozenset(rng.randint(1, 30, "chunk:depth") for _ in range(rng.randint(0 if infinite else 1, 3, "chunk:size")))
    tails = tuple(random_tail(rng) for _ in range(rng.randint(1, 2, "component:tails"))) if infinite else ()
    return SpokeComponent(spoke, chunk, tails)


def random_ip_set(rng: TraceRNG, max_spoke: int = SET_SPOKES) -> DefinableSet:
    spokes = rng.subset(list(range(1, max_spoke + 1)), rng.randint(1, 3, "ip:spokes"), "ip:spoke-choice")
    comps = [random_spoke_component(rng, spokes[0])]
    comps += [random_spoke_component(rng, n, infinite=rng.chance(0.5, "ip:infinite")) for n in spokes[1:]]
    return DefinableSet(tuple(comps))


def random_row(rng: TraceRNG) -> RowComponent:
    n0 = rng.randint(1, 8, "row:from")
    slope = rng.randint(0, 8, "row:slope")
    intercept = rng.randint(max(1 - slope * n0, -5), 20, "row:intercept")
    return RowComponent(n0, slope, intercept)


def random_row_set(rng: TraceRNG) -> DefinableSet:
    rows = tuple(random_row(rng) for _ in range(rng.randint(1, 2, "rows:count")))
    comps = ()
    if rng.chance(0.4, "rows:with-spokes"):
        comps = random_ip_set(rng).spoke_components
    return DefinableSet(comps, rows)


def random_finite_set(rng: TraceRNG, max_spoke: int = SET_SPOKES) -> DefinableSet:
    count = rng.randint(1, 6, "finite:count")
    return DefinableSet.points(random_point(rng, max_spoke, 40) for _ in range(count))


def build_ip_corpus(rng: TraceRNG, count: int, max_spoke: int = SET_SPOKES) -> List[DefinableSet]:
    return [random_ip_set(rng, max_spoke) for _ in range(count)]


def build_set_corpus(rng: TraceRNG, count: int = 200, rows: int = 20, finite: int = 20) -> List[DefinableSet]:
    """Mixed sets: ``rows`` row sets, ``finite`` finite sets, the rest drawn from all kinds."""
    out = [random_row_set(rng) for _ in range(rows)]
    out += [random_finite_set(rng) for _ in range(finite)]
    makers = (random_ip_set, random_ip_set, random_row_set, random_finite_set)
    while len(out) < count:
        out.append(rng.choice(makers, "sets:kind")(rng))
    return out


def random_set(rng: TraceRNG) -> DefinableSet:
    return rng.choice((random_ip_set, random_row_set, random_finite_set), "set:kind")(rng)


def random_function(rng: TraceRNG, name: str = "") -> FunctionDescriptor:
    layers = tuple(
        (random_set(rng), rng.choice(VALUES, "fn:layer-value")) for _ in range(rng.randint(1, 3, "fn:layers"))
    )
    overrides = tuple(
        (random_point(rng, apex_chance=0.1), rng.choice(VALUES, "fn:override-value"))
        for _ in range(rng.randint(0, 2, "fn:overrides"))
    )
    return FunctionDescriptor(
        apex_value=rng.choice(VALUES[:4], "fn:apex"),
        point_overrides=overrides,
        layers=layers,
        default_value=rng.choice(VALUES[:4], "fn:default"),
        name=name,
    )


def build_default_corpus(
    spoke_bound: int = SET_SPOKES,
    seed: Optional[int] = None,
    rng: Optional[TraceRNG] = None,
    min_discontinuous: int = MIN_DISCONTINUOUS,
) -> FunctionCorpus:
    """1_P, every 1_{B_n} up to ``spoke_bound``, a few continuous functions, and random layers.

    Random functions are drawn until the corpus holds ``min_discontinuous``
    discontinuous members.
    """
    rng = rng or TraceRNG(seed)
    functions = [FunctionDescriptor.apex_indicator()]
    functions += [FunctionDescriptor.spoke_indicator(n) for n in range(1, spoke_bound + 1)]
    functions += [
        FunctionDescriptor.constant(0),
        FunctionDescriptor.constant(Fraction(3, 2)),
        FunctionDescriptor.indicator(DefinableSet.row(1, 0, 1), name="1_row"),
        FunctionDescriptor.indicator(DefinableSet.row(1, 1, 0), name="1_diagonal"),
        FunctionDescriptor.indicator(DefinableSet.points([FanPoint(1, 1), FanPoint(2, 2)]), name="1_finite"),
    ]
    discontinuous = 1 + spoke_bound
    i = 0
    while discontinuous < min_discontinuous:
        f = random_function(rng, name=f"random_{i:03d}")
        i += 1
        if discontinuous_at_apex(f)[0]:
            discontinuous += 1
            functions.append(f)
        elif rng.chance(0.25, "corpus:keep-continuous"):
            functions.append(f)
    logger.debug("default corpus: %d functions, %d discontinuous", len(functions), discontinuous)
    return FunctionCorpus(
        tuple(functions),
        seed=rng.seed,
        params={"spoke_bound": spoke_bound, "min_discontinuous": min_discontinuous},
    )


def random_channel(rng: TraceRNG, allow_const_node: bool = True) -> Channel:
    kind = rng.randint(0, 9, "channel:kind")
    if kind == 0:
        return ConstApex()
    if kind == 1 and allow_const_node:
        return ConstNode(rng.randint(1, 8, "channel:spoke"), rng.randint(1, 12, "channel:depth"))
    start = rng.randint(1, 10, "run:start")
    stride = rng.randint(1, 4, "run:stride")
    progression = [start + i * stride for i in range(1, 6)]
    skipped = rng.subset(progression, rng.randint(0, 2, "run:skips"), "run:skipped")
    return SpokeRun(rng.randint(1, 8, "run:spoke"), start, stride, frozenset(skipped))


def random_sequence(rng: TraceRNG, convergent: bool = False) -> SequenceDescriptor:
    prefix = tuple(random_point(rng, apex_chance=0.1) for _ in range(rng.randint(0, 4, "seq:prefix")))
    channels = tuple(random_channel(rng, not convergent) for _ in range(rng.randint(1, 3, "seq:channels")))
    return SequenceDescriptor(prefix, channels)


def random_prefix(rng: TraceRNG, max_len: int = 6) -> List[FanPoint]:
    return [random_point(rng, apex_chance=0.1) for _ in range(rng.randint(0, max_len, "prefix:len"))]


def random_probes(rng: TraceRNG, a: SequenceDescriptor, count: int, max_shared: int = 25) -> List[SequenceDescriptor]:
    """Probes that share a random-length prefix with ``a``; ``a`` itself is the first probe."""
    probes = [a]
    while len(probes) < count:
        shared = rng.randint(0, max_shared, "probe:shared")
        if rng.chance(0.5, "probe:modify"):
            x = random_point(rng, apex_chance=0.1)
            if x == term(a, shared + 1):
                x = FanPoint(x.spoke if not x.is_apex else 1, (x.depth if not x.is_apex else 0) + 1)
            probe, _ = modify_prefix(a, terms(a, shared) + [x])
        else:
            tail = random_sequence(rng, convergent=rng.chance(0.8, "probe:convergent"))
            probe = SequenceDescriptor(tuple(terms(a, shared)) + tail.prefix, tail.channels)
        probes.append(probe)
    return probes


def random_index_map(rng: TraceRNG) -> IncreasingIndexMap:
    initial: List[int] = []
    value = 0
    for _ in range(rng.randint(0, 4, "map:initial")):
        value += rng.randint(1, 5, "map:step")
        initial.append(value)
    slope = rng.randint(1, 4, "map:slope")
    L = len(initial)
    floor = value - slope * (L + 1) + 1
    intercept = floor + rng.randint(0, 6, "map:intercept")
    return IncreasingIndexMap(tuple(initial), slope, intercept)


def random_chain(rng: TraceRNG, marker: CanonicalFan = CanonicalFan(), max_len: int = 5) -> ChainDescriptor:
    """A descending chain of canonical fans with extras, ending at the marker."""
    extras: List[SequenceDescriptor] = []
    for _ in range(rng.randint(0, max_len - 1, "chain:extras")):
        extras.append(random_sequence(rng, convergent=True))
    entries = [CanonicalFan(marker.excluded, marker.extra + tuple(extras[:k])) for k in range(len(extras), 0, -1)]
    entries.append(marker)
    return ChainDescriptor(tuple(entries))


def distinct_index_map_pairs(rng: TraceRNG, count: int) -> List[Tuple[IncreasingIndexMap, IncreasingIndexMap]]:
    pairs = []
    while len(pairs) < count:
        a, b = random_index_map(rng), random_index_map(rng)
        if a.canonical() != b.canonical():
            pairs.append((a, b))
    return pairs

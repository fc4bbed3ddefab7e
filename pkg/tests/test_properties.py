import hypothesis.strategies as st
from hypothesis import given, settings

from seqwit.corpus import random_function, random_ip_set, random_prefix, random_sequence, random_set
from seqwit.fan import excluding_neighborhood, neighborhood_contains
from seqwit.functions import continuity_neighborhood, discontinuous_at_apex, evaluate, in_witness_family, value_at_apex
from seqwit.models import FanPoint, SequenceDescriptor, StridedTail
from seqwit.oracle import absorbed, canonical_neighborhoods, range_window, truncate_set
from seqwit.residues import common_progression
from seqwit.rng import TraceRNG
from seqwit.sequences import (
    absorption_index,
    converges_to_apex,
    enumerate_set,
    is_injective,
    modify_prefix,
    sequences_equal,
    term,
    terms,
)
from seqwit.sets import intersect

seeds = st.integers(min_value=0, max_value=2**32 - 1)
points = st.builds(FanPoint, st.integers(1, 50), st.integers(1, 500))


@st.composite
def tails(draw):
    start = draw(st.integers(1, 30))
    stride = draw(st.integers(1, 8))
    holes = draw(st.lists(st.integers(0, 5), max_size=3))
    return StridedTail(start, stride, frozenset(start + h * stride for h in holes))


@given(points)
def test_excluding_neighborhood_misses_the_node(x):
    U = excluding_neighborhood(x)
    assert not neighborhood_contains(U, x)
    assert all(neighborhood_contains(U, FanPoint(n, 1)) for n in range(1, 10) if n != x.spoke)


@given(tails(), tails())
def test_common_progression_is_exact(t1, t2):
    common = common_progression(t1, t2)
    expected = [m for m in range(1, 600) if t1.contains(m) and t2.contains(m)]
    got = [m for m in range(1, 600) if common is not None and common.contains(m)]
    assert got == expected


@settings(deadline=None)
@given(seeds)
def test_intersection_is_exact_on_a_window(seed):
    rng = TraceRNG(seed)
    M, N = random_set(rng), random_set(rng)
    assert truncate_set(intersect(M, N), 20, 300) == truncate_set(M, 20, 300) & truncate_set(N, 20, 300)


@settings(deadline=None)
@given(seeds)
def test_finite_modification(seed):
    rng = TraceRNG(seed)
    T = random_sequence(rng)
    p = random_prefix(rng, 8)
    f = random_function(rng)
    S, N = modify_prefix(T, p)
    assert terms(S, len(p)) == p
    assert all(term(S, k) == term(T, k) for k in range(N, N + 100))
    assert converges_to_apex(S)[0] == converges_to_apex(T)[0]
    if converges_to_apex(T)[0]:
        assert in_witness_family(f, S)[0] == in_witness_family(f, T)[0]


@settings(deadline=None)
@given(seeds, st.integers(0, 49))
def test_absorption_index_is_tight(seed, which):
    T = random_sequence(TraceRNG(seed), convergent=True)
    U = canonical_neighborhoods()[which]
    N = absorption_index(T, U)
    assert absorbed(T, U, N, 300)
    if N > 1:
        assert not neighborhood_contains(U, term(T, N - 1))


@settings(deadline=None)
@given(seeds)
def test_enumeration_is_injective_with_exact_range(seed):
    M = random_ip_set(TraceRNG(seed))
    T = enumerate_set(M)
    assert is_injective(T)[0]
    assert converges_to_apex(T)[0]
    count = len(T.prefix) + len(T.channels) * 301
    assert range_window(T, count, 16, 300) == truncate_set(M, 16, 300)


@settings(deadline=None)
@given(seeds)
def test_continuity_certificate_holds_on_a_grid(seed):
    f = random_function(TraceRNG(seed))
    disc, cert = discontinuous_at_apex(f)
    if disc:
        assert in_witness_family(f, SequenceDescriptor.canonical(cert["spoke"]))[0]
        assert continuity_neighborhood(f) is None
        return
    U = cert["neighborhood"]
    apex = value_at_apex(f)
    for n in range(1, 25):
        for m in range(U.threshold(n), U.threshold(n) + 60):
            assert evaluate(f, FanPoint(n, m)) == apex


@settings(deadline=None)
@given(seeds)
def test_equal_descriptors_agree_termwise(seed):
    rng = TraceRNG(seed)
    T = random_sequence(rng, convergent=True)
    S, _ = modify_prefix(T, terms(T, rng.randint(0, 6)))
    assert sequences_equal(S, T)
    U, _ = modify_prefix(T, terms(T, 2) + [FanPoint(60, 1)])
    assert not sequences_equal(U, T) or term(T, 3) == FanPoint(60, 1)

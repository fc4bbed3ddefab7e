import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from seqwit.corpus import random_set
from seqwit.errors import UnsupportedCombination
from seqwit.models import DefinableSet, FanPoint, RowComponent, SpokeComponent, StridedTail, APEX
from seqwit.oracle import brute_intersection_count, truncate_set, validate_escape
from seqwit.rng import TraceRNG
from seqwit.sets import (
    almost_disjoint,
    cardinality_class,
    difference,
    in_ip,
    intersect,
    intersection_class,
    member,
    spoke_support,
    union,
)


def _tail_set(spoke, start, stride=1, excluded=()):
    return DefinableSet((SpokeComponent.tail(spoke, start, stride, excluded),))


def test_member_spoke_and_apex():
    B2 = DefinableSet.spoke(2)
    assert member(B2, FanPoint(2, 9))
    assert not member(B2, FanPoint(3, 9))
    assert not member(B2, APEX)


def test_member_respects_excluded_depths():
    M = _tail_set(1, 2, 2, (4,))
    assert not member(M, FanPoint(1, 4))
    assert member(M, FanPoint(1, 6))
    assert not member(M, FanPoint(1, 5))


def test_member_row():
    M = DefinableSet.row(3, 2, 1)
    assert member(M, FanPoint(4, 9))
    assert not member(M, FanPoint(2, 5))


def test_cardinality_class():
    assert cardinality_class(DefinableSet.points([FanPoint(1, 1), FanPoint(2, 2)])).count == 2
    assert not cardinality_class(DefinableSet.spoke(1)).is_finite
    assert not cardinality_class(_tail_set(1, 3, 2, (5,))).is_finite
    assert cardinality_class(DefinableSet.empty()).count == 0


def test_distinct_spokes_meet_in_nothing():
    card, cert = intersection_class(DefinableSet.spoke(1), DefinableSet.spoke(2))
    assert card.is_finite and card.count == 0
    assert cert["points"] == []


def test_odd_depths_meet_depths_one_mod_three_mod_six():
    card, cert = intersection_class(_tail_set(1, 1, 2), _tail_set(1, 1, 3))
    assert not card.is_finite
    assert cert.kind == "residue"
    assert (cert["residue"], cert["modulus"]) == (1, 6)
    common = truncate_set(intersect(_tail_set(1, 1, 2), _tail_set(1, 1, 3)), 1, 1000)
    assert common == {(1, m) for m in range(1, 1001) if m % 6 == 1}


def test_even_and_odd_depths_are_disjoint():
    card, _ = intersection_class(_tail_set(1, 2, 2), _tail_set(1, 1, 2))
    assert card.is_finite and card.count == 0


def test_intersection_matches_brute_force_with_rows_and_chunks():
    M = DefinableSet((SpokeComponent(2, frozenset({1, 4}), (StridedTail(10, 3),)),), (RowComponent(1, 1, 2),))
    N = DefinableSet((SpokeComponent.tail(2, 1, 2), SpokeComponent.chunk(5, (7, 8))))
    common = intersect(M, N)
    assert truncate_set(common, 20, 400) == truncate_set(M, 20, 400) & truncate_set(N, 20, 400)
    assert brute_intersection_count(M, N, 20, 400) == len(truncate_set(common, 20, 400))


def test_parallel_rows_meet_from_the_later_start():
    card, cert = intersection_class(DefinableSet.row(1, 1, 0), DefinableSet.row(4, 1, 0))
    assert not card.is_finite
    assert cert["row"] == RowComponent(4, 1, 0)


def test_crossing_rows_meet_in_one_point():
    card, cert = intersection_class(DefinableSet.row(1, 0, 5), DefinableSet.row(1, 1, 0))
    assert card.count == 1
    assert cert["points"] == [FanPoint(5, 5)]


def test_almost_disjoint():
    assert almost_disjoint(DefinableSet.spoke(3), DefinableSet.spoke(5))
    assert not almost_disjoint(DefinableSet.spoke(1), _tail_set(1, 7))
    M = _tail_set(4, 2, 3)
    assert not almost_disjoint(M, M)


def test_in_ip_spoke():
    ok, cert = in_ip(DefinableSet.spoke(1))
    assert ok
    assert cert["spokes"] == [1]


def test_row_escapes_with_certificate():
    row = RowComponent(1, 0, 2)
    M = DefinableSet(row_components=(row,))
    ok, cert = in_ip(M)
    assert not ok
    assert cert.kind == "escape"
    U = cert["neighborhood"]
    assert U.default == 3 and U.slope == 0
    assert validate_escape(M, U, row, 100)


def test_finite_chunk_is_not_in_ip():
    ok, cert = in_ip(DefinableSet((SpokeComponent.chunk(4, (1, 2, 3)),)))
    assert not ok
    assert cert.kind == "finite"


def test_spoke_support():
    M = DefinableSet.spoke(2).union(DefinableSet.points([FanPoint(9, 1)]))
    assert spoke_support(M).spokes == frozenset({2, 9})
    assert spoke_support(DefinableSet.row()).unbounded_rows
    assert spoke_support(DefinableSet.empty()).spokes == frozenset()


def test_union_merges_components_on_one_spoke():
    M = union(_tail_set(1, 1, 2), _tail_set(1, 2, 2))
    assert len(M.spoke_components) == 1
    assert all(member(M, FanPoint(1, m)) for m in range(1, 50))


def test_difference_by_finite_set():
    M = DefinableSet.spoke(1).union(DefinableSet.row(1, 0, 3))
    out = difference(M, DefinableSet.points([FanPoint(1, 2), FanPoint(3, 3)]))
    assert not member(out, FanPoint(1, 2))
    assert not member(out, FanPoint(3, 3))
    assert member(out, FanPoint(1, 3))
    assert member(out, FanPoint(2, 3))
    assert member(out, FanPoint(4, 3))


def test_difference_by_infinite_set_is_rejected():
    with pytest.raises(UnsupportedCombination):
        difference(DefinableSet.spoke(1), DefinableSet.spoke(1))


@settings(deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_almost_disjointness_is_symmetric(seed):
    rng = TraceRNG(seed)
    M, N = random_set(rng), random_set(rng)
    assert almost_disjoint(M, N) == almost_disjoint(N, M)
    assert intersection_class(M, N)[0] == intersection_class(N, M)[0]


def test_finite_changes_keep_ip_membership():
    F = DefinableSet.points([FanPoint(1, 2), FanPoint(5, 5)])
    for M in (DefinableSet.spoke(1), DefinableSet.row(1, 0, 3), DefinableSet.points([FanPoint(2, 2)])):
        decided = in_ip(M)[0]
        assert in_ip(union(M, F))[0] == decided
        assert in_ip(difference(M, F))[0] == decided

import pytest

from seqwit.errors import NotAccumulating, NotInIP, NotStrictlyIncreasing
from seqwit.fan import neighborhood_contains
from seqwit.functions import in_witness_family
from seqwit.models import (
    APEX,
    ConstApex,
    ConstNode,
    DefinableSet,
    FanPoint,
    FunctionDescriptor,
    IncreasingIndexMap,
    NeighborhoodSpec,
    SequenceDescriptor,
    SpokeComponent,
    SpokeRun,
)
from seqwit.oracle import absorbed, canonical_neighborhoods, range_window, truncate_set
from seqwit.sequences import (
    absorption_index,
    build_spoke_subsequence,
    converges_to_apex,
    enumerate_set,
    first_disagreement,
    is_injective,
    modify_prefix,
    range_in_ip,
    range_set,
    sequence_in_set,
    sequences_equal,
    term,
    terms,
)

T1 = SequenceDescriptor.canonical(1)


def test_term_canonical_prefix_and_round_robin():
    assert term(T1, 3) == FanPoint(1, 3)
    assert term(SequenceDescriptor((FanPoint(2, 1),), (SpokeRun(1),)), 1) == FanPoint(2, 1)
    T = SequenceDescriptor((), (SpokeRun(1), SpokeRun(2)))
    assert term(T, 4) == FanPoint(2, 2)
    assert terms(T, 3) == [FanPoint(1, 1), FanPoint(2, 1), FanPoint(1, 2)]


def test_run_skips_depths():
    run = SpokeRun(3, 2, 2, frozenset({4, 8}))
    T = SequenceDescriptor((), (run,))
    assert terms(T, 4) == [FanPoint(3, 2), FanPoint(3, 6), FanPoint(3, 10), FanPoint(3, 12)]
    assert run.index_of(10) == 3
    assert run.index_of(8) is None


def test_converges_to_apex():
    assert converges_to_apex(SequenceDescriptor.canonical(4))[0]
    T = SequenceDescriptor((), (SpokeRun(1), SpokeRun(2, 5, 3)))
    assert converges_to_apex(T)[0]
    for U in canonical_neighborhoods():
        assert absorbed(T, U, absorption_index(T, U), 200)


def test_constant_node_does_not_converge():
    T = SequenceDescriptor((), (ConstNode(1, 1),))
    ok, cert = converges_to_apex(T)
    assert not ok
    U = cert["neighborhood"]
    assert U == NeighborhoodSpec.of(1, {1: 2})
    assert all(not neighborhood_contains(U, term(T, k)) for k in range(1, 100))


def test_absorption_index_is_least():
    T = SequenceDescriptor((FanPoint(5, 1),), (SpokeRun(1), ConstApex()))
    U = NeighborhoodSpec.of(1, {1: 4, 5: 2})
    N = absorption_index(T, U)
    assert absorbed(T, U, N, 200)
    assert not neighborhood_contains(U, term(T, N - 1))


def test_injectivity():
    assert is_injective(SequenceDescriptor.canonical(3))[0]
    ok, cert = is_injective(SequenceDescriptor((FanPoint(1, 1),), (SpokeRun(1),)))
    assert not ok
    assert cert["indices"] == [1, 2]


def test_runs_sharing_a_residue_class_collide():
    T = SequenceDescriptor((), (SpokeRun(1, 1, 2), SpokeRun(1, 1, 3)))
    ok, cert = is_injective(T)
    assert not ok
    a, b = cert["indices"]
    assert term(T, a) == term(T, b)


def test_constant_apex_channel_is_not_injective():
    assert not is_injective(SequenceDescriptor((), (SpokeRun(1), ConstApex())))[0]


def test_modify_prefix_replaces_first_term():
    S, N = modify_prefix(T1, [FanPoint(2, 7)])
    assert N == 2
    assert term(S, 1) == FanPoint(2, 7)
    assert all(term(S, k) == FanPoint(1, k) for k in range(2, 300))
    assert converges_to_apex(S)[0]
    assert in_witness_family(FunctionDescriptor.spoke_indicator(1), S)[0]


def test_modify_prefix_identity_and_nonconvergent_tail():
    T = SequenceDescriptor((FanPoint(4, 4), APEX), (SpokeRun(2),))
    S, _ = modify_prefix(T, T.prefix)
    assert S == T
    C = SequenceDescriptor((), (ConstNode(3, 3),))
    S, _ = modify_prefix(C, [FanPoint(1, 1), FanPoint(1, 2)])
    assert not converges_to_apex(S)[0]


def test_modify_prefix_with_several_channels():
    T = SequenceDescriptor((FanPoint(9, 9),), (SpokeRun(1), SpokeRun(2, 3, 2), ConstApex()))
    p = [FanPoint(5, 5)] * 6
    S, N = modify_prefix(T, p)
    assert terms(S, 6) == p
    assert all(term(S, k) == term(T, k) for k in range(N, N + 200))


def test_enumerate_full_spoke_is_canonical():
    T = enumerate_set(DefinableSet.spoke(2))
    assert T == SequenceDescriptor.canonical(2)


def test_enumerate_tail_with_hole_and_chunk():
    M = DefinableSet((SpokeComponent(1, frozenset({1}), (SpokeComponent.tail(1, 3, 1, (5,)).tails[0],)),))
    T = enumerate_set(M)
    assert T.prefix == (FanPoint(1, 1), FanPoint(1, 3), FanPoint(1, 4))
    assert T.channels == (SpokeRun(1, 6, 1),)


def test_enumeration_range_matches_set_on_window():
    M = DefinableSet(
        (
            SpokeComponent(2, frozenset({1, 40}), (SpokeComponent.tail(2, 3, 4, (7,)).tails[0],)),
            SpokeComponent.tail(5, 2, 3),
            SpokeComponent.chunk(7, (2,)),
        )
    )
    T = enumerate_set(M)
    assert is_injective(T)[0]
    assert converges_to_apex(T)[0]
    window = range_window(T, len(T.prefix) + len(T.channels) * 500, 8, 400)
    assert window == truncate_set(M, 8, 400)


def test_enumerate_rejects_sets_outside_ip():
    with pytest.raises(NotInIP):
        enumerate_set(DefinableSet.row(1, 1, 0))


def test_range_set():
    assert range_set(SequenceDescriptor.canonical(3)).members == DefinableSet.spoke(3)
    T = SequenceDescriptor((FanPoint(2, 1),), (SpokeRun(1, 2, 2),))
    expected = DefinableSet((SpokeComponent.chunk(2, (1,)), SpokeComponent.tail(1, 2, 2)))
    assert range_set(T).members == expected
    R = range_set(SequenceDescriptor((), (ConstApex(),)))
    assert R.contains_apex and R.members == DefinableSet.empty()
    assert range_in_ip(SequenceDescriptor.canonical(3))[0]


def test_first_disagreement():
    assert repr(first_disagreement(T1, T1)) == "Equal"
    S, _ = modify_prefix(T1, terms(T1, 4) + [FanPoint(1, 6)])
    d = first_disagreement(S, T1)
    assert d.kind == "index" and d.index == 5


def test_structurally_different_descriptors_can_be_equal():
    a = SequenceDescriptor((FanPoint(1, 1), FanPoint(1, 2)), (SpokeRun(1, 3),))
    assert sequences_equal(a, T1)
    assert first_disagreement(a, T1).kind == "equal"
    interleaved = SequenceDescriptor((), (SpokeRun(1, 1, 2), SpokeRun(1, 2, 2)))
    assert sequences_equal(interleaved, T1)


def test_first_disagreement_respects_bound():
    late, _ = modify_prefix(T1, terms(T1, 50) + [FanPoint(2, 2)])
    d = first_disagreement(late, T1, bound=20)
    assert d.kind == "agree_up_to" and d.index == 20


def test_spoke_subsequences():
    assert build_spoke_subsequence(IncreasingIndexMap((), 1, 0)) == T1
    assert build_spoke_subsequence(IncreasingIndexMap((), 2, 0)).channels == (SpokeRun(1, 2, 2),)
    a = build_spoke_subsequence(IncreasingIndexMap((1, 2), 1, 5))
    b = build_spoke_subsequence(IncreasingIndexMap((1, 2), 1, 6))
    assert first_disagreement(a, b).index == 3


def test_index_map_must_increase():
    with pytest.raises(NotStrictlyIncreasing):
        IncreasingIndexMap((3, 2), 1, 5)
    with pytest.raises(NotStrictlyIncreasing):
        IncreasingIndexMap((1, 9), 1, 0)


def test_sequence_in_accumulating_set():
    M = DefinableSet((SpokeComponent.chunk(1, (1,)), SpokeComponent.tail(4, 3, 5, (8,))))
    T = sequence_in_set(M)
    assert converges_to_apex(T)[0] and is_injective(T)[0]
    assert all(t.spoke == 4 and M.component(4).contains(t.depth) for t in terms(T, 100))
    with pytest.raises(NotAccumulating):
        sequence_in_set(DefinableSet.row(1, 0, 1))

import pytest

from seqwit.corpus import build_default_corpus, build_ip_corpus, random_probes
from seqwit.errors import (
    ContinuousFunction,
    CorpusNotInIP,
    FamilyNotAD,
    MarkerNotInChain,
    NotConvergent,
    UnsupportedCombination,
)
from seqwit.functions import in_witness_family
from seqwit.models import (
    CanonicalFan,
    ChainDescriptor,
    ConstNode,
    DefinableSet,
    ExplicitFinite,
    FanPoint,
    FunctionCorpus,
    FunctionDescriptor,
    PrefixFamily,
    SequenceDescriptor,
    SpokeComponent,
    SpokeRun,
)
from seqwit.rng import TraceRNG
from seqwit.sequences import first_disagreement, modify_prefix, term
from seqwit.testsets import (
    bad_chain_report,
    chain_intersection_check,
    construct_bn_df_witness,
    construct_bn_witness,
    contains_family,
    families_equal,
    find_fan_witness,
    greedy_ad_extend,
    intersect_families,
    is_test_set_relative,
    mad_verify,
    member_of,
    minimality_refutation,
    prefix_chain_report,
    witness_range,
)

T1 = SequenceDescriptor.canonical(1)


def test_prefix_family_membership():
    assert not member_of(PrefixFamily(T1, 3, True), T1)
    assert member_of(PrefixFamily(T1, 3, False), T1)
    w = construct_bn_witness(T1, 3)
    assert member_of(PrefixFamily(T1, 3, True), w)
    assert not member_of(PrefixFamily(T1, 4, True), w)


def test_bn_witness_changes_term_n_plus_one():
    w = construct_bn_witness(T1, 3)
    assert term(w, 4) == FanPoint(1, 5)
    assert all(term(w, k) == FanPoint(1, k) for k in range(1, 40) if k != 4)
    assert first_disagreement(w, T1).index == 4
    assert term(construct_bn_witness(SequenceDescriptor.canonical(2), 1), 2) == FanPoint(2, 3)


def test_bn_witness_needs_convergent_reference():
    with pytest.raises(NotConvergent):
        construct_bn_witness(SequenceDescriptor((), (ConstNode(1, 1),)), 2)


def test_bn_df_witness():
    f = FunctionDescriptor.spoke_indicator(2)
    w = construct_bn_df_witness(T1, 3, f)
    assert w.prefix == (FanPoint(1, 1), FanPoint(1, 2), FanPoint(1, 3), FanPoint(1, 5))
    assert w.channels == (SpokeRun(2, 5, 1),)
    assert member_of(PrefixFamily(T1, 3, True), w)
    assert in_witness_family(f, w)[0]

    w = construct_bn_df_witness(T1, 1, FunctionDescriptor.apex_indicator())
    assert w.channels[0].spoke == 1
    assert in_witness_family(FunctionDescriptor.apex_indicator(), w)[0]
    with pytest.raises(ContinuousFunction):
        construct_bn_df_witness(T1, 1, FunctionDescriptor.constant(0))


def test_find_fan_witness():
    assert find_fan_witness(FunctionDescriptor.spoke_indicator(7))[0] == 7
    assert find_fan_witness(FunctionDescriptor.apex_indicator())[0] == 1
    with pytest.raises(ContinuousFunction):
        find_fan_witness(FunctionDescriptor.constant(2))


def test_witness_range_lies_in_one_spoke():
    f = FunctionDescriptor.spoke_indicator(3)
    S, _ = modify_prefix(SequenceDescriptor.canonical(3), [FanPoint(1, 1), FanPoint(2, 2)])
    R = witness_range(f, S)
    assert R is not None and R.spokes == (3,)
    assert witness_range(f, T1) is None


def test_canonical_fan_is_a_test_set_for_default_corpus():
    corpus = build_default_corpus(8, seed=5)
    verdict = is_test_set_relative(CanonicalFan(), corpus)
    assert verdict.passed
    assert len(verdict.witnesses) >= 9
    for i, w in verdict.witnesses:
        assert in_witness_family(corpus.functions[i], w)[0]


def test_removing_a_spoke_fails_on_its_indicator():
    corpus = FunctionCorpus((FunctionDescriptor.apex_indicator(), FunctionDescriptor.spoke_indicator(3)))
    verdict = is_test_set_relative(CanonicalFan(frozenset({3})), corpus)
    assert not verdict.passed
    assert verdict.failed_function == 1
    assert verdict.certificate.kind == "symbolic"


def test_vacuous_pass_without_discontinuous_functions():
    corpus = FunctionCorpus((FunctionDescriptor.constant(0), FunctionDescriptor.indicator(DefinableSet.row())))
    verdict = is_test_set_relative(ExplicitFinite(()), corpus)
    assert verdict.passed and verdict.vacuous
    assert verdict.continuous_skipped == 2


def test_explicit_family():
    corpus = FunctionCorpus((FunctionDescriptor.spoke_indicator(2),))
    assert is_test_set_relative(ExplicitFinite((SequenceDescriptor.canonical(2),)), corpus).passed
    verdict = is_test_set_relative(ExplicitFinite((T1,)), corpus)
    assert not verdict.passed and verdict.certificate.kind == "exhaustive"


def test_prefix_family_is_a_test_set():
    corpus = build_default_corpus(6, seed=3)
    verdict = is_test_set_relative(PrefixFamily(T1, 4, True), corpus)
    assert verdict.passed


def test_minimality_refutation():
    report = minimality_refutation(3, range(1, 11))
    assert report.passed
    assert len(report.checks) == 11
    assert minimality_refutation(1, [1]).passed
    assert len(minimality_refutation(5, [5]).checks) == 2


def test_prefix_chain_and_bad_chain_reports():
    rng = TraceRNG(11)
    corpus = build_default_corpus(6, rng=rng)
    probes = random_probes(rng, T1, 30, max_shared=8)
    report = prefix_chain_report(T1, 5, corpus, probes)
    assert report.passed, report.failures
    bad = bad_chain_report(T1, 5, corpus, probes)
    assert bad.passed, bad.failures
    assert any(c.check_id == "bad-chain/a-not-in-B1" for c in bad.checks)
    assert prefix_chain_report(T1, 1, corpus, [T1]).passed


def test_family_algebra():
    extra = SequenceDescriptor((FanPoint(4, 4),), (SpokeRun(2),))
    big = CanonicalFan(frozenset(), (extra,))
    marker = CanonicalFan()
    assert contains_family(big, marker)
    assert not contains_family(marker, big)
    assert families_equal(intersect_families(big, marker), marker)
    folded = CanonicalFan(frozenset({2}), (SequenceDescriptor((FanPoint(2, 1),), (SpokeRun(2, 2),)),))
    assert families_equal(folded, marker)
    with pytest.raises(UnsupportedCombination):
        contains_family(PrefixFamily(T1, 1), marker)


def test_chain_intersection_check():
    extra = SequenceDescriptor((FanPoint(4, 4),), (SpokeRun(2),))
    marker = CanonicalFan()
    corpus = build_default_corpus(4, seed=1)
    chain = ChainDescriptor((CanonicalFan(frozenset(), (extra,)), marker))
    assert chain_intersection_check(chain, marker, corpus).passed
    assert chain_intersection_check(ChainDescriptor((marker,)), marker, corpus).passed
    with pytest.raises(MarkerNotInChain):
        chain_intersection_check(ChainDescriptor((CanonicalFan(frozenset(), (extra,)),)), marker, corpus)


def test_mad_verify():
    assert mad_verify(16, build_ip_corpus(TraceRNG(2), 20)).passed
    report = mad_verify(8, [DefinableSet.spoke(5)])
    assert "spoke 5" in [c.detail for c in report.checks if c.check_id == "mad/maximal/000"]
    with pytest.raises(CorpusNotInIP):
        mad_verify(4, [DefinableSet.row()])


def test_greedy_ad_extend():
    B1, B2 = DefinableSet.spoke(1), DefinableSet.spoke(2)
    tail = DefinableSet((SpokeComponent.tail(1, 5),))
    assert greedy_ad_extend([B1], [B2, tail]) == [B1, B2]
    assert greedy_ad_extend([], []) == []
    with pytest.raises(FamilyNotAD):
        greedy_ad_extend([B1, B1], [])

"""Test sets on the fan: membership, relative test-set checks and the chain constructions.

Version History:
- v0.2: family containment and intersection, witness ranges
- v0.1: canonical fan, prefix families, bad chain, MAD verification

A test set must meet the witness family D(f) of every function discontinuous at P.
Every verdict here is relative to a finite ``FunctionCorpus``; reports say so.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    ContinuousFunction,
    CorpusNotInIP,
    FamilyNotAD,
    MarkerNotInChain,
    NotConvergent,
    UnsupportedCombination,
)
from .functions import (
    candidate_spokes,
    discontinuous_at_apex,
    generic_spoke,
    in_witness_family,
    support_spokes,
)
from .models import (
    CanonicalFan,
    Certificate,
    ChainDescriptor,
    DefinableSet,
    ExplicitFinite,
    FanPoint,
    FunctionCorpus,
    FunctionDescriptor,
    PrefixFamily,
    SequenceDescriptor,
    SpokeComponent,
    SpokeRun,
    StridedTail,
    TestSetDescriptor,
)
from .report import FINITE_STAGE_NOTE, RELATIVIZATION_NOTE, CheckResult, SuiteReport, check
from .sequences import (
    converges_to_apex,
    first_disagreement,
    modify_prefix,
    sequences_equal,
    term,
    terms,
)
from .sets import in_ip, intersection_class, spoke_support

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TestSetVerdict:
    """Outcome of a relative test-set check.

    ``witnesses`` pairs each discontinuous corpus function (by index) with a
    validated member of the family in its witness family. On failure
    ``failed_function`` is the index of the first function left without one.
    """

    passed: bool
    witnesses: Tuple[Tuple[int, SequenceDescriptor], ...] = ()
    failed_function: Optional[int] = None
    certificate: Optional[Certificate] = None
    continuous_skipped: int = 0
    note: str = RELATIVIZATION_NOTE

    @property
    def vacuous(self) -> bool:
        return self.passed and not self.witnesses

    def to_dict(self) -> dict:
        from .report import jsonable

        return {
            "passed": self.passed,
            "vacuous": self.vacuous,
            "witnesses": [{"function": i, "sequence": s.to_dict()} for i, s in self.witnesses],
            "failedFunction": self.failed_function,
            "certificate": jsonable(self.certificate),
            "continuousSkipped": self.continuous_skipped,
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# membership and family algebra


def _leading_spoke(T: SequenceDescriptor) -> Optional[int]:
    first = term(T, 1)
    return None if first.is_apex else first.spoke


def member_of(A: TestSetDescriptor, T: SequenceDescriptor) -> bool:
    if isinstance(A, ExplicitFinite):
        return any(sequences_equal(T, m) for m in A.members)
    if isinstance(A, CanonicalFan):
        n = _leading_spoke(T)
        if n is not None and n not in A.excluded and sequences_equal(T, SequenceDescriptor.canonical(n)):
            return True
        return any(sequences_equal(T, e) for e in A.extra)
    if not converges_to_apex(T)[0]:
        return False
    if any(term(T, k) != term(A.a, k) for k in range(1, A.n + 1)):
        return False
    return not (A.remove_a and sequences_equal(T, A.a))


def normalize_family(A: TestSetDescriptor) -> TestSetDescriptor:
    """Fold extras of a canonical fan that equal some T_j back into the index set."""
    if not isinstance(A, CanonicalFan):
        return A
    excluded = set(A.excluded)
    extra: List[SequenceDescriptor] = []
    for e in A.extra:
        n = _leading_spoke(e)
        if n is not None and sequences_equal(e, SequenceDescriptor.canonical(n)):
            excluded.discard(n)
        elif not any(sequences_equal(e, kept) for kept in extra):
            extra.append(e)
    return CanonicalFan(frozenset(excluded), tuple(extra))


def _require_intensional(*families: TestSetDescriptor) -> None:
    for A in families:
        if isinstance(A, PrefixFamily):
            raise UnsupportedCombination("family algebra covers explicit lists and canonical fans only")


def contains_family(A: TestSetDescriptor, B: TestSetDescriptor) -> bool:
    """A ⊇ B."""
    _require_intensional(A, B)
    A, B = normalize_family(A), normalize_family(B)
    if isinstance(B, ExplicitFinite):
        return all(member_of(A, m) for m in B.members)
    if not all(member_of(A, e) for e in B.extra):
        return False
    if isinstance(A, ExplicitFinite):
        return False
    return A.excluded <= B.excluded


def families_equal(A: TestSetDescriptor, B: TestSetDescriptor) -> bool:
    return contains_family(A, B) and contains_family(B, A)


def intersect_families(A: TestSetDescriptor, B: TestSetDescriptor) -> TestSetDescriptor:
    _require_intensional(A, B)
    A, B = normalize_family(A), normalize_family(B)
    if isinstance(A, ExplicitFinite):
        return ExplicitFinite(tuple(m for m in A.members if member_of(B, m)))
    if isinstance(B, ExplicitFinite):
        return ExplicitFinite(tuple(m for m in B.members if member_of(A, m)))
    extra = [e for e in A.extra if member_of(B, e)] + [e for e in B.extra if member_of(A, e)]
    return normalize_family(CanonicalFan(A.excluded | B.excluded, tuple(extra)))


# ---------------------------------------------------------------------------
# witnesses


def _witness_spoke_set(f: FunctionDescriptor) -> Tuple[Tuple[int, ...], bool]:
    """Support spokes whose canonical sequence witnesses f, and whether the generic spokes do."""
    support = support_spokes(f)
    hits = tuple(n for n in support if in_witness_family(f, SequenceDescriptor.canonical(n))[0])
    generic = in_witness_family(f, SequenceDescriptor.canonical(generic_spoke(f)))[0]
    return hits, generic


def find_fan_witness(f: FunctionDescriptor) -> Tuple[int, Certificate]:
    """Least spoke n with T_n ∈ D(f)."""
    disc, cert = discontinuous_at_apex(f)
    if not disc:
        raise ContinuousFunction(f"{f.name or 'function'} is continuous at the apex")
    n = cert["spoke"]
    ok, wcert = in_witness_family(f, SequenceDescriptor.canonical(n))
    if not ok:
        raise AssertionError(f"spoke {n} from the discontinuity certificate is not a witness")
    return n, Certificate("fan_witness", {"spoke": n, **{k: wcert[k] for k in ("epsilon", "residue", "modulus", "from")}})


def witness_range(f: FunctionDescriptor, S: SequenceDescriptor) -> Optional[DefinableSet]:
    """Points of S where f stays ε away from f(P), as a set in I_P; None when S is no witness."""
    ok, cert = in_witness_family(f, S)
    if not ok:
        return None
    ch = S.channels[cert["channel"]]
    j0 = (cert["from"] - len(S.prefix) - cert["channel"] - 1) // len(S.channels) + 1
    period = cert["modulus"] // len(S.channels)
    return DefinableSet((SpokeComponent(ch.spoke, tails=(StridedTail(ch.depth(j0), ch.stride * period),)),))


def _successor_point(p: FanPoint) -> FanPoint:
    if p.is_apex:
        return FanPoint(1, 1)
    return FanPoint(p.spoke, p.depth + 1)


def _require_convergent(a: SequenceDescriptor) -> None:
    if not converges_to_apex(a)[0]:
        raise NotConvergent("the reference sequence must converge to the apex")


def construct_bn_witness(a: SequenceDescriptor, n: int) -> SequenceDescriptor:
    """A member of B_n(a): a with its (n+1)-th term replaced."""
    _require_convergent(a)
    x = _successor_point(term(a, n + 1))
    T, _ = modify_prefix(a, terms(a, n) + [x])
    return T


def _bn_df_candidate(a: SequenceDescriptor, n: int, spoke: int) -> SequenceDescriptor:
    prefix = tuple(terms(a, n)) + (_successor_point(term(a, n + 1)),)
    return SequenceDescriptor(prefix, (SpokeRun(spoke, n + 2, 1),))


def construct_bn_df_witness(a: SequenceDescriptor, n: int, f: FunctionDescriptor) -> SequenceDescriptor:
    """A member of B_n(a) ∩ D(f): the first n terms of a, a changed term, then a witnessing spoke."""
    _require_convergent(a)
    m, _ = find_fan_witness(f)
    return _bn_df_candidate(a, n, m)


# ---------------------------------------------------------------------------
# relative test-set checks


def _canonical_witness(A: CanonicalFan, f: FunctionDescriptor) -> Optional[SequenceDescriptor]:
    hits, generic = _witness_spoke_set(f)
    choices = [n for n in hits if n not in A.excluded]
    if generic:
        support = set(support_spokes(f))
        n = 1
        while n in support or n in A.excluded:
            n += 1
        choices.append(n)
    if choices:
        return SequenceDescriptor.canonical(min(choices))
    for e in A.extra:
        if converges_to_apex(e)[0] and in_witness_family(f, e)[0]:
            return e
    return None


def _no_witness_certificate(A: TestSetDescriptor, f: FunctionDescriptor, index: int) -> Certificate:
    if isinstance(A, CanonicalFan):
        hits, generic = _witness_spoke_set(f)
        agreement = {}
        for n in candidate_spokes(f):
            if n in A.excluded:
                continue
            _, cert = in_witness_family(f, SequenceDescriptor.canonical(n))
            agreement[n] = cert.data.get("from")
        return Certificate(
            "symbolic",
            {
                "function": index,
                "witness_spokes": list(hits),
                "generic_witness": generic,
                "excluded": sorted(A.excluded),
                "eventual_agreement_from": agreement,
            },
        )
    members = A.members if isinstance(A, ExplicitFinite) else ()
    return Certificate("exhaustive", {"function": index, "members_checked": len(members)})


def _witness_in(A: TestSetDescriptor, f: FunctionDescriptor) -> Optional[SequenceDescriptor]:
    if isinstance(A, ExplicitFinite):
        for m in A.members:
            if converges_to_apex(m)[0] and in_witness_family(f, m)[0]:
                return m
        return None
    if isinstance(A, CanonicalFan):
        return _canonical_witness(A, f)
    m, _ = find_fan_witness(f)
    return _bn_df_candidate(A.a, A.n, m)


def is_test_set_relative(A: TestSetDescriptor, corpus: FunctionCorpus) -> TestSetVerdict:
    witnesses = []
    skipped = 0
    for i, f in enumerate(corpus.functions):
        if not discontinuous_at_apex(f)[0]:
            skipped += 1
            continue
        w = _witness_in(A, f)
        if w is not None and member_of(A, w) and in_witness_family(f, w)[0]:
            witnesses.append((i, w))
            continue
        logger.debug("no witness for corpus function %d (%s)", i, f.name)
        return TestSetVerdict(False, tuple(witnesses), i, _no_witness_certificate(A, f, i), skipped)
    return TestSetVerdict(True, tuple(witnesses), None, None, skipped)


# ---------------------------------------------------------------------------
# minimality, chains and MAD families


def minimality_refutation(n: int, sample_spokes: Iterable[int]) -> SuiteReport:
    """Refute that the canonical fan without T_n is a test set, using h = 1_{B_n}."""
    h = FunctionDescriptor.spoke_indicator(n)
    Bn = DefinableSet.spoke(n)
    checks: List[CheckResult] = []
    ok, cert = in_witness_family(h, SequenceDescriptor.canonical(n))
    checks.append(
        check(f"minimality/n={n:03d}/witness", ok and cert.data.get("epsilon") == 1, "h(T_n) is constantly 1", certificate=cert)
    )
    for j in sorted(set(sample_spokes) - {n}):
        hit, _ = in_witness_family(h, SequenceDescriptor.canonical(j))
        card, icert = intersection_class(DefinableSet.spoke(j), Bn)
        checks.append(
            check(
                f"minimality/n={n:03d}/j={j:03d}",
                not hit and card.is_finite and card.count == 0,
                "h(T_j) is eventually 0",
                f"B_{j} ∩ B_{n} = {card!r}",
                icert,
            )
        )
    verdict = is_test_set_relative(CanonicalFan(frozenset({n})), FunctionCorpus((h,)))
    checks.append(
        check(
            f"minimality/n={n:03d}/removal",
            not verdict.passed and verdict.failed_function == 0,
            "canonical fan without T_n misses D(h)",
            certificate=verdict.certificate,
        )
    )
    return SuiteReport.build(
        "minimality",
        checks,
        config={"n": n},
        notes=(RELATIVIZATION_NOTE, "for every j != n, B_j and B_n are disjoint, so h(T_j) = 0 for all terms"),
    )


def prefix_chain_report(
    a: SequenceDescriptor,
    N: int,
    corpus: FunctionCorpus,
    probes: Sequence[SequenceDescriptor],
    suite: str = "prefix-chain",
) -> SuiteReport:
    """B_{n+1}(a) ⊆ B_n(a), B_n(a) nonempty and a relative test set, for n ≤ N."""
    _require_convergent(a)
    checks: List[CheckResult] = []
    for n in range(1, N + 1):
        outer, inner = PrefixFamily(a, n, True), PrefixFamily(a, n + 1, True)
        broken = [i for i, T in enumerate(probes) if member_of(inner, T) and not member_of(outer, T)]
        inside = sum(1 for T in probes if member_of(inner, T))
        checks.append(
            check(
                f"{suite}/n={n:03d}/nested",
                not broken,
                "B_{n+1} ⊆ B_n",
                f"{inside} of {len(probes)} probes in B_{n + 1}" if not broken else f"probes {broken[:5]} escape",
            )
        )
        w = construct_bn_witness(a, n)
        checks.append(
            check(
                f"{suite}/n={n:03d}/nonempty",
                member_of(outer, w) and converges_to_apex(w)[0],
                "B_n is nonempty",
                certificate=w,
            )
        )
        verdict = is_test_set_relative(outer, corpus)
        checks.append(
            check(
                f"{suite}/n={n:03d}/test-set",
                verdict.passed,
                "B_n is a test set",
                f"{len(verdict.witnesses)} witnesses, {verdict.continuous_skipped} continuous skipped",
                verdict.certificate,
            )
        )
    return SuiteReport.build(suite, checks, config={"N": N, "probes": len(probes)}, notes=(RELATIVIZATION_NOTE,))


def bad_chain_report(
    a: SequenceDescriptor,
    N: int,
    corpus: FunctionCorpus,
    probes: Sequence[SequenceDescriptor],
) -> SuiteReport:
    """The descending chain B_n(a) of test sets with empty intersection, at finite stage."""
    report = prefix_chain_report(a, N, corpus, probes, suite="bad-chain")
    checks = [check("bad-chain/a-not-in-B1", not member_of(PrefixFamily(a, 1, True), a), "a ∉ B_1")]
    unresolved = []
    for i, T in enumerate(probes):
        d = first_disagreement(T, a)
        if d.kind == "equal":
            ok = not member_of(PrefixFamily(a, 1, True), T)
        elif d.kind == "index":
            ok = not member_of(PrefixFamily(a, d.index, True), T)
        else:
            ok = False
        if not ok:
            unresolved.append(i)
    checks.append(
        check(
            "bad-chain/empty-intersection",
            not unresolved,
            "⋂ B_n is empty",
            f"{len(probes)} probes each leave some B_k" if not unresolved else f"probes {unresolved[:5]} unresolved",
        )
    )
    extra = SuiteReport.build("bad-chain", checks, notes=(FINITE_STAGE_NOTE,))
    return report.merged(extra)


def chain_intersection_check(
    chain: ChainDescriptor,
    minimal_marker: TestSetDescriptor,
    corpus: FunctionCorpus,
) -> SuiteReport:
    """A finite chain through the minimal marker intersects to the marker."""
    _require_intensional(minimal_marker, *chain.entries)
    if not any(families_equal(e, minimal_marker) for e in chain.entries):
        raise MarkerNotInChain("the marker is not an entry of the chain")
    checks: List[CheckResult] = []
    for i, (A, B) in enumerate(zip(chain.entries, chain.entries[1:])):
        checks.append(check(f"good-chain/descending/{i:03d}", contains_family(A, B), "chain is descending"))
    for i, A in enumerate(chain.entries):
        checks.append(check(f"good-chain/contains-marker/{i:03d}", contains_family(A, minimal_marker), "A ⊇ A_min"))
    meet = chain.entries[0]
    for A in chain.entries[1:]:
        meet = intersect_families(meet, A)
    checks.append(check("good-chain/intersection", families_equal(meet, minimal_marker), "⋂C = A_min"))
    verdict = is_test_set_relative(minimal_marker, corpus)
    checks.append(
        check(
            "good-chain/marker-test-set",
            verdict.passed,
            "A_min is a test set",
            f"{len(verdict.witnesses)} witnesses",
            verdict.certificate,
        )
    )
    return SuiteReport.build(
        "good-chain",
        checks,
        config={"entries": len(chain.entries)},
        notes=(RELATIVIZATION_NOTE, FINITE_STAGE_NOTE),
    )


def mad_verify(spoke_bound: int, ip_corpus: Sequence[DefinableSet]) -> SuiteReport:
    """Spokes are pairwise disjoint and every corpus set meets one infinitely."""
    for idx, M in enumerate(ip_corpus):
        if not in_ip(M)[0]:
            raise CorpusNotInIP(f"corpus member {idx} is not in I_P")
    checks: List[CheckResult] = []
    for i in range(1, spoke_bound + 1):
        disjoint = []
        for j in range(i + 1, spoke_bound + 1):
            card, _ = intersection_class(DefinableSet.spoke(i), DefinableSet.spoke(j))
            disjoint.append(card.is_finite and card.count == 0)
        checks.append(check(f"mad/pairwise/{i:03d}", all(disjoint), "spokes are almost disjoint", f"{len(disjoint)} pairs"))
    for idx, M in enumerate(ip_corpus):
        hit = None
        cert = None
        for n in sorted(spoke_support(M).spokes):
            card, cert = intersection_class(M, DefinableSet.spoke(n))
            if not card.is_finite:
                hit = n
                break
        checks.append(
            check(
                f"mad/maximal/{idx:03d}",
                hit is not None,
                "meets some spoke infinitely",
                f"spoke {hit}" if hit is not None else "no spoke",
                cert,
            )
        )
    return SuiteReport.build(
        "mad",
        checks,
        config={"spoke_bound": spoke_bound, "corpus": len(ip_corpus)},
        notes=(FINITE_STAGE_NOTE,),
    )


def _pairwise_ad(family: Sequence[DefinableSet]) -> bool:
    for i, M in enumerate(family):
        for N in family[i + 1:]:
            if not intersection_class(M, N)[0].is_finite:
                return False
    return True


def greedy_ad_extend(family: Sequence[DefinableSet], pool: Sequence[DefinableSet]) -> List[DefinableSet]:
    if not _pairwise_ad(family):
        raise FamilyNotAD("the starting family is not pairwise almost disjoint")
    out = list(family)
    for candidate in pool:
        if all(intersection_class(candidate, M)[0].is_finite for M in out):
            out.append(candidate)
    return out

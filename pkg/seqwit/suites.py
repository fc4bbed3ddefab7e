"""Verification suites and their configuration.

Each suite exercises one constructive property of test sets on the fan against
seeded corpora and truncation oracles. ``run_suite`` resolves a ``SuiteConfig``
(per-suite defaults, seed precedence), runs the suite sequentially and returns the
exit status together with the report.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import oracle
from .corpus import (
    build_default_corpus,
    build_ip_corpus,
    build_set_corpus,
    distinct_index_map_pairs,
    random_chain,
    random_prefix,
    random_probes,
    random_sequence,
)
from .errors import InvalidConfig, UnknownSuite
from .fan import accumulates_at_apex, apex_is_nonisolated, kernel_certificate, neighborhood_contains
from .functions import discontinuous_at_apex, in_witness_family
from .models import (
    CanonicalFan,
    ConstNode,
    DefinableSet,
    FanPoint,
    FunctionCorpus,
    FunctionDescriptor,
    SequenceDescriptor,
    SpokeRun,
)
from .realline import RealSeqGen, convergence_sample, deviations, sample_witness_check, strictly_decreasing
from .report import FINITE_STAGE_NOTE, RELATIVIZATION_NOTE, CheckResult, SuiteReport, check
from .rng import TraceRNG, resolve_seed
from .sequences import (
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
    term,
    terms,
)
from .sets import cardinality_class, difference, in_ip, intersection_class, member, spoke_support, union
from .testsets import (
    bad_chain_report,
    chain_intersection_check,
    find_fan_witness,
    is_test_set_relative,
    mad_verify,
    minimality_refutation,
    prefix_chain_report,
    witness_range,
)

logger = logging.getLogger(__name__)

OutputFormat = str

SUITE_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "kernel": {"max_spoke": 64, "max_depth": 4096, "probes": 0},
    "finite-modification": {"max_spoke": 16, "max_depth": 2048, "probes": 1000},
    "prefix-chain": {"max_spoke": 16, "max_depth": 20, "probes": 200},
    "bad-chain": {"max_spoke": 16, "max_depth": 20, "probes": 100},
    "ip-characterization": {"max_spoke": 32, "max_depth": 2048, "probes": 200},
    "mad": {"max_spoke": 16, "max_depth": 2048, "probes": 50},
    "amin-testset": {"max_spoke": 16, "max_depth": 2048, "probes": 0},
    "minimality": {"max_spoke": 16, "max_depth": 2048, "probes": 0},
    "good-chain": {"max_spoke": 16, "max_depth": 2048, "probes": 50},
    "cardinality-evidence": {"max_spoke": 1, "max_depth": 10_000, "probes": 1000},
    "realline-example": {"max_spoke": 1, "max_depth": 10_000, "probes": 0},
    "framework": {"max_spoke": 16, "max_depth": 256, "probes": 50},
}

DEFAULT_TOLERANCE = 1e-7
ORACLE_SAMPLE = 100


@dataclass(frozen=True)
class SuiteConfig:
    """Suite selection and bounds.

    ``None`` bounds mean "suite default". For the chain suites ``max_depth`` is the
    chain length N; for ``cardinality-evidence`` it is the disagreement bound; for
    ``realline-example`` ``realline_depth`` (default ``max_depth``) is the sample depth.
    """

    suite: str
    max_spoke: Optional[int] = None
    max_depth: Optional[int] = None
    probes: Optional[int] = None
    seed: Optional[int] = None
    output_format: OutputFormat = "json"
    out: Optional[str] = None
    tolerance: Optional[float] = None
    realline_depth: Optional[int] = None

    def resolved(self) -> "SuiteConfig":
        if self.suite not in SUITES:
            raise UnknownSuite(f"unknown suite {self.suite!r}; choose from {', '.join(sorted(SUITES))}")
        defaults = SUITE_DEFAULTS[self.suite]
        cfg = dataclasses.replace(
            self,
            max_spoke=self.max_spoke if self.max_spoke is not None else defaults["max_spoke"],
            max_depth=self.max_depth if self.max_depth is not None else defaults["max_depth"],
            probes=self.probes if self.probes is not None else defaults["probes"],
            seed=resolve_seed(self.seed),
            tolerance=self.tolerance if self.tolerance is not None else DEFAULT_TOLERANCE,
        )
        if cfg.realline_depth is None:
            cfg = dataclasses.replace(cfg, realline_depth=cfg.max_depth)
        for name in ("max_spoke", "max_depth", "realline_depth"):
            if getattr(cfg, name) < 1:
                raise InvalidConfig(f"{name} must be at least 1, got {getattr(cfg, name)}")
        if cfg.probes < 0:
            raise InvalidConfig(f"probes must be non-negative, got {cfg.probes}")
        if cfg.tolerance <= 0:
            raise InvalidConfig(f"tolerance must be positive, got {cfg.tolerance}")
        if cfg.output_format not in ("json", "markdown"):
            raise InvalidConfig(f"output format must be json or markdown, got {cfg.output_format!r}")
        return cfg

    def echo(self) -> Dict[str, Any]:
        """Config as recorded in reports; the output path is not part of it."""
        return {
            "suite": self.suite,
            "max_spoke": self.max_spoke,
            "max_depth": self.max_depth,
            "probes": self.probes,
            "seed": self.seed,
            "format": self.output_format,
            "tolerance": self.tolerance,
            "realline_depth": self.realline_depth,
        }


def _tally(check_id: str, prop: str, failures: Sequence[Any], total: int, certificate: Any = None) -> CheckResult:
    if failures:
        detail = f"{len(failures)} of {total} failed; first: {list(failures[:5])}"
    else:
        detail = f"{total} cases"
    return check(check_id, not failures, prop, detail, certificate)


# ---------------------------------------------------------------------------
# suites


def _kernel(cfg: SuiteConfig) -> SuiteReport:
    return kernel_certificate(cfg.max_spoke, cfg.max_depth)


def _finite_modification(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    corpus = build_default_corpus(cfg.max_spoke, rng=rng)
    neighborhoods = oracle.canonical_neighborhoods()
    bad: Dict[str, List[int]] = {k: [] for k in ("convergence", "witness", "prefix", "agreement", "oracle")}
    for t in range(cfg.probes):
        T = random_sequence(rng)
        p = random_prefix(rng)
        f = rng.choice(corpus.functions, "triple:function")
        S, N = modify_prefix(T, p)
        conv_T, _ = converges_to_apex(T)
        conv_S, cert_S = converges_to_apex(S)
        if conv_T != conv_S:
            bad["convergence"].append(t)
        if terms(S, len(p)) != p:
            bad["prefix"].append(t)
        if not oracle.terms_agree(T, S, N, 50):
            bad["agreement"].append(t)
        if conv_T and conv_S and in_witness_family(f, T)[0] != in_witness_family(f, S)[0]:
            bad["witness"].append(t)
        if t >= ORACLE_SAMPLE:
            continue
        if conv_S:
            w_S, wcert = in_witness_family(f, S)
            ok = all(
                oracle.absorbed(S, U, absorption_index(S, U)) for U in neighborhoods[t % 10 :: 10]
            )
            if w_S:
                ok = ok and oracle.witness_class_holds(f, S, wcert)
            else:
                ok = ok and oracle.eventually_apex_valued(f, S, wcert["from"])
        else:
            U = cert_S["neighborhood"]
            ok = all(
                not neighborhood_contains(U, term(S, cert_S["from"] + i * cert_S["modulus"])) for i in range(100)
            )
        if not ok:
            bad["oracle"].append(t)
    n = cfg.probes
    checks = [
        _tally("finite-modification/convergence", "convergence is invariant", bad["convergence"], n),
        _tally("finite-modification/witness", "witness membership is invariant", bad["witness"], n),
        _tally("finite-modification/prefix", "new prefix is applied", bad["prefix"], n),
        _tally("finite-modification/agreement", "tails agree from N on", bad["agreement"], n),
        _tally("finite-modification/oracle", "decisions match the truncation oracle", bad["oracle"], min(n, ORACLE_SAMPLE)),
    ]
    return SuiteReport.build("finite-modification", checks, notes=(RELATIVIZATION_NOTE,))


def _chain_inputs(cfg: SuiteConfig) -> Tuple[SequenceDescriptor, FunctionCorpus, List[SequenceDescriptor]]:
    rng = TraceRNG(cfg.seed)
    corpus = build_default_corpus(cfg.max_spoke, rng=rng)
    a = SequenceDescriptor.canonical(1)
    return a, corpus, random_probes(rng, a, cfg.probes, max_shared=cfg.max_depth + 5)


def _prefix_chain(cfg: SuiteConfig) -> SuiteReport:
    a, corpus, probes = _chain_inputs(cfg)
    return prefix_chain_report(a, cfg.max_depth, corpus, probes)


def _bad_chain(cfg: SuiteConfig) -> SuiteReport:
    a, corpus, probes = _chain_inputs(cfg)
    return bad_chain_report(a, cfg.max_depth, corpus, probes)


def _intersection_matches_oracle(M: DefinableSet, N: DefinableSet, max_spoke: int, max_depth: int) -> bool:
    card, cert = intersection_class(M, N)
    count = oracle.brute_intersection_count(M, N, max_spoke, max_depth)
    if card.is_finite:
        inside = [p for p in cert["points"] if p.spoke <= max_spoke and p.depth <= max_depth]
        return count == len(inside)
    if cert.kind == "residue":
        if cert["spoke"] > max_spoke:
            return True
        return count >= max_depth // cert["modulus"] - cert["slack"]
    row = cert["row"]
    in_window = sum(1 for n in range(row.start_spoke, max_spoke + 1) if row.depth_at(n) <= max_depth)
    return count >= in_window


def _ip_characterization(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    rows = min(20, cfg.probes)
    finite = min(20, cfg.probes - rows)
    sets = build_set_corpus(rng, cfg.probes, rows, finite)
    disagree, escape, support, rows_accumulate, intersections, changes = [], [], [], [], [], []
    for i, M in enumerate(sets):
        decided, cert = in_ip(M)
        if decided != oracle.oracle_in_ip(M, cfg.max_spoke, cfg.max_depth):
            disagree.append(i)
        if cert.kind == "escape" and not oracle.validate_escape(M, cert["neighborhood"], cert["row"], 100):
            escape.append(i)
        if decided:
            s = spoke_support(M)
            if s.unbounded_rows or not s.spokes or cardinality_class(M).is_finite:
                support.append(i)
        if M.row_components and accumulates_at_apex(DefinableSet((), M.row_components))[0]:
            rows_accumulate.append(i)
        N = sets[(i + 1) % len(sets)]
        if not _intersection_matches_oracle(M, N, cfg.max_spoke, cfg.max_depth):
            intersections.append(i)
        window = sorted(oracle.truncate_set(M, cfg.max_spoke, 40))[:3]
        F = DefinableSet.points([FanPoint(n, m) for n, m in window] + [FanPoint(i % 7 + 1, i % 11 + 1)])
        if in_ip(union(M, F))[0] != decided or in_ip(difference(M, F))[0] != decided:
            changes.append(i)
    n = len(sets)
    row_count = sum(1 for M in sets if M.row_components)
    finite_count = sum(1 for M in sets if cardinality_class(M).is_finite)
    checks = [
        _tally("ip/agreement", "I_P decision matches the oracle", disagree, n),
        _tally("ip/escape", "escaping rows validated on 100 points", escape, n),
        _tally("ip/support", "I_P sets live on finitely many spokes", support, n),
        _tally("ip/rows", "rows do not accumulate at the apex", rows_accumulate, n),
        _tally("ip/intersection", "intersection class matches brute force", intersections, n),
        _tally("ip/finite-change", "I_P is invariant under finite changes", changes, n),
        CheckResult("ip/composition", "info", "corpus composition", f"{row_count} row sets, {finite_count} finite sets"),
    ]
    return SuiteReport.build("ip-characterization", checks)


def _mad(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    return mad_verify(cfg.max_spoke, build_ip_corpus(rng, cfg.probes, cfg.max_spoke))


def _amin_testset(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    corpus = build_default_corpus(cfg.max_spoke, rng=rng)
    checks: List[CheckResult] = []
    for i, f in enumerate(corpus.functions):
        if not discontinuous_at_apex(f)[0]:
            continue
        n, cert = find_fan_witness(f)
        T_n = SequenceDescriptor.canonical(n)
        ok, wcert = in_witness_family(f, T_n)
        checks.append(
            check(
                f"amin/f={i:03d}/witness",
                ok and oracle.witness_class_holds(f, T_n, wcert),
                "some canonical spoke sequence witnesses f",
                f"{f.name}: spoke {n}",
                cert,
            )
        )
        S, _ = modify_prefix(T_n, random_prefix(rng))
        R = witness_range(f, S)
        hit = None
        if R is not None and in_ip(R)[0]:
            for m in sorted(spoke_support(R).spokes):
                if not intersection_class(R, DefinableSet.spoke(m))[0].is_finite:
                    hit = m
                    break
        checks.append(
            check(
                f"amin/f={i:03d}/range",
                hit is not None and in_witness_family(f, SequenceDescriptor.canonical(hit))[0],
                "witness range meets a spoke whose sequence witnesses f",
                f"spoke {hit}",
            )
        )
    verdict = is_test_set_relative(CanonicalFan(), corpus)
    checks.append(
        check("amin/test-set", verdict.passed, "A_min is a test set", f"{len(verdict.witnesses)} witnesses", verdict.certificate)
    )
    return SuiteReport.build("amin-testset", checks, notes=(RELATIVIZATION_NOTE,))


def _minimality(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    corpus = build_default_corpus(cfg.max_spoke, rng=rng)
    spokes = range(1, cfg.max_spoke + 1)
    report = SuiteReport.build("minimality", [], notes=(RELATIVIZATION_NOTE,))
    checks: List[CheckResult] = []
    for n in spokes:
        report = report.merged(minimality_refutation(n, spokes))
        h = FunctionDescriptor.spoke_indicator(n)
        augmented = corpus if h in corpus.functions else corpus.with_function(h)
        removed = is_test_set_relative(CanonicalFan(frozenset({n})), augmented)
        checks.append(
            check(
                f"minimality/n={n:03d}/corpus-removal",
                not removed.passed,
                "removing T_n breaks the test-set property",
                certificate=removed.certificate,
            )
        )
    full = is_test_set_relative(CanonicalFan(), corpus)
    checks.append(check("minimality/full-fan", full.passed, "the full canonical fan is a test set"))
    return report.merged(SuiteReport.build("minimality", checks))


def _good_chain(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    corpus = build_default_corpus(cfg.max_spoke, rng=rng)
    marker = CanonicalFan()
    report = SuiteReport.build("good-chain", [], notes=(RELATIVIZATION_NOTE, FINITE_STAGE_NOTE))
    for i in range(cfg.probes):
        chain = random_chain(rng, marker)
        report = report.merged(chain_intersection_check(chain, marker, corpus), prefix=f"chain-{i:03d}/")
    return report


def _cardinality_evidence(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    pairs = distinct_index_map_pairs(rng, cfg.probes)
    distinct, shape = [], []
    for i, (a, b) in enumerate(pairs):
        Ta, Tb = build_spoke_subsequence(a), build_spoke_subsequence(b)
        d = first_disagreement(Ta, Tb, bound=cfg.max_depth)
        if d.kind != "index" or term(Ta, d.index) == term(Tb, d.index):
            distinct.append(i)
        ok = converges_to_apex(Ta)[0] and is_injective(Ta)[0]
        ok = ok and all(term(Ta, k) == FanPoint(1, a(k)) for k in range(1, 21))
        if not ok:
            shape.append(i)
    checks = [
        _tally("cardinality/distinct", "distinct index maps give distinct sequences", distinct, len(pairs)),
        _tally("cardinality/subsequence", "T^a converges, is injective and follows a", shape, len(pairs)),
    ]
    notes = ("the cardinal inequality between the two test sets is outside computational scope; only the injection a -> T^a is checked",)
    return SuiteReport.build("cardinality-evidence", checks, notes=notes)


def _realline_example(cfg: SuiteConfig) -> SuiteReport:
    depth, tol = cfg.realline_depth, cfg.tolerance
    peaks, zeros = RealSeqGen.peaks(), RealSeqGen.zeros()
    peak_dev = float(deviations(peaks, depth, target=1.0).max())
    zero_dev = float(deviations(zeros, depth).max())
    witness = sample_witness_check(peaks, depth, Fraction(1, 2), 1e-9)
    none = sample_witness_check(zeros, depth, Fraction(1, 2), 1e-9)
    flat = sample_witness_check(peaks, depth, Fraction(1, 2), 1e-9, function="zero")
    absorb = convergence_sample(peaks, depth, [Fraction(1, 100)])
    checks = [
        check("realline/peaks", peak_dev <= tol, "sin(1/x) is 1 along the peak sequence", f"max |f - 1| = {peak_dev:.3e}"),
        check("realline/zeros", zero_dev <= tol, "sin(1/x) is 0 along the zero sequence", f"max |f| = {zero_dev:.3e}"),
        check("realline/witness", witness.is_witness and len(witness.indices) == depth, "the peak sequence is a witness", certificate=witness),
        check("realline/no-witness", not none.is_witness, "the zero sequence shows no witness up to the depth", certificate=none),
        check("realline/zero-function", not flat.is_witness, "the zero function has no witness", certificate=flat),
        check(
            "realline/decreasing",
            strictly_decreasing(peaks, depth) and strictly_decreasing(zeros, depth),
            "both generators decrease to 0",
        ),
        check("realline/absorption", absorb["1/100"] is not None and absorb["1/100"] <= 16, "peaks fall below 1/100 by k = 16", str(absorb)),
    ]
    notes = (f"sampled to depth {depth}; a missing witness is not a proof of non-membership",)
    return SuiteReport.build("realline-example", checks, notes=notes)


def _framework(cfg: SuiteConfig) -> SuiteReport:
    rng = TraceRNG(cfg.seed)
    kernel = kernel_certificate(cfg.max_spoke, 64)
    checks: List[CheckResult] = [check("framework/kernel", kernel.passed, "kernel is the apex", f"{len(kernel.certificates)} nodes")]
    nonisolated = [i for i, U in enumerate(oracle.canonical_neighborhoods()) if not apex_is_nonisolated(U)[0]]
    checks.append(_tally("framework/non-isolated", "every neighborhood holds a node", nonisolated, 50))
    disc, dcert = discontinuous_at_apex(FunctionDescriptor.apex_indicator())
    checks.append(check("framework/discontinuous-exists", disc, "1_P is discontinuous", certificate=dcert))
    checks.append(check("framework/ip-nonempty", in_ip(DefinableSet.spoke(1))[0], "B_1 is in I_P"))

    fu_bad, enum_bad = [], []
    for i, M in enumerate(build_set_corpus(rng, cfg.probes, min(10, cfg.probes), min(10, max(0, cfg.probes - 10)))):
        accumulates, cert = accumulates_at_apex(M)
        if accumulates:
            T = sequence_in_set(M)
            ok = converges_to_apex(T)[0] and is_injective(T)[0] and all(member(M, p) for p in terms(T, 200))
        else:
            U = cert["neighborhood"]
            window = oracle.truncate_set(M, cfg.max_spoke, cfg.max_depth)
            ok = not any(neighborhood_contains(U, FanPoint(n, m)) for n, m in window)
        if not ok:
            fu_bad.append(i)
        if in_ip(M)[0]:
            T = enumerate_set(M)
            horizon = oracle.enumeration_horizon(T, cfg.max_depth)
            same = oracle.range_window(T, horizon, cfg.max_spoke, cfg.max_depth) == oracle.truncate_set(
                M, cfg.max_spoke, cfg.max_depth
            )
            if not (same and is_injective(T)[0] and converges_to_apex(T)[0]):
                enum_bad.append(i)
    checks.append(_tally("framework/frechet-urysohn", "accumulating sets contain a convergent sequence", fu_bad, cfg.probes))
    checks.append(_tally("framework/enumeration", "I_P sets are enumerated injectively", enum_bad, cfg.probes))

    range_bad = []
    for i in range(cfg.probes):
        T = random_sequence(rng, convergent=True)
        if any(isinstance(ch, SpokeRun) for ch in T.channels) and not range_in_ip(T)[0]:
            range_bad.append(i)
    checks.append(_tally("framework/range", "convergent sequences with infinite range have range in I_P", range_bad, cfg.probes))
    mixed = SequenceDescriptor((), (ConstNode(1, 1), SpokeRun(2)))
    checks.append(
        check(
            "framework/range-nonconvergent",
            not converges_to_apex(mixed)[0] and range_in_ip(mixed)[0] and range_set(mixed).members.spokes == (1, 2),
            "a non-convergent sequence can have its range in I_P",
            "range of (x_{1,1}, T_2) interleaved",
        )
    )
    vacuous = is_test_set_relative(CanonicalFan(frozenset({1})), FunctionCorpus((FunctionDescriptor.constant(0),)))
    checks.append(check("framework/vacuous", vacuous.passed and vacuous.vacuous, "test sets are vacuous without discontinuities"))
    return SuiteReport.build("framework", checks, notes=(RELATIVIZATION_NOTE,))


SuiteRunner = Callable[[SuiteConfig], SuiteReport]

SUITES: Dict[str, Tuple[SuiteRunner, str, str]] = {
    "kernel": (_kernel, "the kernel of the apex is {P}", "kernel"),
    "finite-modification": (_finite_modification, "finite modification preserves convergence and witnesses", "finite-modification"),
    "prefix-chain": (_prefix_chain, "B_n(a) is a descending chain of nonempty test sets", "prefix-family-test-set"),
    "bad-chain": (_bad_chain, "the chain B_n(a) has empty intersection", "prefix-family-empty-intersection"),
    "ip-characterization": (_ip_characterization, "I_P sets are the infinite sets on finitely many spokes", "ip-characterization"),
    "mad": (_mad, "the spokes form a MAD family in I_P", "spokes-mad"),
    "amin-testset": (_amin_testset, "the canonical fan is a test set", "canonical-fan-test-set"),
    "minimality": (_minimality, "no canonical sequence can be removed", "canonical-fan-minimal"),
    "good-chain": (_good_chain, "chains through the minimal test set are good", "good-chain"),
    "cardinality-evidence": (_cardinality_evidence, "a -> T^a is injective", "spoke-subsequence-injection"),
    "realline-example": (_realline_example, "sin(1/x) has witnesses and non-witnesses at 0", "sin-reciprocal-witnesses"),
    "framework": (_framework, "standing assumptions hold on the fan", "kernel"),
}


def run_suite(config: SuiteConfig) -> Tuple[int, SuiteReport]:
    """Run one suite; exit status is 0 on a passing verdict and 1 otherwise."""
    cfg = config.resolved()
    runner, claim, lemma = SUITES[cfg.suite]
    logger.info("running suite %s (seed=%s)", cfg.suite, cfg.seed)
    report = runner(cfg)
    notes = (f"property: {claim}", f"lemma: {lemma}") + report.notes
    report = dataclasses.replace(report, seed=cfg.seed, config=cfg.echo(), notes=notes)
    logger.info("suite %s: %s (%d checks)", cfg.suite, report.verdict, len(report.checks))
    return (0 if report.passed else 1), report

"""Suite reports: per-check results, certificates, and JSON / Markdown rendering.

Reports carry no timestamps or host data, so equal configurations render to
byte-identical output.
"""

from __future__ import annotations

import json
import dataclasses
from dataclasses import dataclass, field, is_dataclass
from fnmatch import fnmatchcase
from fractions import Fraction
from typing import Any, Dict, Iterable, Literal, Optional, Sequence, Tuple

from .models import SCHEMA

CheckStatus = Literal["pass", "fail", "info"]
Verdict = Literal["pass", "fail"]

CERTIFICATE_SAMPLE = 16

RELATIVIZATION_NOTE = (
    "test-set verdicts are relative to the recorded function corpus, "
    "not to all real-valued functions"
)
FINITE_STAGE_NOTE = "chains and almost disjoint families are checked at a finite stage; maximality is not certified"

# Results a check can trace to, by id.
LEMMAS: Dict[str, str] = {
    "kernel": "the kernel of the apex is {P}",
    "apex-non-isolated": "every neighborhood of the apex holds a node",
    "discontinuous-function-exists": "some function is discontinuous at the apex",
    "frechet-urysohn": "a set accumulating at the apex contains a sequence converging to it",
    "finite-modification": "changing finitely many terms preserves convergence and witness membership",
    "prefix-family-descending": "B_{n+1}(a) is contained in B_n(a)",
    "prefix-family-nonempty": "B_n(a) is nonempty",
    "prefix-family-test-set": "B_n(a) is a test set",
    "prefix-family-empty-intersection": "the chain B_n(a) has empty intersection",
    "ip-characterization": "I_P consists of the infinite sets on finitely many spokes",
    "ip-nonempty": "I_P is nonempty",
    "intersection-class": "intersections of definable sets are classified exactly",
    "enumeration": "every set in I_P is the range of an injective sequence converging to the apex",
    "range-in-ip": "the range of a convergent sequence with infinitely many nodes is in I_P",
    "spokes-mad": "the spokes form a maximal almost disjoint family in I_P",
    "canonical-fan-test-set": "the canonical fan is a test set",
    "canonical-fan-minimal": "no canonical sequence can be removed from the canonical fan",
    "good-chain": "a chain through the canonical fan intersects to it",
    "vacuous-test-set": "every family is a test set for a corpus without discontinuities",
    "spoke-subsequence-injection": "a -> T^a is injective",
    "sin-reciprocal-witnesses": "sin(1/x) at 0 has witnesses and non-witnesses",
}

# First matching check-id pattern wins.
LEMMA_TRACE: Tuple[Tuple[str, str], ...] = (
    ("kernel/*", "kernel"),
    ("framework/kernel", "kernel"),
    ("framework/non-isolated", "apex-non-isolated"),
    ("framework/discontinuous-exists", "discontinuous-function-exists"),
    ("framework/frechet-urysohn", "frechet-urysohn"),
    ("framework/ip-nonempty", "ip-nonempty"),
    ("framework/enumeration", "enumeration"),
    ("framework/range*", "range-in-ip"),
    ("framework/vacuous", "vacuous-test-set"),
    ("finite-modification/*", "finite-modification"),
    ("*/n=*/nested", "prefix-family-descending"),
    ("*/n=*/nonempty", "prefix-family-nonempty"),
    ("*/n=*/test-set", "prefix-family-test-set"),
    ("bad-chain/*", "prefix-family-empty-intersection"),
    ("ip/intersection", "intersection-class"),
    ("ip/*", "ip-characterization"),
    ("mad/*", "spokes-mad"),
    ("amin/*", "canonical-fan-test-set"),
    ("minimality/full-fan", "canonical-fan-test-set"),
    ("minimality/*", "canonical-fan-minimal"),
    ("*good-chain/marker-test-set", "canonical-fan-test-set"),
    ("*good-chain/*", "good-chain"),
    ("cardinality/*", "spoke-subsequence-injection"),
    ("realline/*", "sin-reciprocal-witnesses"),
)


def lemma_for(check_id: str) -> str:
    for pattern, lemma in LEMMA_TRACE:
        if fnmatchcase(check_id, pattern):
            return lemma
    return ""


def jsonable(value: Any) -> Any:
    """Convert descriptors and certificates into plain JSON data."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return round(value, 15)
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if is_dataclass(value):
        return {k: jsonable(v) for k, v in vars(value).items()}
    return repr(value)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: CheckStatus
    claim: str = ""
    detail: str = ""
    certificate: Any = None
    lemma: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "id": self.check_id,
            "status": self.status,
            "claim": self.claim,
            "lemma": self.lemma,
            "detail": self.detail,
        }
        if self.certificate is not None:
            out["certificate"] = jsonable(self.certificate)
        return out


def check(check_id: str, ok: bool, claim: str = "", detail: str = "", certificate: Any = None) -> CheckResult:
    return CheckResult(check_id, "pass" if ok else "fail", claim, detail, certificate)


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one verification suite.

    ``verdict`` is ``pass`` iff no check failed. ``certificates`` holds bulk
    evidence rows (for example one excluding neighborhood per node); only a
    prefix of them is rendered.
    """

    suite: str
    verdict: Verdict
    checks: Tuple[CheckResult, ...] = ()
    seed: Optional[int] = None
    config: Dict[str, Any] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()
    certificates: Tuple[Any, ...] = ()

    @staticmethod
    def build(
        suite: str,
        checks: Iterable[CheckResult],
        *,
        seed: Optional[int] = None,
        config: Optional[Dict[str, Any]] = None,
        notes: Sequence[str] = (),
        certificates: Sequence[Any] = (),
    ) -> "SuiteReport":
        traced = (c if c.lemma else dataclasses.replace(c, lemma=lemma_for(c.check_id)) for c in checks)
        ordered = tuple(sorted(traced, key=lambda c: c.check_id))
        verdict: Verdict = "fail" if any(c.failed for c in ordered) else "pass"
        return SuiteReport(suite, verdict, ordered, seed, dict(config or {}), tuple(notes), tuple(certificates))

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def failures(self) -> Tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.failed)

    @property
    def lemmas(self) -> Tuple[str, ...]:
        return tuple(sorted({c.lemma for c in self.checks if c.lemma}))

    def merged(self, other: "SuiteReport", prefix: str = "") -> "SuiteReport":
        """This report with ``other``'s checks (ids prefixed) folded in."""
        extra = [dataclasses.replace(c, check_id=f"{prefix}{c.check_id}") for c in other.checks]
        notes = tuple(dict.fromkeys(self.notes + other.notes))
        return SuiteReport.build(
            self.suite,
            list(self.checks) + extra,
            seed=self.seed,
            config=self.config,
            notes=notes,
            certificates=self.certificates + other.certificates,
        )

    def to_dict(self) -> Dict[str, Any]:
        counts = {"pass": 0, "fail": 0, "info": 0}
        for c in self.checks:
            counts[c.status] += 1
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "verdict": self.verdict,
            "seed": self.seed,
            "config": jsonable(self.config),
            "notes": list(self.notes),
            "lemmas": {k: LEMMAS[k] for k in self.lemmas},
            "counts": counts,
            "checks": [c.to_dict() for c in self.checks],
            "certificates": {
                "count": len(self.certificates),
                "sampled": min(len(self.certificates), CERTIFICATE_SAMPLE),
                "sample": [jsonable(c) for c in self.certificates[:CERTIFICATE_SAMPLE]],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        lines = [
            f"# seqwit report: {self.suite}",
            "",
            f"- verdict: **{self.verdict}**",
            f"- seed: {self.seed}",
            f"- checks: {len(self.checks)} ({len(self.failures)} failed)",
            f"- certificates: {len(self.certificates)} (first {min(len(self.certificates), CERTIFICATE_SAMPLE)} rendered in JSON)",
        ]
        for key in sorted(self.config):
            lines.append(f"- {key}: {self.config[key]}")
        if self.notes:
            lines += ["", "## Notes", ""]
            lines += [f"- {n}" for n in self.notes]
        if self.lemmas:
            lines += ["", "## Lemmas", ""]
            lines += [f"- `{k}`: {LEMMAS[k]}" for k in self.lemmas]
        lines += ["", "## Checks", "", "| check | status | lemma | claim | detail |", "|---|---|---|---|---|"]
        for c in self.checks:
            detail = c.detail.replace("|", "\\|")
            lines.append(f"| `{c.check_id}` | {c.status} | {c.lemma} | {c.claim} | {detail} |")
        return "\n".join(lines) + "\n"

    def render(self, output_format: str) -> str:
        if output_format == "markdown":
            return self.to_markdown()
        return self.to_json()

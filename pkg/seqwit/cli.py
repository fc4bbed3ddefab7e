"""Command-line surface: run verification suites or answer a query on a descriptor file.

Examples:
  python3 verify.py --suite kernel --max-spoke 64 --max-depth 4096
  python3 verify.py --suite minimality --format markdown --out minimality.md
  python3 verify.py --eval descriptors/T_1.json --query converges
  SEQWIT_SEED=7 python3 verify.py --suite finite-modification --probes 200 -v
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from .codec import load_document
from .corpus import build_default_corpus
from .errors import SeqwitError, UnknownQuery
from .functions import discontinuous_at_apex, in_witness_family
from .models import SCHEMA, Certificate
from .report import jsonable
from .sequences import converges_to_apex, is_injective
from .sets import in_ip, intersection_class, member
from .suites import SUITES, SuiteConfig, run_suite
from .testsets import is_test_set_relative

logger = logging.getLogger(__name__)

Answer = Tuple[Any, Any]


def _require(parts: Mapping[str, Any], query: str, *names: str) -> List[Any]:
    missing = [n for n in names if n not in parts]
    if missing:
        raise UnknownQuery(f"query {query!r} needs {', '.join(missing)} in the document")
    return [parts[n] for n in names]


def _member(parts: Mapping[str, Any]) -> Answer:
    M, x = _require(parts, "member", "set", "point")
    return member(M, x), None


def _converges(parts: Mapping[str, Any]) -> Answer:
    (T,) = _require(parts, "converges", "sequence")
    return converges_to_apex(T)


def _injective(parts: Mapping[str, Any]) -> Answer:
    (T,) = _require(parts, "injective", "sequence")
    return is_injective(T)


def _in_ip(parts: Mapping[str, Any]) -> Answer:
    (M,) = _require(parts, "in-ip", "set")
    return in_ip(M)


def _almost_disjoint(parts: Mapping[str, Any]) -> Answer:
    (sets,) = _require(parts, "almost-disjoint", "sets")
    if len(sets) != 2:
        raise UnknownQuery("query 'almost-disjoint' needs exactly two entries in 'sets'")
    card, cert = intersection_class(sets[0], sets[1])
    return card.is_finite, Certificate(cert.kind, {**cert.data, "cardinality": card})


def _in_witness_family(parts: Mapping[str, Any]) -> Answer:
    f, T = _require(parts, "in-witness-family", "function", "sequence")
    return in_witness_family(f, T)


def _discontinuous(parts: Mapping[str, Any]) -> Answer:
    (f,) = _require(parts, "discontinuous", "function")
    return discontinuous_at_apex(f)


def _test_set_relative(parts: Mapping[str, Any], seed: Optional[int] = None) -> Answer:
    (A,) = _require(parts, "test-set-relative", "testset")
    corpus = parts.get("corpus") or build_default_corpus(seed=seed)
    verdict = is_test_set_relative(A, corpus)
    return verdict.passed, verdict


QUERIES: Dict[str, Callable[..., Answer]] = {
    "member": _member,
    "converges": _converges,
    "injective": _injective,
    "in-ip": _in_ip,
    "almost-disjoint": _almost_disjoint,
    "in-witness-family": _in_witness_family,
    "discontinuous": _discontinuous,
    "test-set-relative": _test_set_relative,
}


def eval_descriptor(path: str, query: str, seed: Optional[int] = None) -> Dict[str, Any]:
    """Answer ``query`` on the descriptor document at ``path``.

    ``test-set-relative`` uses the document's ``corpus`` when present and the seeded
    default corpus otherwise.
    """
    handler = QUERIES.get(query)
    if handler is None:
        raise UnknownQuery(f"unknown query {query!r}; choose from {', '.join(sorted(QUERIES))}")
    parts = load_document(path)
    if query == "test-set-relative":
        result, certificate = _test_set_relative(parts, seed)
    else:
        result, certificate = handler(parts)
    logger.debug("query %s on %s: %s", query, path, result)
    return {"schema": SCHEMA, "query": query, "result": result, "certificate": jsonable(certificate)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="seqwit",
        description="Verify constructive properties of sequential test sets on the sequential fan.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--suite", choices=sorted(SUITES), help="Verification suite to run.")
    mode.add_argument("--eval", dest="eval_path", metavar="PATH", help="Descriptor document to query.")

    # Suite bounds (None means the suite default)
    p.add_argument("--max-spoke", type=int, default=None, help="Truncation bound on spokes.")
    p.add_argument("--max-depth", type=int, default=None, help="Truncation bound on depths (chain length N for chain suites).")
    p.add_argument("--probes", type=int, default=None, help="Number of generated probes.")
    p.add_argument("--seed", type=int, default=None, help="Seed; falls back to SEQWIT_SEED, then 42.")
    p.add_argument("--tolerance", type=float, default=None, help="Real-line deviation tolerance.")
    p.add_argument("--realline-depth", type=int, default=None, help="Real-line sample depth.")

    # Output
    p.add_argument("--format", dest="output_format", choices=["json", "markdown"], default="json")
    p.add_argument("--out", default=None, help="Write the report here instead of stdout.")
    p.add_argument("--query", default=None, help=f"Query for --eval: {', '.join(sorted(QUERIES))}.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for decisions.")
    return p


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(name)s:%(levelname)s:%(message)s")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.eval_path:
            if not args.query:
                raise UnknownQuery("--eval needs --query")
            answer = eval_descriptor(args.eval_path, args.query, args.seed)
            _emit(json.dumps(answer, indent=2, sort_keys=True) + "\n", args.out)
            return 0
        config = SuiteConfig(
            suite=args.suite,
            max_spoke=args.max_spoke,
            max_depth=args.max_depth,
            probes=args.probes,
            seed=args.seed,
            output_format=args.output_format,
            out=args.out,
            tolerance=args.tolerance,
            realline_depth=args.realline_depth,
        )
        status, report = run_suite(config)
    except SeqwitError as exc:
        print(f"seqwit: error: {exc}", file=sys.stderr)
        return 2
    _emit(report.render(config.output_format), config.out)
    return status

"""The sequential fan S_ω: neighborhoods of the apex and accumulation.

A definable set accumulates at P exactly when some spoke meets it in an infinite
set. Rows meet every spoke at most once, so an affine threshold one above the row
depth keeps them out of a neighborhood, and finite chunks are cut off by overrides.
"""

from __future__ import annotations

import logging
from typing import Tuple

from .errors import ApexNotExcludable, UnsupportedCombination
from .models import APEX, Certificate, DefinableSet, FanPoint, NeighborhoodSpec
from .report import SuiteReport, check

logger = logging.getLogger(__name__)


def neighborhood_contains(U: NeighborhoodSpec, x: FanPoint) -> bool:
    if x.is_apex:
        return True
    return x.depth >= U.threshold(x.spoke)


def excluding_neighborhood(x: FanPoint) -> NeighborhoodSpec:
    """A basic neighborhood of P missing the node ``x``."""
    if x.is_apex:
        raise ApexNotExcludable("the apex lies in every neighborhood")
    return NeighborhoodSpec(default=1, overrides=((x.spoke, x.depth + 1),))


def kernel_certificate(max_spoke: int, max_depth: int) -> SuiteReport:
    """Certify K_P = {P} on the truncation: every node is excluded by some U.

    Certificate rows are ``(spoke, depth, threshold)`` meaning
    ``U = (d=1, {spoke -> threshold})``.
    """
    rows = []
    checks = []
    for n in range(1, max_spoke + 1):
        bad = 0
        for m in range(1, max_depth + 1):
            x = FanPoint(n, m)
            U = excluding_neighborhood(x)
            if neighborhood_contains(U, x) or not neighborhood_contains(U, APEX):
                bad += 1
            rows.append((n, m, U.threshold(n)))
        checks.append(
            check(
                f"kernel/spoke-{n:04d}",
                bad == 0,
                "kernel is the apex",
                f"{max_depth} nodes excluded" if not bad else f"{bad} nodes not excluded",
            )
        )
    logger.info("kernel: %d certificates over %dx%d", len(rows), max_spoke, max_depth)
    return SuiteReport.build(
        "kernel",
        checks,
        config={"max_spoke": max_spoke, "max_depth": max_depth},
        certificates=rows,
    )


def separating_neighborhood(M: DefinableSet) -> NeighborhoodSpec:
    """A neighborhood meeting M in nothing, for M without strided tails.

    Rows are excluded by the affine default ``max(slope)*n + max(intercept) + 1``;
    finite chunks by an override one past their deepest point.
    """
    if any(c.tails for c in M.spoke_components):
        raise UnsupportedCombination("sets with strided tails meet every neighborhood")
    default = max([1] + [r.intercept + 1 for r in M.row_components])
    slope = max([0] + [r.slope for r in M.row_components])
    base = NeighborhoodSpec(default=default, slope=slope)
    overrides = {}
    for comp in M.spoke_components:
        overrides[comp.spoke] = max(max(comp.finite) + 1, base.threshold(comp.spoke))
    return NeighborhoodSpec.of(default, overrides, slope)


def accumulates_at_apex(M: DefinableSet) -> Tuple[bool, Certificate]:
    for comp in M.spoke_components:
        if comp.tails:
            tail = comp.tails[0]
            cert = Certificate(
                "accumulation",
                {"spoke": comp.spoke, "residue": tail.residue, "modulus": tail.stride, "from": tail.start},
            )
            logger.debug("accumulates on spoke %d", comp.spoke)
            return True, cert
    U = separating_neighborhood(M)
    return False, Certificate("separation", {"neighborhood": U, "exceptions": []})


def apex_is_nonisolated(U: NeighborhoodSpec) -> Tuple[bool, Certificate]:
    """Every neighborhood of P holds a node; the witness sits on spoke 1."""
    x = FanPoint(1, U.threshold(1))
    return neighborhood_contains(U, x), Certificate("neighborhood", {"neighborhood": U, "node": x})

"""Bounded-depth numeric check of witness sequences for sin(1/x) at 0 on the real line.

Sampling can exhibit a witness but never prove its absence: a ``none_up_to``
verdict only speaks for the sampled depth.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Literal, Optional, Sequence, Tuple

import numpy as np

from .errors import DescriptorError
from .models import rational_to_dict

logger = logging.getLogger(__name__)

RealFunction = Literal["sin_reciprocal", "zero"]


@dataclass(frozen=True)
class RealSeqGen:
    """T_k = 1 / ((c1*k + c2) * scale) with scale = π when ``pi_scaled``."""

    c1: Fraction
    c2: Fraction = Fraction(0)
    pi_scaled: bool = True
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))
        if self.c1 <= 0 or self.c1 + self.c2 <= 0:
            raise DescriptorError("reciprocal-affine generators need c1 > 0 and positive terms")

    @staticmethod
    def peaks() -> "RealSeqGen":
        """1/(2kπ + π/2): sin(1/x) is 1 on every term."""
        return RealSeqGen(Fraction(2), Fraction(1, 2), True, "peaks")

    @staticmethod
    def zeros() -> "RealSeqGen":
        """1/(kπ): sin(1/x) is 0 on every term."""
        return RealSeqGen(Fraction(1), Fraction(0), True, "zeros")

    def terms(self, depth: int) -> np.ndarray:
        k = np.arange(1, depth + 1, dtype=np.float64)
        scale = np.pi if self.pi_scaled else 1.0
        return 1.0 / ((float(self.c1) * k + float(self.c2)) * scale)

    def to_dict(self) -> Dict[str, object]:
        return {
            "c1": rational_to_dict(self.c1),
            "c2": rational_to_dict(self.c2),
            "piScaled": self.pi_scaled,
            "name": self.name,
        }


@dataclass(frozen=True)
class WitnessVerdict:
    kind: Literal["witness", "none_up_to"]
    depth: int
    max_deviation: float
    epsilon: Optional[Fraction] = None
    indices: Tuple[int, ...] = ()

    @property
    def is_witness(self) -> bool:
        return self.kind == "witness"

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind, "depth": self.depth, "maxDeviation": self.max_deviation}
        if self.is_witness:
            out["epsilon"] = rational_to_dict(self.epsilon)
            out["count"] = len(self.indices)
            out["firstIndices"] = list(self.indices[:16])
        else:
            out["caveat"] = f"no witness found up to depth {self.depth}; this is not a proof of non-membership"
        return out


def evaluate_real(values: np.ndarray, function: RealFunction = "sin_reciprocal") -> np.ndarray:
    if function == "zero":
        return np.zeros_like(values)
    return np.sin(1.0 / values)


def deviations(gen: RealSeqGen, depth: int, function: RealFunction = "sin_reciprocal", target: float = 0.0) -> np.ndarray:
    return np.abs(evaluate_real(gen.terms(depth), function) - target)


def sample_witness_check(
    gen: RealSeqGen,
    depth: int,
    epsilon: Fraction,
    tol: float,
    function: RealFunction = "sin_reciprocal",
) -> WitnessVerdict:
    if depth < 1 or epsilon <= 0 or tol <= 0:
        raise DescriptorError("depth, epsilon and tolerance must be positive")
    dev = deviations(gen, depth, function)
    max_dev = float(dev.max())
    hits = np.nonzero(dev >= float(epsilon) - tol)[0] + 1
    if len(hits) and len(hits) >= depth / 2:
        logger.debug("%s: witness on %d of %d indices", gen.name, len(hits), depth)
        return WitnessVerdict("witness", depth, max_dev, Fraction(epsilon), tuple(int(k) for k in hits))
    return WitnessVerdict("none_up_to", depth, max_dev)


def convergence_sample(gen: RealSeqGen, depth: int, eps_grid: Sequence[Fraction]) -> Dict[str, Optional[int]]:
    """For each ε, the first sampled index from which every term is below ε."""
    values = gen.terms(depth)
    out: Dict[str, Optional[int]] = {}
    for eps in eps_grid:
        outside = np.nonzero(values >= float(eps))[0]
        if not len(outside):
            out[str(eps)] = 1
        elif outside[-1] + 1 < depth:
            out[str(eps)] = int(outside[-1]) + 2
        else:
            out[str(eps)] = None
    return out


def strictly_decreasing(gen: RealSeqGen, depth: int) -> bool:
    values = gen.terms(depth + 1)
    return bool(np.all(np.diff(values) < 0) and np.all(values > 0))

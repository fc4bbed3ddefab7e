from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

DEFAULT_SEED = 42
SEED_ENV = "SEQWIT_SEED"


def resolve_seed(flag: Optional[int]) -> int:
    """``--seed`` beats ``SEQWIT_SEED`` beats the default."""
    if flag is not None:
        return flag
    raw = os.environ.get(SEED_ENV, "").strip()
    if raw:
        return int(raw)
    return DEFAULT_SEED


@dataclass
class TraceRNG:
    """Seeded generator for corpora and probes, recording labelled draws.

    No module keeps random state of its own; everything drawn for a suite goes
    through one instance so a report's seed reproduces it exactly.
    """

    seed: Optional[int] = None
    trace_limit: int = 256
    _rng: random.Random = field(init=False, repr=False)
    trace: List[Dict[str, str]] = field(default_factory=list)
    draws: int = 0

    def __post_init__(self) -> None:
        self._rng = random.Random(self.seed)

    def _record(self, entry: Dict[str, str]) -> None:
        self.draws += 1
        if len(self.trace) < self.trace_limit:
            self.trace.append(entry)

    def randint(self, a: int, b: int, label: str = "randint") -> int:
        v = self._rng.randint(a, b)
        self._record({"op": label, "value": str(v), "range": f"{a}-{b}"})
        return v

    def chance(self, p: float, label: str = "chance") -> bool:
        v = self._rng.random() < p
        self._record({"op": label, "value": str(v)})
        return v

    def choice(self, seq: Sequence[Any], label: str = "choice") -> Any:
        if not seq:
            raise ValueError("choice() requires a non-empty sequence")
        idx = self._rng.randrange(len(seq))
        self._record({"op": label, "index": str(idx), "len": str(len(seq))})
        return seq[idx]

    def subset(self, population: Sequence[Any], k: int, label: str = "subset") -> List[Any]:
        """k distinct elements in population order."""
        k = max(0, min(k, len(population)))
        picked = sorted(self._rng.sample(range(len(population)), k))
        self._record({"op": label, "k": str(k), "len": str(len(population))})
        return [population[i] for i in picked]

"""Descriptor models for the sequential fan S_ω.

Version History:
- v0.2: affine default thresholds on neighborhoods, multi-tail spoke components
- v0.1: points, neighborhoods, definable sets, sequences, functions, test sets

All descriptors are frozen dataclasses. Invariants are checked (and the value
normalized) in ``__post_init__``, so two descriptors that denote the same
normalized object compare equal. Every descriptor serializes with ``to_dict``
and loads with ``from_dict`` using the ``seqwit/1`` JSON schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, Literal, Mapping, Optional, Tuple, Union

from .errors import DescriptorError, NotStrictlyIncreasing

SCHEMA = "seqwit/1"

Rational = Union[int, Fraction]
CertificateKind = Literal[
    "excluding",
    "accumulation",
    "separation",
    "residue",
    "row",
    "points",
    "spoke_support",
    "finite",
    "neighborhood",
    "absorption",
    "escape",
    "injective",
    "collision",
    "discontinuity",
    "continuity",
    "witness",
    "no_witness",
    "fan_witness",
    "symbolic",
    "exhaustive",
    "empty_family",
]


def _set(obj: Any, name: str, value: Any) -> None:
    object.__setattr__(obj, name, value)


def _positive(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DescriptorError(f"{what} must be a positive integer, got {value!r}")
    return value


def rational_to_dict(q: Fraction) -> Dict[str, int]:
    return {"num": q.numerator, "den": q.denominator}


def rational_from(data: Any) -> Fraction:
    if isinstance(data, Mapping):
        den = int(data.get("den", 1))
        if den < 1:
            raise DescriptorError(f"rational denominator must be positive, got {den}")
        return Fraction(int(data["num"]), den)
    if isinstance(data, (int, Fraction)) and not isinstance(data, bool):
        return Fraction(data)
    if isinstance(data, str):
        return Fraction(data)
    raise DescriptorError(f"not an exact rational: {data!r}")


# ---------------------------------------------------------------------------
# fan points and neighborhoods


@dataclass(frozen=True, order=True)
class FanPoint:
    """Either the apex P (``spoke == depth == 0``) or the node x_{spoke,depth}."""

    spoke: int = 0
    depth: int = 0

    def __post_init__(self) -> None:
        if (self.spoke, self.depth) == (0, 0):
            return
        _positive(self.spoke, "spoke")
        _positive(self.depth, "depth")

    @property
    def is_apex(self) -> bool:
        return self.spoke == 0

    @staticmethod
    def node(spoke: int, depth: int) -> "FanPoint":
        return FanPoint(spoke, depth)

    def __repr__(self) -> str:
        if self.is_apex:
            return "Apex"
        return f"Node({self.spoke},{self.depth})"

    def to_dict(self) -> Dict[str, Any]:
        if self.is_apex:
            return {"apex": True}
        return {"spoke": self.spoke, "depth": self.depth}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "FanPoint":
        if data.get("apex") is True:
            return APEX
        return FanPoint(_positive(int(data["spoke"]), "spoke"), _positive(int(data["depth"]), "depth"))


APEX = FanPoint()


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Basic neighborhood U_f of the apex.

    ``f(n) = overrides[n]`` when spoke n is overridden, else
    ``max(1, default + slope * n)``. With ``slope == 0`` the threshold function is
    finitely supported over the constant ``default``.
    """

    default: int = 1
    overrides: Tuple[Tuple[int, int], ...] = ()
    slope: int = 0

    def __post_init__(self) -> None:
        _positive(self.default, "default threshold")
        if isinstance(self.slope, bool) or not isinstance(self.slope, int) or self.slope < 0:
            raise DescriptorError(f"slope must be a non-negative integer, got {self.slope!r}")
        raw = dict(self.overrides)
        normalized = []
        for spoke, threshold in sorted(raw.items()):
            _positive(spoke, "override spoke")
            _positive(threshold, "override threshold")
            if threshold != self.base_threshold(spoke):
                normalized.append((spoke, threshold))
        _set(self, "overrides", tuple(normalized))

    @staticmethod
    def of(default: int = 1, overrides: Optional[Mapping[int, int]] = None, slope: int = 0) -> "NeighborhoodSpec":
        return NeighborhoodSpec(default=default, overrides=tuple((overrides or {}).items()), slope=slope)

    def base_threshold(self, spoke: int) -> int:
        return max(1, self.default + self.slope * spoke)

    def threshold(self, spoke: int) -> int:
        for n, t in self.overrides:
            if n == spoke:
                return t
        return self.base_threshold(spoke)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "default": self.default,
            "overrides": {str(n): t for n, t in self.overrides},
        }
        if self.slope:
            out["slope"] = self.slope
        return out

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "NeighborhoodSpec":
        overrides = {int(k): int(v) for k, v in dict(data.get("overrides", {})).items()}
        return NeighborhoodSpec.of(int(data.get("default", 1)), overrides, int(data.get("slope", 0)))


# ---------------------------------------------------------------------------
# definable sets


@dataclass(frozen=True)
class StridedTail:
    """Depths ``start, start+stride, ...`` minus a finite set of excluded depths."""

    start: int
    stride: int = 1
    excluded: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        _positive(self.start, "tail start")
        _positive(self.stride, "tail stride")
        excluded = set(self.excluded)
        for m in excluded:
            if m < self.start or (m - self.start) % self.stride:
                raise DescriptorError(
                    f"excluded depth {m} is not on the progression {self.start} mod {self.stride}"
                )
        start = self.start
        while start in excluded:
            excluded.discard(start)
            start += self.stride
        _set(self, "start", start)
        _set(self, "excluded", frozenset(excluded))

    @property
    def residue(self) -> int:
        return self.start % self.stride

    @property
    def settled_start(self) -> int:
        """First progression depth beyond every exclusion."""
        if not self.excluded:
            return self.start
        return max(self.excluded) + self.stride

    def contains(self, depth: int) -> bool:
        return depth >= self.start and (depth - self.start) % self.stride == 0 and depth not in self.excluded

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.start, self.stride, tuple(sorted(self.excluded)))

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "stride": self.stride, "excluded": sorted(self.excluded)}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "StridedTail":
        return StridedTail(
            start=int(data.get("start", 1)),
            stride=int(data.get("stride", 1)),
            excluded=frozenset(int(m) for m in data.get("excluded", [])),
        )


@dataclass(frozen=True)
class SpokeComponent:
    """The part of a definable set lying on one spoke: a finite chunk plus strided tails."""

    spoke: int
    finite: FrozenSet[int] = frozenset()
    tails: Tuple[StridedTail, ...] = ()

    def __post_init__(self) -> None:
        _positive(self.spoke, "spoke")
        tails = tuple(sorted(set(self.tails), key=StridedTail.sort_key))
        finite = frozenset(m for m in self.finite if not any(t.contains(m) for t in tails))
        for m in finite:
            _positive(m, "chunk depth")
        if not finite and not tails:
            raise DescriptorError(f"empty component on spoke {self.spoke}")
        _set(self, "tails", tails)
        _set(self, "finite", finite)

    @staticmethod
    def chunk(spoke: int, depths: Iterable[int]) -> "SpokeComponent":
        return SpokeComponent(spoke, finite=frozenset(depths))

    @staticmethod
    def tail(spoke: int, start: int = 1, stride: int = 1, excluded: Iterable[int] = ()) -> "SpokeComponent":
        return SpokeComponent(spoke, tails=(StridedTail(start, stride, frozenset(excluded)),))

    def contains(self, depth: int) -> bool:
        return depth in self.finite or any(t.contains(depth) for t in self.tails)

    def merged(self, other: "SpokeComponent") -> "SpokeComponent":
        return SpokeComponent(self.spoke, self.finite | other.finite, self.tails + other.tails)

    def to_dicts(self) -> list:
        out = []
        if self.finite:
            out.append({"spoke": self.spoke, "finite": sorted(self.finite)})
        for t in self.tails:
            out.append({"spoke": self.spoke, "tail": t.to_dict()})
        return out


@dataclass(frozen=True)
class RowComponent:
    """The affine row ``{Node(n, slope*n + intercept) : n >= start_spoke}``."""

    start_spoke: int
    slope: int = 0
    intercept: int = 1

    def __post_init__(self) -> None:
        _positive(self.start_spoke, "row start spoke")
        if isinstance(self.slope, bool) or not isinstance(self.slope, int) or self.slope < 0:
            raise DescriptorError(f"row slope must be non-negative, got {self.slope!r}")
        if self.slope * self.start_spoke + self.intercept < 1:
            raise DescriptorError("row depth must be positive from its start spoke on")

    def depth_at(self, spoke: int) -> Optional[int]:
        if spoke < self.start_spoke:
            return None
        return self.slope * spoke + self.intercept

    def point(self, spoke: int) -> FanPoint:
        depth = self.depth_at(spoke)
        if depth is None:
            raise DescriptorError(f"row starts at spoke {self.start_spoke}, not {spoke}")
        return FanPoint(spoke, depth)

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.start_spoke, self.slope, self.intercept)

    def to_dict(self) -> Dict[str, int]:
        return {"from": self.start_spoke, "slope": self.slope, "intercept": self.intercept}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "RowComponent":
        return RowComponent(int(data.get("from", 1)), int(data.get("slope", 0)), int(data.get("intercept", 1)))


@dataclass(frozen=True)
class DefinableSet:
    """Finite union of spoke components and affine rows; never contains the apex."""

    spoke_components: Tuple[SpokeComponent, ...] = ()
    row_components: Tuple[RowComponent, ...] = ()

    def __post_init__(self) -> None:
        by_spoke: Dict[int, SpokeComponent] = {}
        for comp in self.spoke_components:
            prev = by_spoke.get(comp.spoke)
            by_spoke[comp.spoke] = comp if prev is None else prev.merged(comp)
        _set(self, "spoke_components", tuple(by_spoke[n] for n in sorted(by_spoke)))
        _set(self, "row_components", tuple(sorted(set(self.row_components), key=RowComponent.sort_key)))

    @staticmethod
    def empty() -> "DefinableSet":
        return DefinableSet()

    @staticmethod
    def spoke(n: int) -> "DefinableSet":
        """The whole n-th spoke B_n."""
        return DefinableSet((SpokeComponent.tail(n),))

    @staticmethod
    def points(points: Iterable[FanPoint]) -> "DefinableSet":
        depths: Dict[int, set] = {}
        for p in points:
            if p.is_apex:
                continue
            depths.setdefault(p.spoke, set()).add(p.depth)
        return DefinableSet(tuple(SpokeComponent.chunk(n, ds) for n, ds in depths.items()))

    @staticmethod
    def row(start_spoke: int = 1, slope: int = 0, intercept: int = 1) -> "DefinableSet":
        return DefinableSet(row_components=(RowComponent(start_spoke, slope, intercept),))

    def union(self, other: "DefinableSet") -> "DefinableSet":
        return DefinableSet(
            self.spoke_components + other.spoke_components,
            self.row_components + other.row_components,
        )

    def component(self, spoke: int) -> Optional[SpokeComponent]:
        for comp in self.spoke_components:
            if comp.spoke == spoke:
                return comp
        return None

    @property
    def spokes(self) -> Tuple[int, ...]:
        return tuple(c.spoke for c in self.spoke_components)

    def to_dict(self) -> Dict[str, Any]:
        spokes = []
        for comp in self.spoke_components:
            spokes.extend(comp.to_dicts())
        return {"spokes": spokes, "rows": [r.to_dict() for r in self.row_components]}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "DefinableSet":
        comps = []
        for raw in data.get("spokes", []):
            n = int(raw["spoke"])
            if "tail" in raw:
                comps.append(SpokeComponent(n, tails=(StridedTail.from_dict(raw["tail"]),)))
            elif "finite" in raw:
                comps.append(SpokeComponent.chunk(n, (int(m) for m in raw["finite"])))
            else:
                raise DescriptorError(f"spoke entry needs 'tail' or 'finite': {raw!r}")
        rows = tuple(RowComponent.from_dict(r) for r in data.get("rows", []))
        return DefinableSet(tuple(comps), rows)


# ---------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class SpokeRun:
    """Emits Node(spoke, m) for m = start, start+stride, ... omitting skipped depths."""

    spoke: int
    start: int = 1
    stride: int = 1
    skipped: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        _positive(self.spoke, "run spoke")
        _positive(self.start, "run start")
        _positive(self.stride, "run stride")
        skipped = set(self.skipped)
        for m in skipped:
            if m < self.start or (m - self.start) % self.stride:
                raise DescriptorError(f"skipped depth {m} is not emitted by the run")
        start = self.start
        while start in skipped:
            skipped.discard(start)
            start += self.stride
        _set(self, "start", start)
        _set(self, "skipped", frozenset(skipped))

    def _position(self, depth: int) -> int:
        return (depth - self.start) // self.stride

    def depth(self, j: int) -> int:
        """Depth of the j-th emitted term (1-based)."""
        i = j - 1
        for s in sorted(self.skipped):
            if self._position(s) <= i:
                i += 1
            else:
                break
        return self.start + i * self.stride

    def term(self, j: int) -> FanPoint:
        return FanPoint(self.spoke, self.depth(j))

    def index_of(self, depth: int) -> Optional[int]:
        if depth < self.start or (depth - self.start) % self.stride or depth in self.skipped:
            return None
        return self._position(depth) + 1 - sum(1 for s in self.skipped if s < depth)

    def first_index_at_least(self, threshold: int) -> int:
        """Least j whose emitted depth is at least ``threshold``."""
        if threshold <= self.start:
            return 1
        i = (threshold - self.start + self.stride - 1) // self.stride
        below = sum(1 for s in self.skipped if self._position(s) < i)
        return i - below + 1

    def advanced(self, q: int) -> "SpokeRun":
        """The run with its first ``q`` terms dropped."""
        if q <= 0:
            return self
        start = self.depth(q + 1)
        return SpokeRun(self.spoke, start, self.stride, frozenset(s for s in self.skipped if s > start))

    def to_dict(self) -> Dict[str, Any]:
        return {"run": {"spoke": self.spoke, "start": self.start, "stride": self.stride, "skip": sorted(self.skipped)}}


@dataclass(frozen=True)
class ConstApex:
    """Emits the apex forever."""

    def term(self, j: int) -> FanPoint:
        return APEX

    def advanced(self, q: int) -> "ConstApex":
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"constApex": True}


@dataclass(frozen=True)
class ConstNode:
    """Emits one node forever."""

    spoke: int
    depth: int

    def __post_init__(self) -> None:
        _positive(self.spoke, "node spoke")
        _positive(self.depth, "node depth")

    @property
    def point(self) -> FanPoint:
        return FanPoint(self.spoke, self.depth)

    def term(self, j: int) -> FanPoint:
        return self.point

    def advanced(self, q: int) -> "ConstNode":
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"constNode": {"spoke": self.spoke, "depth": self.depth}}


Channel = Union[SpokeRun, ConstApex, ConstNode]


def channel_from_dict(data: Mapping[str, Any]) -> Channel:
    if "run" in data:
        raw = data["run"]
        return SpokeRun(
            int(raw["spoke"]),
            int(raw.get("start", 1)),
            int(raw.get("stride", 1)),
            frozenset(int(m) for m in raw.get("skip", [])),
        )
    if data.get("constApex"):
        return ConstApex()
    if "constNode" in data:
        raw = data["constNode"]
        return ConstNode(int(raw["spoke"]), int(raw["depth"]))
    raise DescriptorError(f"unknown channel: {data!r}")


@dataclass(frozen=True)
class SequenceDescriptor:
    """A finite prefix followed by round-robin terms of the channels."""

    prefix: Tuple[FanPoint, ...] = ()
    channels: Tuple[Channel, ...] = ()

    def __post_init__(self) -> None:
        _set(self, "prefix", tuple(self.prefix))
        _set(self, "channels", tuple(self.channels))
        if not self.channels:
            raise DescriptorError("a sequence needs at least one channel")
        for ch in self.channels:
            if not isinstance(ch, (SpokeRun, ConstApex, ConstNode)):
                raise DescriptorError(f"not a channel: {ch!r}")

    @staticmethod
    def canonical(n: int) -> "SequenceDescriptor":
        """The canonical spoke sequence T_n(k) = x_{n,k}."""
        return SequenceDescriptor((), (SpokeRun(n),))

    def canonical_spoke(self) -> Optional[int]:
        """n when this descriptor is structurally the canonical T_n."""
        if self.prefix or len(self.channels) != 1:
            return None
        ch = self.channels[0]
        if isinstance(ch, SpokeRun) and ch == SpokeRun(ch.spoke):
            return ch.spoke
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {"prefix": [p.to_dict() for p in self.prefix], "channels": [c.to_dict() for c in self.channels]}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "SequenceDescriptor":
        return SequenceDescriptor(
            tuple(FanPoint.from_dict(p) for p in data.get("prefix", [])),
            tuple(channel_from_dict(c) for c in data.get("channels", [])),
        )


@dataclass(frozen=True)
class IncreasingIndexMap:
    """a(k) = initial[k-1] for k <= len(initial), then a(k) = slope*k + intercept."""

    initial: Tuple[int, ...] = ()
    slope: int = 1
    intercept: int = 0

    def __post_init__(self) -> None:
        _set(self, "initial", tuple(self.initial))
        if self.slope < 1:
            raise NotStrictlyIncreasing(f"affine continuation needs slope >= 1, got {self.slope}")
        values = list(self.initial) + [self(len(self.initial) + 1)]
        if values[0] < 1:
            raise NotStrictlyIncreasing("index maps take positive values")
        for a, b in zip(values, values[1:]):
            if b <= a:
                raise NotStrictlyIncreasing(f"index map is not strictly increasing at {a} -> {b}")

    def __call__(self, k: int) -> int:
        if k <= len(self.initial):
            return self.initial[k - 1]
        return self.slope * k + self.intercept

    def canonical(self) -> "IncreasingIndexMap":
        """Same map with trailing initial values that match the affine part dropped."""
        initial = list(self.initial)
        while initial and initial[-1] == self.slope * len(initial) + self.intercept:
            initial.pop()
        return IncreasingIndexMap(tuple(initial), self.slope, self.intercept)

    def to_dict(self) -> Dict[str, Any]:
        return {"initial": list(self.initial), "slope": self.slope, "intercept": self.intercept}


# ---------------------------------------------------------------------------
# functions


@dataclass(frozen=True)
class FunctionDescriptor:
    """Rational-valued function on S_ω with first-match layers.

    Evaluation order: point overrides, then the apex value at P, then the first
    layer whose set contains the point, then ``default_value``.
    """

    apex_value: Fraction = Fraction(0)
    point_overrides: Tuple[Tuple[FanPoint, Fraction], ...] = ()
    layers: Tuple[Tuple[DefinableSet, Fraction], ...] = ()
    default_value: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self) -> None:
        _set(self, "apex_value", rational_from(self.apex_value))
        _set(self, "default_value", rational_from(self.default_value))
        overrides = {p: rational_from(v) for p, v in dict(self.point_overrides).items()}
        _set(self, "point_overrides", tuple(sorted(overrides.items())))
        _set(self, "layers", tuple((m, rational_from(v)) for m, v in self.layers))

    @staticmethod
    def indicator(m: DefinableSet, name: str = "") -> "FunctionDescriptor":
        return FunctionDescriptor(Fraction(0), (), ((m, Fraction(1)),), Fraction(0), name)

    @staticmethod
    def spoke_indicator(n: int) -> "FunctionDescriptor":
        """1_{B_n}."""
        return FunctionDescriptor.indicator(DefinableSet.spoke(n), name=f"1_B{n}")

    @staticmethod
    def apex_indicator() -> "FunctionDescriptor":
        """Characteristic function of {P}."""
        return FunctionDescriptor(Fraction(1), (), (), Fraction(0), "1_P")

    @staticmethod
    def constant(value: Rational) -> "FunctionDescriptor":
        v = rational_from(value)
        return FunctionDescriptor(v, (), (), v, f"const_{v}")

    def values(self) -> Tuple[Fraction, ...]:
        """Every value the descriptor can take."""
        vals = {self.apex_value, self.default_value}
        vals.update(v for _, v in self.point_overrides)
        vals.update(v for _, v in self.layers)
        return tuple(sorted(vals))

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "apex": rational_to_dict(self.apex_value),
            "default": rational_to_dict(self.default_value),
            "layers": [{"set": m.to_dict(), "value": rational_to_dict(v)} for m, v in self.layers],
            "overrides": [{"point": p.to_dict(), "value": rational_to_dict(v)} for p, v in self.point_overrides],
        }
        if self.name:
            out["name"] = self.name
        return out

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "FunctionDescriptor":
        return FunctionDescriptor(
            apex_value=rational_from(data.get("apex", 0)),
            point_overrides=tuple(
                (FanPoint.from_dict(o["point"]), rational_from(o["value"])) for o in data.get("overrides", [])
            ),
            layers=tuple(
                (DefinableSet.from_dict(layer["set"]), rational_from(layer["value"])) for layer in data.get("layers", [])
            ),
            default_value=rational_from(data.get("default", 0)),
            name=str(data.get("name", "")),
        )


@dataclass(frozen=True)
class ValuePattern:
    """Values of f along a channel: from index ``pattern_start`` on they repeat ``values``."""

    pattern_start: int
    period: int
    values: Tuple[Fraction, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pattern_start": self.pattern_start,
            "period": self.period,
            "values": [rational_to_dict(v) for v in self.values],
        }


# ---------------------------------------------------------------------------
# test sets


@dataclass(frozen=True)
class ExplicitFinite:
    members: Tuple[SequenceDescriptor, ...] = ()

    def __post_init__(self) -> None:
        _set(self, "members", tuple(dict.fromkeys(self.members)))

    def to_dict(self) -> Dict[str, Any]:
        return {"explicit": [m.to_dict() for m in self.members]}


@dataclass(frozen=True)
class CanonicalFan:
    """{T_j : j not excluded} together with finitely many extra sequences."""

    excluded: FrozenSet[int] = frozenset()
    extra: Tuple[SequenceDescriptor, ...] = ()

    def __post_init__(self) -> None:
        excluded = set(self.excluded)
        extra = []
        for seq in dict.fromkeys(self.extra):
            n = seq.canonical_spoke()
            if n is None:
                extra.append(seq)
            else:
                excluded.discard(n)
        for n in excluded:
            _positive(n, "excluded spoke")
        _set(self, "excluded", frozenset(excluded))
        _set(self, "extra", tuple(extra))

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"canonicalFan": {"excluded": sorted(self.excluded)}}
        if self.extra:
            out["canonicalFan"]["extra"] = [s.to_dict() for s in self.extra]
        return out


@dataclass(frozen=True)
class PrefixFamily:
    """A_n(a) (``remove_a`` false) or B_n(a) = A_n(a) minus {a} (``remove_a`` true)."""

    a: SequenceDescriptor
    n: int
    remove_a: bool = False

    def __post_init__(self) -> None:
        _positive(self.n, "prefix length")

    def to_dict(self) -> Dict[str, Any]:
        return {"prefixFamily": {"a": self.a.to_dict(), "n": self.n, "removeA": self.remove_a}}


TestSetDescriptor = Union[ExplicitFinite, CanonicalFan, PrefixFamily]


def testset_from_dict(data: Mapping[str, Any]) -> TestSetDescriptor:
    if "explicit" in data:
        return ExplicitFinite(tuple(SequenceDescriptor.from_dict(m) for m in data["explicit"]))
    if "canonicalFan" in data:
        raw = data["canonicalFan"]
        return CanonicalFan(
            frozenset(int(n) for n in raw.get("excluded", [])),
            tuple(SequenceDescriptor.from_dict(s) for s in raw.get("extra", [])),
        )
    if "prefixFamily" in data:
        raw = data["prefixFamily"]
        return PrefixFamily(SequenceDescriptor.from_dict(raw["a"]), int(raw["n"]), bool(raw.get("removeA", False)))
    raise DescriptorError(f"unknown test set descriptor: {data!r}")


@dataclass(frozen=True)
class ChainDescriptor:
    """Test sets listed from largest to smallest."""

    entries: Tuple[TestSetDescriptor, ...] = ()

    def __post_init__(self) -> None:
        _set(self, "entries", tuple(self.entries))

    def to_dict(self) -> Dict[str, Any]:
        return {"chain": [e.to_dict() for e in self.entries]}


@dataclass(frozen=True)
class FunctionCorpus:
    """The finite fragment of functions a test-set verdict is relative to."""

    functions: Tuple[FunctionDescriptor, ...] = ()
    seed: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _set(self, "functions", tuple(self.functions))

    def with_function(self, f: FunctionDescriptor) -> "FunctionCorpus":
        return FunctionCorpus(self.functions + (f,), self.seed, dict(self.params))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "functions": [f.to_dict() for f in self.functions],
            "seed": self.seed,
            "params": dict(self.params),
        }

    @staticmethod
    def from_dict(data: Any) -> "FunctionCorpus":
        if isinstance(data, list):
            return FunctionCorpus(tuple(FunctionDescriptor.from_dict(f) for f in data))
        return FunctionCorpus(
            tuple(FunctionDescriptor.from_dict(f) for f in data.get("functions", [])),
            data.get("seed"),
            dict(data.get("params", {})),
        )


# ---------------------------------------------------------------------------
# evidence


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable evidence attached to a decision."""

    kind: CertificateKind
    data: Dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Any:
        return self.data[key]

    def to_dict(self) -> Dict[str, Any]:
        from .report import jsonable

        return {"kind": self.kind, **{k: jsonable(v) for k, v in self.data.items()}}


@dataclass(frozen=True)
class Cardinality:
    """Finite(count) or Infinite."""

    count: Optional[int] = None

    @property
    def is_finite(self) -> bool:
        return self.count is not None

    @staticmethod
    def finite(count: int) -> "Cardinality":
        return Cardinality(count)

    @staticmethod
    def infinite() -> "Cardinality":
        return Cardinality(None)

    def __repr__(self) -> str:
        return f"Finite({self.count})" if self.is_finite else "Infinite"

    def to_dict(self) -> Dict[str, Any]:
        if self.is_finite:
            return {"finite": self.count}
        return {"infinite": True}

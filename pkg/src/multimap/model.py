"""The Markov multi-map data model, axiom checks and the JSON spec format."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from .errors import (
    ConditionViolation,
    InvalidMultiMap,
    MalformedRational,
    SpecFormatError,
    UnsortedPartition,
)
from .numbers import IntervalQ, as_fraction, format_rational, parse_rational, root_bounds

A0, A1, A2 = "A0", "A1", "A2"
CLASSES = (A0, A1, A2)

AFFINE = "affine"
MONOMIAL = "monomial"


@dataclass(frozen=True)
class Partition:
    ambient: IntervalQ
    points: tuple

    def __post_init__(self):
        pts = tuple(as_fraction(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ConditionViolation(1, None, "a partition needs at least two points")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise UnsortedPartition(f"partition points must be strictly increasing: {[str(p) for p in pts]}")
        if pts[0] != self.ambient.lo or pts[-1] != self.ambient.hi:
            raise ConditionViolation(
                1, None, f"partition must run from {self.ambient.lo} to {self.ambient.hi}"
            )

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    @property
    def cells(self) -> list[IntervalQ]:
        return [IntervalQ(a, b) for a, b in zip(self.points, self.points[1:])]

    def __contains__(self, x) -> bool:
        return x in self.point_set

    def is_cell(self, iv: IntervalQ) -> bool:
        if iv.lo not in self.point_set or iv.hi not in self.point_set:
            return False
        i = self.points.index(iv.lo)
        return i + 1 < len(self.points) and self.points[i + 1] == iv.hi

    def interior_points(self, iv: IntervalQ) -> list[Fraction]:
        return [p for p in self.points if iv.lo < p < iv.hi]


@dataclass(frozen=True)
class BranchMap:
    """A strictly monotone continuous bijection ``domain -> codomain``.

    Affine branches are ``x -> slope*x + intercept``. Monomial branches are
    ``t -> t**power`` transported onto ``domain x codomain`` (``t`` is the
    relative position in the domain); when ``increasing`` is False the
    codomain is traversed downwards.
    """

    kind: str
    domain: IntervalQ
    codomain: IntervalQ
    slope: Optional[Fraction] = None
    intercept: Optional[Fraction] = None
    power: Optional[int] = None
    increasing: bool = True

    @classmethod
    def affine(cls, slope, intercept, domain: IntervalQ) -> BranchMap:
        slope, intercept = as_fraction(slope), as_fraction(intercept)
        if slope == 0:
            raise ValueError("affine branch with zero slope is not a homeomorphism")
        ends = sorted((slope * domain.lo + intercept, slope * domain.hi + intercept))
        return cls(AFFINE, domain, IntervalQ(*ends), slope=slope, intercept=intercept,
                   increasing=slope > 0)

    @classmethod
    def through(cls, start, end) -> BranchMap:
        """The affine branch whose graph is the segment from ``start`` to ``end``."""
        (x0, y0), (x1, y1) = start, end
        x0, y0, x1, y1 = map(as_fraction, (x0, y0, x1, y1))
        slope = (y1 - y0) / (x1 - x0)
        return cls.affine(slope, y0 - slope * x0, IntervalQ(min(x0, x1), max(x0, x1)))

    @classmethod
    def monomial(cls, power: int, increasing: bool, domain: IntervalQ, codomain: IntervalQ) -> BranchMap:
        if int(power) != power or power < 2:
            raise ValueError("monomial power must be an integer >= 2")
        return cls(MONOMIAL, domain, codomain, power=int(power), increasing=bool(increasing))

    @property
    def is_affine(self) -> bool:
        return self.kind == AFFINE

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        if self.is_affine:
            return self.slope * x + self.intercept
        d, r = self.domain, self.codomain
        t = (x - d.lo) / d.length
        if self.increasing:
            return r.lo + r.length * t ** self.power
        return r.hi - r.length * t ** self.power

    def image(self, iv: IntervalQ) -> IntervalQ:
        a, b = self(iv.lo), self(iv.hi)
        return IntervalQ(min(a, b), max(a, b), iv.exact)

    def _inverse_point(self, y: Fraction) -> tuple[Fraction, Fraction, bool]:
        d, r = self.domain, self.codomain
        s = (y - r.lo) / r.length if self.increasing else (r.hi - y) / r.length
        lo, hi, exact = root_bounds(s, self.power)
        return d.lo + d.length * lo, d.lo + d.length * hi, exact

    def preimage(self, iv: IntervalQ) -> IntervalQ:
        """Inverse image of ``iv`` (assumed inside the codomain).

        Affine preimages are exact. Monomial preimages are rounded outward and
        clipped to the domain, so the result always contains the true set.
        """
        if self.is_affine:
            a = (iv.lo - self.intercept) / self.slope
            b = (iv.hi - self.intercept) / self.slope
            return IntervalQ(min(a, b), max(a, b), iv.exact)
        lo_a, hi_a, ex_a = self._inverse_point(iv.lo)
        lo_b, hi_b, ex_b = self._inverse_point(iv.hi)
        if self.increasing:
            lo, hi = lo_a, hi_b
        else:
            lo, hi = lo_b, hi_a
        lo, hi = max(lo, self.domain.lo), min(hi, self.domain.hi)
        return IntervalQ(lo, hi, iv.exact and ex_a and ex_b)

    def inverse_lipschitz(self):
        """Lipschitz constant of the inverse branch on the whole codomain.

        A Fraction for affine branches; ``math.inf`` for monomials, whose
        inverse has unbounded derivative where ``t**power`` is flat.
        """
        if self.is_affine:
            return 1 / abs(self.slope)
        return math.inf

    def to_json(self) -> dict:
        if self.is_affine:
            return {"kind": AFFINE, "slope": format_rational(self.slope),
                    "intercept": format_rational(self.intercept)}
        return {"kind": MONOMIAL, "power": self.power, "increasing": self.increasing}


@dataclass(frozen=True)
class Symbol:
    id: str
    cls: str
    D: IntervalQ
    R: IntervalQ
    branch: Optional[BranchMap] = None

    @property
    def D0(self) -> tuple[Fraction, Fraction, bool]:
        """Open domain as ``(lo, hi, is_open)``; singletons are ``(p, p, False)``."""
        if self.cls == A0:
            return self.D.lo, self.D.hi, True
        return self.D.lo, self.D.hi, False

    @property
    def R0(self) -> tuple[Fraction, Fraction, bool]:
        if self.cls == A2:
            return self.R.lo, self.R.hi, False
        return self.R.lo, self.R.hi, True

    def forward(self, x) -> Fraction:
        return self.branch(x)

    def preimage(self, iv: IntervalQ) -> IntervalQ:
        """``f_a^{-1}`` applied to an interval inside ``R(a)``."""
        if self.cls == A0:
            return self.branch.preimage(iv)
        return IntervalQ(self.D.lo, self.D.hi, iv.exact)

    def inverse_lipschitz(self):
        if self.cls == A0:
            return self.branch.inverse_lipschitz()
        return Fraction(0)

    # graph membership -------------------------------------------------------

    def in_graph(self, x, y) -> bool:
        if self.cls == A0:
            return self.D.contains(x) and self.branch(x) == y
        return x == self.D.lo and self.R.contains(y)

    def in_open_graph(self, x, y) -> bool:
        if self.cls == A0:
            return self.D.contains_open(x) and self.branch(x) == y
        if self.cls == A1:
            return x == self.D.lo and self.R.contains_open(y)
        return x == self.D.lo and y == self.R.lo

    def to_json(self) -> dict:
        out = {"id": self.id, "class": self.cls, "D": self.D.to_json(), "R": self.R.to_json()}
        if self.branch is not None:
            out["branch"] = self.branch.to_json()
        return out


@dataclass(frozen=True)
class MarkovMultiMap:
    """Partition plus an ordered symbol list.

    Construction only enforces structure (unique ids, branch present exactly
    for A0). The axioms are checked by :func:`check_conditions` and
    :func:`validate`; the graph operations accept slightly more general data
    (e.g. A1 verticals spanning several cells) so they can repair it.
    """

    partition: Partition
    symbols: tuple = field(default_factory=tuple)

    def __post_init__(self):
        syms = tuple(self.symbols)
        object.__setattr__(self, "symbols", syms)
        seen = set()
        for s in syms:
            if s.id in seen:
                raise SpecFormatError(f"duplicate symbol id {s.id!r}")
            seen.add(s.id)
            if s.cls not in CLASSES:
                raise ConditionViolation(2, s.id, f"unknown class {s.cls!r}")
            if (s.branch is not None) != (s.cls == A0):
                raise SpecFormatError(f"symbol {s.id!r}: a branch is required for A0 and forbidden otherwise")

    @property
    def ambient(self) -> IntervalQ:
        return self.partition.ambient

    @property
    def P(self) -> tuple:
        return self.partition.points

    @cached_property
    def ids(self) -> tuple:
        return tuple(s.id for s in self.symbols)

    @cached_property
    def index(self) -> dict:
        return {s.id: i for i, s in enumerate(self.symbols)}

    def __getitem__(self, sid) -> Symbol:
        return self.symbols[self.index[sid]]

    def of_class(self, cls: str) -> list[Symbol]:
        return [s for s in self.symbols if s.cls == cls]

    def with_symbols(self, symbols: Iterable[Symbol]) -> MarkovMultiMap:
        return MarkovMultiMap(self.partition, tuple(symbols))

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "partition": [format_rational(p) for p in self.P],
            "symbols": [s.to_json() for s in self.symbols],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# building from raw descriptions

_TOP_KEYS = {"ambient", "partition", "symbols"}
_SYMBOL_KEYS = {"id", "class", "D", "R", "branch"}
_AFFINE_KEYS = {"kind", "slope", "intercept"}
_MONOMIAL_KEYS = {"kind", "power", "increasing"}


def _reject_unknown(obj, allowed, where):
    if not isinstance(obj, dict):
        raise SpecFormatError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise SpecFormatError(f"{where}: unknown field(s) {sorted(extra)}")
    missing = allowed - set(obj) - {"branch"}
    if missing:
        raise SpecFormatError(f"{where}: missing field(s) {sorted(missing)}")


def _interval(raw, where) -> IntervalQ:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise SpecFormatError(f"{where}: expected [lo, hi]")
    lo, hi = parse_rational(raw[0]), parse_rational(raw[1])
    if lo > hi:
        raise SpecFormatError(f"{where}: lo > hi")
    return IntervalQ(lo, hi)


def _branch(raw, D: IntervalQ, R: IntervalQ, sid) -> BranchMap:
    where = f"symbol {sid!r} branch"
    if not isinstance(raw, dict) or "kind" not in raw:
        raise SpecFormatError(f"{where}: expected an object with 'kind'")
    kind = raw["kind"]
    if kind == AFFINE:
        _reject_unknown(raw, _AFFINE_KEYS, where)
        slope, intercept = parse_rational(raw["slope"]), parse_rational(raw["intercept"])
        if slope == 0:
            raise ConditionViolation(5, sid, "affine branch with zero slope")
        return BranchMap.affine(slope, intercept, D)
    if kind == MONOMIAL:
        _reject_unknown(raw, _MONOMIAL_KEYS, where)
        power, inc = raw["power"], raw["increasing"]
        if not isinstance(power, int) or isinstance(power, bool) or power < 2:
            raise SpecFormatError(f"{where}: power must be an integer >= 2")
        if not isinstance(inc, bool):
            raise SpecFormatError(f"{where}: increasing must be a boolean")
        if D.is_point or R.is_point:
            raise ConditionViolation(5, sid, "monomial branch needs non-degenerate D and R")
        return BranchMap.monomial(power, inc, D, R)
    raise SpecFormatError(f"{where}: unknown kind {kind!r}")


def from_json(raw) -> MarkovMultiMap:
    """Build a MarkovMultiMap from a decoded spec document (no axiom checks)."""
    _reject_unknown(raw, _TOP_KEYS, "spec")
    ambient = _interval(raw["ambient"], "ambient")
    if not isinstance(raw["partition"], list):
        raise SpecFormatError("partition: expected a list")
    partition = Partition(ambient, tuple(parse_rational(p) for p in raw["partition"]))
    if not isinstance(raw["symbols"], list):
        raise SpecFormatError("symbols: expected a list")
    symbols = []
    for i, rs in enumerate(raw["symbols"]):
        _reject_unknown(rs, _SYMBOL_KEYS, f"symbols[{i}]")
        sid = rs["id"]
        if not isinstance(sid, str):
            raise SpecFormatError(f"symbols[{i}]: id must be a string")
        cls = rs["class"]
        if cls not in CLASSES:
            raise ConditionViolation(2, sid, f"unknown class {cls!r}")
        D, R = _interval(rs["D"], f"symbol {sid!r} D"), _interval(rs["R"], f"symbol {sid!r} R")
        branch = None
        if cls == A0:
            if "branch" not in rs:
                raise ConditionViolation(5, sid, "A0 symbol without a branch map")
            branch = _branch(rs["branch"], D, R, sid)
        elif "branch" in rs:
            raise SpecFormatError(f"symbol {sid!r}: only A0 symbols carry a branch")
        symbols.append(Symbol(sid, cls, D, R, branch))
    return MarkovMultiMap(partition, tuple(symbols))


def loads(text: str) -> MarkovMultiMap:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"not JSON: {exc}") from None
    return from_json(raw)


# ---------------------------------------------------------------------------
# axioms


def check_conditions(F: MarkovMultiMap) -> list[ConditionViolation]:
    """Every violated axiom (3)-(6); (1) and (2) are enforced on construction."""
    P = F.partition
    out = []
    for s in F.symbols:
        # (3) domains
        if s.cls == A0:
            if not P.is_cell(s.D):
                out.append(ConditionViolation(3, s.id, f"D = {s.D} is not [p_i, p_i+1]"))
        elif not (s.D.is_point and s.D.lo in P):
            out.append(ConditionViolation(3, s.id, f"D = {s.D} is not a partition point"))
        # (4) ranges
        if s.R.lo not in P or s.R.hi not in P:
            out.append(ConditionViolation(4, s.id, f"R = {s.R} has an endpoint outside P"))
        elif s.cls == A0 and s.R.is_point:
            out.append(ConditionViolation(4, s.id, "A0 range must have u < v"))
        elif s.cls == A1 and (s.R.is_point or P.interior_points(s.R)):
            out.append(ConditionViolation(4, s.id, f"A1 range {s.R} must be a single P-cell"))
        elif s.cls == A2 and not s.R.is_point:
            out.append(ConditionViolation(4, s.id, "A2 range must be a single point"))
        # (5) branches
        if s.cls == A0:
            b = s.branch
            if not b.domain.same_set(s.D):
                out.append(ConditionViolation(5, s.id, "branch domain differs from D"))
            elif not b.image(s.D).same_set(s.R):
                out.append(ConditionViolation(5, s.id, f"branch maps D onto {b.image(s.D)}, not R = {s.R}"))
    # (6) every cell lies in some A0 domain
    covered = {(s.D.lo, s.D.hi) for s in F.symbols if s.cls == A0}
    for cell in P.cells:
        if (cell.lo, cell.hi) not in covered:
            out.append(ConditionViolation(6, None, f"cell {cell} is not covered by any A0 domain"))
    return out


def validate(spec) -> MarkovMultiMap:
    """Parse (if needed) and check all axioms; raise InvalidMultiMap on failure.

    ``spec`` may be a MarkovMultiMap, a decoded dict, or JSON text.
    """
    if isinstance(spec, str):
        F = loads(spec)
    elif isinstance(spec, MarkovMultiMap):
        F = spec
    else:
        F = from_json(spec)
    violations = check_conditions(F)
    if violations:
        raise InvalidMultiMap(violations)
    return F


def normalize_to_unit(F: MarkovMultiMap) -> MarkovMultiMap:
    """Conjugate by the affine map sending the ambient interval onto [0, 1]."""
    lo, w = F.ambient.lo, F.ambient.length
    if lo == 0 and w == 1:
        return F

    def phi(x):
        return (x - lo) / w

    def piv(iv):
        return IntervalQ(phi(iv.lo), phi(iv.hi), iv.exact)

    partition = Partition(IntervalQ(0, 1), tuple(phi(p) for p in F.P))
    symbols = []
    for s in F.symbols:
        D, R = piv(s.D), piv(s.R)
        branch = None
        if s.branch is not None:
            b = s.branch
            if b.is_affine:
                branch = BranchMap.affine(b.slope, (b.slope * lo + b.intercept - lo) / w, D)
            else:
                branch = BranchMap.monomial(b.power, b.increasing, D, R)
        symbols.append(Symbol(s.id, s.cls, D, R, branch))
    return MarkovMultiMap(partition, tuple(symbols))


# convenience constructors used by fixtures and the realization


def segment_symbol(sid, start, end) -> Symbol:
    b = BranchMap.through(start, end)
    return Symbol(sid, A0, b.domain, b.codomain, b)


def vertical_symbol(sid, x, ylo, yhi) -> Symbol:
    return Symbol(sid, A1, IntervalQ.point(x), IntervalQ(ylo, yhi))


def point_symbol(sid, x, y) -> Symbol:
    return Symbol(sid, A2, IntervalQ.point(x), IntervalQ.point(y))


def make_partition(points, ambient=None) -> Partition:
    pts = [as_fraction(p) for p in points]
    if ambient is None:
        ambient = IntervalQ(pts[0], pts[-1])
    return Partition(ambient, tuple(pts))


__all__ = [
    "A0", "A1", "A2", "AFFINE", "MONOMIAL", "BranchMap", "MarkovMultiMap", "Partition",
    "Symbol", "check_conditions", "from_json", "loads", "make_partition", "normalize_to_unit",
    "point_symbol", "segment_symbol", "validate", "vertical_symbol", "MalformedRational",
]

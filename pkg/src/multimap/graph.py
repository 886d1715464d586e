"""Geometry of the graph G(F): primitives, crossing and partition checks,
and the reparametrization that makes a no-crossing map properly parametrized."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import NotNoCrossing, UnsupportedBranchKind
from .model import A0, A1, A2, MarkovMultiMap, Symbol, point_symbol, vertical_symbol
from .numbers import format_rational

SEGMENT, VERTICAL, POINT, CURVE = "segment", "vertical", "point", "curve"


@dataclass(frozen=True)
class GraphPrimitive:
    """Closed piece of G(F) owned by one symbol.

    ``start``/``end`` are the closed endpoints (equal for points). ``curve``
    primitives stand for monomial branches; they are drawable but excluded
    from exact intersection tests.
    """

    kind: str
    owner: str
    start: tuple
    end: tuple

    @property
    def boundary(self) -> list[tuple]:
        if self.kind == POINT:
            return [self.start]
        return [self.start, self.end]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "owner": self.owner,
            "start": [format_rational(c) for c in self.start],
            "end": [format_rational(c) for c in self.end],
        }


def primitive_of(s: Symbol) -> GraphPrimitive:
    if s.cls == A0:
        x0, x1 = s.D.lo, s.D.hi
        kind = SEGMENT if s.branch.is_affine else CURVE
        return GraphPrimitive(kind, s.id, (x0, s.branch(x0)), (x1, s.branch(x1)))
    if s.cls == A1:
        return GraphPrimitive(VERTICAL, s.id, (s.D.lo, s.R.lo), (s.D.lo, s.R.hi))
    return GraphPrimitive(POINT, s.id, (s.D.lo, s.R.lo), (s.D.lo, s.R.lo))


def graph_primitives(F: MarkovMultiMap) -> list[GraphPrimitive]:
    return [primitive_of(s) for s in F.symbols]


def _require_affine(F: MarkovMultiMap):
    for s in F.of_class(A0):
        if not s.branch.is_affine:
            raise UnsupportedBranchKind(f"symbol {s.id!r} has a {s.branch.kind} branch; exact graph tests need affine")


def _open_segments_meet(a: Symbol, b: Symbol) -> Optional[tuple]:
    """A common point of the open graphs of two affine A0 symbols, if any."""
    lo, hi = max(a.D.lo, b.D.lo), min(a.D.hi, b.D.hi)
    if lo >= hi:
        return None
    fa, fb = a.branch, b.branch
    if fa.slope == fb.slope:
        if fa.intercept != fb.intercept:
            return None
        x = (lo + hi) / 2
        return (x, fa(x))
    x = (fb.intercept - fa.intercept) / (fa.slope - fb.slope)
    if lo < x < hi:
        return (x, fa(x))
    return None


def check_no_crossing(F: MarkovMultiMap) -> tuple[bool, Optional[tuple]]:
    """``(True, None)`` or ``(False, (a, b, point))`` for the first crossing pair."""
    _require_affine(F)
    for a, b in combinations(F.of_class(A0), 2):
        hit = _open_segments_meet(a, b)
        if hit is not None:
            return False, (a.id, b.id, hit)
    return True, None


def _open_parts_meet(a: Symbol, b: Symbol) -> Optional[tuple]:
    """A common point of G_0(a) and G_0(b) for affine/vertical/point symbols."""
    if a.cls == A0 and b.cls == A0:
        return _open_segments_meet(a, b)
    if a.cls == A0 or b.cls == A0:
        other = b if a.cls == A0 else a
        seg = a if a.cls == A0 else b
        x = other.D.lo
        if not seg.D.contains_open(x):
            return None
        y = seg.branch(x)
        return (x, y) if other.in_open_graph(x, y) else None
    if a.D.lo != b.D.lo:
        return None
    x = a.D.lo
    if a.cls == A2 and b.cls == A2:
        return (x, a.R.lo) if a.R.lo == b.R.lo else None
    if a.cls == A2 or b.cls == A2:
        pt, vert = (a, b) if a.cls == A2 else (b, a)
        y = pt.R.lo
        return (x, y) if vert.R.contains_open(y) else None
    lo, hi = max(a.R.lo, b.R.lo), min(a.R.hi, b.R.hi)
    return (x, (lo + hi) / 2) if lo < hi else None


@dataclass(frozen=True)
class ParametrizationReport:
    ok: bool
    overlaps: tuple = ()  # (a, b, point)
    uncovered: tuple = ()  # (point, owner)
    multiply_covered: tuple = ()  # (point, covering ids)

    def to_json(self) -> dict:
        def pt(p):
            return [format_rational(c) for c in p]

        return {
            "properly_parametrized": self.ok,
            "overlaps": [{"a": a, "b": b, "point": pt(p)} for a, b, p in self.overlaps],
            "uncovered": [{"point": pt(p), "owner": o} for p, o in self.uncovered],
            "multiply_covered": [{"point": pt(p), "by": list(ids)} for p, ids in self.multiply_covered],
        }


def check_properly_parametrized(F: MarkovMultiMap) -> ParametrizationReport:
    """Do the open parts G_0(a) partition G(F)?

    Checks pairwise disjointness of open parts, then that each boundary point
    of each G(a) lies in exactly one open part.
    """
    _require_affine(F)
    syms = F.symbols
    overlaps = []
    for a, b in combinations(syms, 2):
        hit = _open_parts_meet(a, b)
        if hit is not None:
            overlaps.append((a.id, b.id, hit))
    uncovered, multi = [], []
    seen = set()
    for s in syms:
        for p in primitive_of(s).boundary:
            if p in seen:
                continue
            seen.add(p)
            cover = [t.id for t in syms if t.in_open_graph(*p)]
            if not cover:
                uncovered.append((p, s.id))
            elif len(cover) > 1:
                multi.append((p, tuple(cover)))
    ok = not (overlaps or uncovered or multi)
    return ParametrizationReport(ok, tuple(overlaps), tuple(uncovered), tuple(multi))


def in_graph(F: MarkovMultiMap, x, y) -> bool:
    return any(s.in_graph(x, y) for s in F.symbols)


def reparametrize(F: MarkovMultiMap) -> MarkovMultiMap:
    """Properly parametrized map with the same graph.

    A0 symbols are kept. Every vertical is cut into P-cell pieces, and every
    point of (P x P) on the graph gets its own A2 symbol. Vertical pieces are
    listed in (x, y) order, then points in (x, y) order.
    """
    ok, witness = check_no_crossing(F)
    if not ok:
        raise NotNoCrossing(f"open graphs of {witness[0]!r} and {witness[1]!r} meet at {witness[2]}")
    P = F.P
    keep = F.of_class(A0)
    pieces = set()
    for s in F.of_class(A1):
        for lo, hi in zip(P, P[1:]):
            if s.R.lo <= lo and hi <= s.R.hi:
                pieces.add((s.D.lo, lo, hi))
    verticals = [
        vertical_symbol(f"V({format_rational(x)};{format_rational(lo)},{format_rational(hi)})", x, lo, hi)
        for x, lo, hi in sorted(pieces)
    ]
    points = [
        point_symbol(f"P({format_rational(x)},{format_rational(y)})", x, y)
        for x in P
        for y in P
        if in_graph(F, x, y)
    ]
    taken = {s.id for s in keep}
    for s in verticals + points:
        if s.id in taken:
            raise ValueError(f"generated id {s.id!r} collides with an existing symbol")
    return F.with_symbols(keep + verticals + points)


def point_set_equal(F: MarkovMultiMap, G: MarkovMultiMap, extra_points=()) -> bool:
    """Exact membership comparison of G(F) and G(G) on a finite probe set.

    Probes are all primitive endpoints of both maps, segment midpoints, and
    midpoints of every P-cell on each vertical line of either map.
    """
    probes = set(extra_points)
    for H in (F, G):
        for s in H.symbols:
            prim = primitive_of(s)
            probes.update(prim.boundary)
            (x0, y0), (x1, y1) = prim.start, prim.end
            probes.add(((x0 + x1) / 2, (y0 + y1) / 2))
            if s.cls == A1:
                for lo, hi in zip(H.P, H.P[1:]):
                    probes.add((s.D.lo, (lo + hi) / 2))
                    probes.add((s.D.lo, lo + (hi - lo) / 3))
    return all(in_graph(F, *p) == in_graph(G, *p) for p in probes)

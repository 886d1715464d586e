"""Finite trajectories of a multi-map and their symbolic labels."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import LengthMismatch, NoOptions, NotATrajectory, NotProperlyParametrized
from .graph import check_properly_parametrized, in_graph
from .model import A0, A1, MarkovMultiMap
from .numbers import IntervalQ, as_fraction, format_rational
from .symbolic import AdjacencyMatrix, build_matrix, is_admissible

# A1 moves are drawn from rationals with at most this denominator.
GRID_DENOMINATOR = 64


@dataclass(frozen=True)
class Move:
    symbol: str
    kind: str  # "value" | "range" | "point"
    value: Optional[Fraction] = None
    range: Optional[IntervalQ] = None

    def to_json(self) -> dict:
        out = {"symbol": self.symbol, "kind": self.kind}
        if self.value is not None:
            out["value"] = format_rational(self.value)
        if self.range is not None:
            out["range"] = self.range.to_json()
        return out


@dataclass(frozen=True)
class FiniteTrajectory:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_fraction(p) for p in self.points))

    def __len__(self):
        return len(self.points)

    def to_json(self) -> list:
        return [format_rational(p) for p in self.points]


@dataclass(frozen=True)
class LabeledTrajectory:
    points: FiniteTrajectory
    word: tuple
    in_T: bool
    in_S: bool

    def to_json(self) -> dict:
        return {"points": self.points.to_json(), "word": list(self.word), "in_T": self.in_T, "in_S": self.in_S}


def trajectory(F: MarkovMultiMap, points: Sequence) -> FiniteTrajectory:
    """Wrap ``points`` after checking each consecutive pair lies on G(F)."""
    traj = FiniteTrajectory(points)
    for n, (x, y) in enumerate(zip(traj.points, traj.points[1:])):
        if not in_graph(F, x, y):
            raise NotATrajectory(f"step {n}: ({x}, {y}) is not on the graph")
    return traj


def step_options(F: MarkovMultiMap, x) -> list[Move]:
    x = as_fraction(x)
    if not F.ambient.contains(x):
        raise ValueError(f"{x} is outside the ambient interval {F.ambient}")
    out = []
    for s in F.symbols:
        if not s.D.contains(x):
            continue
        if s.cls == A0:
            out.append(Move(s.id, "value", value=s.forward(x)))
        elif s.cls == A1:
            out.append(Move(s.id, "range", range=s.R))
        else:
            out.append(Move(s.id, "point", value=s.R.lo))
    if not out:
        raise NoOptions(f"no symbol has {x} in its domain")
    return out


@lru_cache(maxsize=256)
def _grid(lo: Fraction, hi: Fraction, max_den: int = GRID_DENOMINATOR) -> tuple:
    pts = set()
    for q in range(1, max_den + 1):
        start = (lo.numerator * q) // lo.denominator + 1
        p = start
        while Fraction(p, q) < hi:
            pts.add(Fraction(p, q))
            p += 1
    return tuple(sorted(pts))


def sample_trajectory(F: MarkovMultiMap, x0, length: int, seed: int = 0) -> FiniteTrajectory:
    """``length`` forward steps from ``x0``, each choosing uniformly among options."""
    rng = random.Random(seed)
    x = as_fraction(x0)
    points = [x]
    for _ in range(length):
        move = rng.choice(step_options(F, x))
        if move.kind == "range":
            x = rng.choice(_grid(move.range.lo, move.range.hi))
        else:
            x = move.value
        points.append(x)
    return FiniteTrajectory(points)


def _open_label(F: MarkovMultiMap, x, y) -> list[str]:
    return [s.id for s in F.symbols if s.in_open_graph(x, y)]


def label_special(F: MarkovMultiMap, traj, check: bool = True) -> LabeledTrajectory:
    """The unique word b with each step in the open graph of b_n."""
    if check and not check_properly_parametrized(F).ok:
        raise NotProperlyParametrized("labeling needs a properly parametrized map")
    traj = traj if isinstance(traj, FiniteTrajectory) else FiniteTrajectory(traj)
    word = []
    for n, (x, y) in enumerate(zip(traj.points, traj.points[1:])):
        hits = _open_label(F, x, y)
        if not hits:
            raise NotATrajectory(f"step {n}: ({x}, {y}) is not on the graph")
        if len(hits) > 1:
            raise NotProperlyParametrized(f"step {n}: ({x}, {y}) lies in several open parts {hits}")
        word.append(hits[0])
    return LabeledTrajectory(traj, tuple(word), True, True)


def check_labeled(F: MarkovMultiMap, points, word, M: Optional[AdjacencyMatrix] = None) -> dict:
    """Membership of ``(points, word)`` in T_m (closed graphs) and S_m (open graphs)."""
    pts = [as_fraction(p) for p in points]
    word = tuple(word)
    if len(word) != len(pts) - 1:
        raise LengthMismatch(f"{len(pts)} points need a word of length {len(pts) - 1}, got {len(word)}")
    M = build_matrix(F) if M is None else M
    in_lang = is_admissible(M, word) if word else True
    steps_T = [F[b].in_graph(x, y) for b, x, y in zip(word, pts, pts[1:])] if in_lang else []
    steps_S = [F[b].in_open_graph(x, y) for b, x, y in zip(word, pts, pts[1:])] if in_lang else []
    return {
        "in_language": in_lang,
        "in_T": in_lang and all(steps_T),
        "in_S": in_lang and all(steps_S),
        "steps_T": steps_T,
        "steps_S": steps_S,
    }

"""Build a multi-map whose SFT has the entropy of a given irreducible matrix.

For an ``n x n`` matrix the map lives on ``[1, n + 2]`` with partition step
1/2. Entry ``(i, j) = 1`` becomes the diagonal of the cell
``[i, i+1/2] x [j, j+1/2]``; the two adjacent ones ``(1, k), (1, k+1)`` of
the first row are merged into a single slope-3 line from ``(1, k)`` to
``(3/2, k + 3/2)``. Ramps onto the top strip and two diagonals in the corner
make the map total, and every line endpoint becomes a point symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .dynamics import IN_F, ClassFVerdict, certify_class_F
from .errors import NotIrreducible, VerificationFailure, ZeroEntropy
from .graph import check_properly_parametrized, graph_primitives
from .model import A0, A1, MarkovMultiMap, check_conditions, make_partition, point_symbol, segment_symbol
from .numbers import format_rational
from .symbolic import TYPE_I, AdjacencyMatrix, build_matrix, decompose, entropy, is_irreducible

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RealizationOutput:
    multimap: MarkovMultiMap
    provenance: dict  # symbol id -> {"role": ..., ...}
    permutation: tuple  # permutation[new] = old, 0-based
    k: int  # 1-based column of the merged pair in the permuted matrix
    permuted: AdjacencyMatrix

    @property
    def c0(self) -> tuple:
        return tuple(sid for sid, p in self.provenance.items() if p["role"] in ("C0", "C0-merged"))

    @property
    def merged(self) -> str:
        return next(sid for sid, p in self.provenance.items() if p["role"] == "C0-merged")

    def to_json(self) -> dict:
        return {
            "multimap": self.multimap.to_json(),
            "provenance": self.provenance,
            "permutation": list(self.permutation),
            "k": self.k,
        }


def choose_permutation(rows: np.ndarray) -> tuple[list[int], int]:
    """Simultaneous permutation bringing two ones into adjacent columns of row 1.

    Takes the lowest row with two ones and its two lowest one-columns, then
    swaps them into place one transposition at a time. Returns ``(order, k)``
    with ``order[new] = old`` (0-based) and ``k`` the 1-based merged column.
    """
    n = rows.shape[0]
    r = next((i for i in range(n) if rows[i].sum() >= 2), None)
    if r is None:
        raise ZeroEntropy("no row with two ones: the SFT has zero entropy")
    c1, c2 = [int(j) for j in np.flatnonzero(rows[r])[:2]]
    if r == c1:
        targets, k = [(r, 0), (c2, 1)], 1
    elif r == c2:
        targets, k = [(r, 0), (c1, 1)], 1
    else:
        targets, k = [(r, 0), (c1, 1), (c2, 2)], 2
    order = list(range(n))
    for old, new in targets:
        cur = order.index(old)
        if cur != new:
            order[cur], order[new] = order[new], order[cur]
    return order, k


def _pt_id(x, y) -> str:
    return f"p({format_rational(x)},{format_rational(y)})"


def realize(M) -> RealizationOutput:
    """Markov multi-map on [1, n+2] realizing the entropy of ``M``."""
    if not isinstance(M, AdjacencyMatrix):
        M = AdjacencyMatrix(tuple(str(i + 1) for i in range(len(M))), np.asarray(M))
    if not is_irreducible(M):
        raise NotIrreducible("the matrix is not irreducible")
    order, k = choose_permutation(M.entries)
    Mp = M.permuted(order)
    A = Mp.entries
    n = Mp.size
    top, end = Fraction(n) + Fraction(3, 2), Fraction(n + 2)

    lines = []  # (id, start, end, provenance)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if not A[i - 1, j - 1]:
                continue
            if i == 1 and j == k + 1:
                continue
            if i == 1 and j == k:
                lines.append((f"m1.{k}+{k + 1}", (1, k), (1 + HALF, k + Fraction(3, 2)),
                              {"role": "C0-merged", "entries": [[1, k], [1, k + 1]]}))
            else:
                lines.append((f"m{i}.{j}", (i, j), (i + HALF, j + HALF), {"role": "C0", "entry": [i, j]}))
    for i in range(1, n + 1):
        lines.append((f"r{i}", (i + HALF, top), (i + 1, end), {"role": "B0-ramp", "i": i}))
    lines.append(("zL", (n + 1, top), (top, end), {"role": "B0-final-left"}))
    lines.append(("zR", (top, top), (end, end), {"role": "B0-final-right"}))

    symbols, provenance = [], {}
    for sid, a, b, prov in lines:
        symbols.append(segment_symbol(sid, a, b))
        provenance[sid] = prov
    for role, pick in (("C2", 1), ("B2", 2)):
        for sid, *ends, _ in lines:
            x, y = ends[pick - 1]
            pid = _pt_id(x, y)
            if pid in provenance:
                continue
            symbols.append(point_symbol(pid, x, y))
            provenance[pid] = {"role": role, "owner": sid}

    points = [1 + Fraction(m, 2) for m in range(2 * n + 3)]
    F = MarkovMultiMap(make_partition(points), tuple(symbols))
    return RealizationOutput(F, provenance, tuple(order), k, Mp)


@dataclass(frozen=True)
class RealizationReport:
    input_entropy: float
    output_sft_entropy: float
    c0_component_entropy: float
    class_f_verdict: ClassFVerdict
    figure_segments: tuple
    tolerance: float

    def to_json(self) -> dict:
        return {
            "input_entropy": self.input_entropy,
            "output_sft_entropy": self.output_sft_entropy,
            "c0_component_entropy": self.c0_component_entropy,
            "tolerance": self.tolerance,
            "class_f_status": self.class_f_verdict.status,
            "class_f": self.class_f_verdict.to_json(),
            "figure_segments": [p.to_json() for p in self.figure_segments],
        }


def verify_realization(M, out: RealizationOutput, tol: float = 1e-6,
                       depth: Optional[int] = None) -> RealizationReport:
    """Re-derive the output's SFT and check every claim the construction makes."""
    if not isinstance(M, AdjacencyMatrix):
        M = AdjacencyMatrix(tuple(str(i + 1) for i in range(len(M))), np.asarray(M))
    F = out.multimap

    def require(cond, msg):
        if not cond:
            raise VerificationFailure(msg)

    require(not check_conditions(F), "output is not a valid Markov multi-map")
    require(not F.of_class(A1), "output has vertical symbols")
    ones = int(out.permuted.entries.sum())
    require(len(out.c0) == ones - 1, f"|C0| = {len(out.c0)}, expected {ones - 1}")
    require(check_properly_parametrized(F).ok, "output is not properly parametrized")

    OM = build_matrix(F)
    dec = decompose(OM)
    comp = dec.containing(out.merged)
    require(comp is not None and set(comp.symbols) == set(out.c0),
            "C0 symbols do not form one irreducible component")
    require(comp.kind == TYPE_I, f"C0 component has type {comp.kind}, expected I")

    h_in = entropy(M)
    h_c0 = entropy(OM, comp.symbols)
    h_all = entropy(OM)
    require(abs(h_in - h_c0) <= tol, f"entropy mismatch: input {h_in}, C0 {h_c0}")
    for other in dec.components:
        require(other.entropy <= h_c0 + tol,
                f"component {list(other.symbols)} has entropy {other.entropy} > C0 entropy {h_c0}")
    require(abs(h_all - h_c0) <= tol, f"full SFT entropy {h_all} differs from C0 entropy {h_c0}")

    if depth is None:
        depth = max(8, M.size + 2)
    verdict = certify_class_F(F, depth, depth)
    require(verdict.status == IN_F, f"class-F verdict is {verdict.status}: {list(verdict.reasons)}")
    finding = next(f for f in verdict.findings if f.component.symbols == comp.symbols)
    require(finding.coding is not None and finding.coding.word == (out.merged,),
            "expected the merged line to be the coding word")

    segments = tuple(p for p in graph_primitives(F) if F[p.owner].cls == A0)
    return RealizationReport(h_in, h_all, h_c0, verdict, segments, tol)


def figure_coordinates(out: RealizationOutput) -> list[tuple]:
    """Segments as ``((x0, y0), (x1, y1))`` in symbol order."""
    return [(p.start, p.end) for p in graph_primitives(out.multimap) if p.kind == "segment"]


__all__ = ["RealizationOutput", "RealizationReport", "choose_permutation", "figure_coordinates",
           "realize", "verify_realization"]

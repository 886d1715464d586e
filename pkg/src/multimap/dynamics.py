"""Nested intervals, coding/avoiding word certificates and the class-F verdict.

Certification is sound but incomplete: a word is only accepted when one of a
handful of finite, exactly checkable rules applies, and anything the search
cannot settle is reported as ``unknown``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import ExplosionGuard, NotAdmissible, UnsupportedBranchKind
from .graph import check_properly_parametrized
from .model import A0, MarkovMultiMap
from .numbers import IntervalQ, format_rational
from .symbolic import (
    TYPE_I,
    TYPE_III,
    AdjacencyMatrix,
    Component,
    build_matrix,
    decompose,
    is_admissible,
    word_cap,
)

CODING, AVOIDING = "coding", "avoiding"

RULE_A1A2 = "contains-A1A2"
RULE_CONTRACTING = "contracting-word-in-nonexpanding-component"
RULE_BLANKET = "uniform-expansion-blanket"
RULE_DISJOINT = "exact-interval-disjoint-from-P"
RULE_TYPE_III = "typeIII-A0-into-A1A2"

IN_F, NOT_IN_F, UNKNOWN = "in_F", "not_in_F", "unknown"

DEFAULT_DEPTH = 8


def _json_value(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, IntervalQ):
        return {"interval": v.to_json(), "exact": v.exact}
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


@dataclass(frozen=True)
class WordCertificate:
    word: tuple
    kind: str
    rule: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "kind": self.kind,
            "rule": self.rule,
            "evidence": {k: _json_value(v) for k, v in self.evidence.items()},
        }


def _symbols_of(F: MarkovMultiMap, C) -> tuple:
    if C is None:
        return F.ids
    if isinstance(C, Component):
        return C.symbols
    return tuple(C)


# ---------------------------------------------------------------------------
# nested intervals


def interval_of_word(F: MarkovMultiMap, word: Sequence, M: Optional[AdjacencyMatrix] = None) -> IntervalQ:
    """I_u: pull D(last symbol) back through the inverse branches of the others."""
    word = tuple(word)
    if not word:
        raise NotAdmissible("empty word")
    M = build_matrix(F) if M is None else M
    if not is_admissible(M, word):
        raise NotAdmissible(f"word {list(word)} is not admissible")
    iv = F[word[-1]].D
    for a in reversed(word[:-1]):
        iv = F[a].preimage(iv)
    return iv


def _predecessor_lists(M: AdjacencyMatrix, syms: tuple) -> tuple[list, list]:
    """Predecessor lists restricted to ``syms``, in alphabet order."""
    order = sorted(syms, key=M.index)
    pos = {a: i for i, a in enumerate(order)}
    preds = [[] for _ in order]
    for a in order:
        for b in M.successors(a):
            if b in pos:
                preds[pos[b]].append(pos[a])
    return order, preds


def interval_levels(
    F: MarkovMultiMap, C, max_len: int, M: Optional[AdjacencyMatrix] = None, cap: Optional[int] = None
) -> Iterator[dict]:
    """Yield, for word lengths 1, 2, ..., ``max_len``, the map
    ``(first symbol, I_u endpoints) -> (lexicographically least word, I_u)``
    over all words of that length in L(C).

    Words sharing a first symbol and an interval have identical left
    extensions, so keeping one representative per state is exhaustive.
    """
    M = build_matrix(F) if M is None else M
    cap = word_cap() if cap is None else cap
    order, preds = _predecessor_lists(M, _symbols_of(F, C))
    syms = [F[a] for a in order]
    level = {}
    for i, s in enumerate(syms):
        level[(i, s.D.lo, s.D.hi)] = ((i,), s.D)
    for _ in range(max_len):
        yield {k: (tuple(order[i] for i in w), iv) for k, (w, iv) in level.items()}
        nxt: dict = {}
        for (b, _, _), (w, iv) in level.items():
            for a in preds[b]:
                piv = syms[a].preimage(iv)
                key = (a, piv.lo, piv.hi)
                cand = (a,) + w
                old = nxt.get(key)
                if old is None:
                    nxt[key] = (cand, piv)
                else:
                    keep = min(old[0], cand)
                    nxt[key] = (keep, IntervalQ(piv.lo, piv.hi, old[1].exact and piv.exact))
                if len(nxt) > cap:
                    raise ExplosionGuard(len(nxt), cap)
        level = nxt
        if not level:
            return


def _meets_partition(iv: IntervalQ, P: tuple) -> bool:
    i = bisect.bisect_left(P, iv.lo)
    return i < len(P) and P[i] <= iv.hi


# ---------------------------------------------------------------------------
# avoiding words


def find_avoiding_word(
    F: MarkovMultiMap, C, max_len: int = DEFAULT_DEPTH, M: Optional[AdjacencyMatrix] = None
) -> Optional[WordCertificate]:
    """First avoiding word in L_n(C), n <= max_len, or None.

    Type III components get the two-letter word (A0 symbol, A1/A2 symbol)
    straight away; otherwise words are searched by length, then
    lexicographically, for an I_u that misses every partition point.
    """
    M = build_matrix(F) if M is None else M
    syms = sorted(_symbols_of(F, C), key=M.index)
    P = F.P
    kind = C.kind if isinstance(C, Component) else None
    if kind == TYPE_III:
        member = set(syms)
        for a in syms:
            if F[a].cls != A0:
                continue
            for b in M.successors(a):
                if b in member and F[b].cls != A0:
                    iv = interval_of_word(F, (a, b), M)
                    if not _meets_partition(iv, P):
                        return WordCertificate((a, b), AVOIDING, RULE_TYPE_III, {"I": iv})
    for level in interval_levels(F, syms, max_len + 1, M):
        hits = [(w, iv) for w, iv in level.values() if not _meets_partition(iv, P)]
        if hits:
            w, iv = min(hits, key=lambda h: [M.index(a) for a in h[0]])
            return WordCertificate(w, AVOIDING, RULE_DISJOINT, {"I": iv})
    return None


# ---------------------------------------------------------------------------
# expansion and coding


@dataclass(frozen=True)
class ExpansionReport:
    N: int
    max_inverse_product: object  # Fraction or math.inf
    uniformly_expanding: bool

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "max_inverse_product": _json_value(self.max_inverse_product),
            "uniformly_expanding": self.uniformly_expanding,
        }


def check_uniformly_expanding(
    F: MarkovMultiMap, C, N: int, M: Optional[AdjacencyMatrix] = None
) -> ExpansionReport:
    """Largest derivative bound of f_{a_0}^-1 o ... o f_{a_{N-1}}^-1 over words
    a_0 ... a_N in L_N(C); expanding iff that bound is < 1.

    Affine branches give the exact rational product of inverse slopes.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    M = build_matrix(F) if M is None else M
    syms = sorted(_symbols_of(F, C), key=M.index)
    member = set(syms)
    lip = {a: F[a].inverse_lipschitz() for a in syms}
    succ = {a: [b for b in M.successors(a) if b in member] for a in syms}
    # best[a]: max product over paths of m symbols starting at a that extend
    # to a further symbol inside C
    best = {a: (lip[a] if succ[a] else None) for a in syms}
    for _ in range(N - 1):
        new = {}
        for a in syms:
            tails = [best[b] for b in succ[a] if best[b] is not None]
            new[a] = lip[a] * max(tails) if tails else None
        best = new
    vals = [v for v in best.values() if v is not None]
    top = max(vals) if vals else Fraction(0)
    return ExpansionReport(N, top, top < 1)


def find_coding_certificate(
    F: MarkovMultiMap, C, max_len: int = DEFAULT_DEPTH, M: Optional[AdjacencyMatrix] = None
) -> Optional[WordCertificate]:
    """First applicable coding certificate, trying in order:

    * a symbol of A1 or A2 in C (any occurrence pins I_u to a point);
    * C has no expanding inverse branch and a single symbol contracts;
    * C is uniformly expanding at some N <= max_len (every word codes).
    """
    M = build_matrix(F) if M is None else M
    syms = sorted(_symbols_of(F, C), key=M.index)
    for a in syms:
        if F[a].cls != A0:
            return WordCertificate((a,), CODING, RULE_A1A2, {"class": F[a].cls})
    lips = [F[a].inverse_lipschitz() for a in syms]
    if all(x <= 1 for x in lips):
        for a, x in zip(syms, lips):
            if x < 1:
                return WordCertificate((a,), CODING, RULE_CONTRACTING, {"inverse_lipschitz_product": x})
    for N in range(1, max_len + 1):
        rep = check_uniformly_expanding(F, syms, N, M)
        if rep.uniformly_expanding:
            return WordCertificate(
                (), CODING, RULE_BLANKET, {"N": N, "max_inverse_product": rep.max_inverse_product}
            )
    return None


@dataclass(frozen=True)
class CodesReport:
    """Largest |I_u| over words of each length 1..depth in L(C)."""

    max_lengths: tuple
    verdict: str  # consistent-with-coding | stagnant | inconclusive

    def to_json(self) -> dict:
        return {
            "max_lengths": [
                {"word_length": m, "max_length": format_rational(v)} for m, v in enumerate(self.max_lengths, 1)
            ],
            "verdict": self.verdict,
        }


def check_codes_for_points(
    F: MarkovMultiMap, C, depth: int, M: Optional[AdjacencyMatrix] = None
) -> CodesReport:
    table = []
    for level in interval_levels(F, C, depth, M):
        table.append(max(iv.length for _, iv in level.values()))
    cells = {c.length for c in F.partition.cells}
    if len(table) >= 2 and table[-1] < table[-2]:
        verdict = "consistent-with-coding"
    elif table and all(v == table[0] for v in table) and table[0] in cells:
        verdict = "stagnant"
    else:
        verdict = "inconclusive"
    return CodesReport(tuple(table), verdict)


# ---------------------------------------------------------------------------
# class F


@dataclass(frozen=True)
class ComponentFinding:
    component: Component
    coding: Optional[WordCertificate]
    avoiding: Optional[WordCertificate]
    avoiding_required: bool
    codes_for_points: Optional[CodesReport] = None

    @property
    def satisfied(self) -> bool:
        if not self.component.positive_entropy:
            return True
        return self.coding is not None and (self.avoiding is not None or not self.avoiding_required)

    def to_json(self) -> dict:
        out = {
            "component": self.component.to_json(),
            "coding": self.coding.to_json() if self.coding else None,
            "avoiding": self.avoiding.to_json() if self.avoiding else None,
            "avoiding_required": self.avoiding_required,
            "satisfied": self.satisfied,
        }
        if self.codes_for_points is not None:
            out["codes_for_points"] = self.codes_for_points.to_json()
        return out


@dataclass(frozen=True)
class ClassFVerdict:
    status: str
    findings: tuple
    properly_parametrized: Optional[bool]
    parametrization: Optional[dict]
    positive_entropy: bool
    coding_depth: int
    avoiding_depth: int
    reasons: tuple = ()

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reasons": list(self.reasons),
            "properly_parametrized": self.properly_parametrized,
            "parametrization": self.parametrization,
            "positive_entropy": self.positive_entropy,
            "depths": {"coding": self.coding_depth, "avoiding": self.avoiding_depth},
            "components": [f.to_json() for f in self.findings],
        }


def certify_class_F(
    F: MarkovMultiMap, coding_depth: int = DEFAULT_DEPTH, avoiding_depth: int = DEFAULT_DEPTH
) -> ClassFVerdict:
    M = build_matrix(F)
    dec = decompose(M)
    reasons = []
    try:
        rep = check_properly_parametrized(F)
        proper, param = rep.ok, rep.to_json()
        if not proper:
            reasons.append("not properly parametrized")
    except UnsupportedBranchKind as exc:
        proper, param = None, None
        reasons.append(f"proper parametrization undecided: {exc}")
    positive = any(c.positive_entropy for c in dec.components)
    if not positive:
        reasons.append("the associated SFT has zero entropy")

    findings = []
    for comp in dec.components:
        if not comp.positive_entropy:
            findings.append(ComponentFinding(comp, None, None, False))
            continue
        need_avoid = comp.kind == TYPE_I
        coding = find_coding_certificate(F, comp, coding_depth, M)
        avoiding = find_avoiding_word(F, comp, avoiding_depth, M)
        codes = None
        if coding is None or (need_avoid and avoiding is None):
            codes = check_codes_for_points(F, comp, coding_depth, M)
            if coding is None:
                reasons.append(f"no coding certificate for component {list(comp.symbols)} up to depth {coding_depth}")
            if need_avoid and avoiding is None:
                reasons.append(
                    f"no avoiding word for Type I component {list(comp.symbols)} up to depth {avoiding_depth}"
                )
        findings.append(ComponentFinding(comp, coding, avoiding, need_avoid, codes))

    if proper is False or not positive:
        status = NOT_IN_F
    elif proper and all(f.satisfied for f in findings):
        status = IN_F
    else:
        status = UNKNOWN
    return ClassFVerdict(status, tuple(findings), proper, param, positive, coding_depth, avoiding_depth, tuple(reasons))


__all__ = [
    "AVOIDING", "CODING", "ClassFVerdict", "CodesReport", "ComponentFinding", "ExpansionReport",
    "IN_F", "NOT_IN_F", "UNKNOWN", "WordCertificate", "certify_class_F", "check_codes_for_points",
    "check_uniformly_expanding", "find_avoiding_word", "find_coding_certificate", "interval_levels",
    "interval_of_word",
]

"""The shift of finite type attached to a multi-map.

Transition matrix, irreducible components and their types, word
enumeration, and topological entropy (natural log of the Perron root).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import ExplosionGuard, NonConvergence, SpecFormatError
from .model import A0, A2, MarkovMultiMap

TYPE_I, TYPE_II, TYPE_III = "I", "II", "III"

DEFAULT_WORD_CAP = 2_000_000
ENTROPY_TOL = 1e-12


def word_cap() -> int:
    raw = os.environ.get("MULTIMAP_WORD_CAP")
    return int(raw) if raw else DEFAULT_WORD_CAP


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    """0/1 transition matrix indexed by an ordered alphabet.

    ``classes`` records A0/A1/A2 per symbol when the matrix came from a
    multi-map; bare matrices default to all-A0.
    """

    alphabet: tuple
    entries: np.ndarray
    classes: Optional[tuple] = None

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=np.int64)
        n = len(self.alphabet)
        if ent.shape != (n, n):
            raise SpecFormatError(f"matrix shape {ent.shape} does not match alphabet of size {n}")
        if not np.isin(ent, (0, 1)).all():
            raise SpecFormatError("matrix entries must be 0 or 1")
        if len(set(self.alphabet)) != n:
            raise SpecFormatError("alphabet entries must be unique")
        ent.setflags(write=False)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "entries", ent)
        if self.classes is None:
            object.__setattr__(self, "classes", (A0,) * n)

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def index(self, sid) -> int:
        return self.alphabet.index(sid)

    def __eq__(self, other):
        return (
            isinstance(other, AdjacencyMatrix)
            and self.alphabet == other.alphabet
            and np.array_equal(self.entries, other.entries)
        )

    def __call__(self, a, b) -> int:
        return int(self.entries[self.index(a), self.index(b)])

    def successors(self, a) -> list:
        row = self.entries[self.index(a)]
        return [self.alphabet[j] for j in np.flatnonzero(row)]

    def restrict(self, symbols: Iterable) -> AdjacencyMatrix:
        keep = set(symbols)
        idx = [i for i, a in enumerate(self.alphabet) if a in keep]
        return AdjacencyMatrix(
            tuple(self.alphabet[i] for i in idx),
            self.entries[np.ix_(idx, idx)],
            tuple(self.classes[i] for i in idx),
        )

    def permuted(self, order: Sequence[int]) -> AdjacencyMatrix:
        """Simultaneous row/column permutation; ``order[new] = old``."""
        order = list(order)
        return AdjacencyMatrix(
            tuple(self.alphabet[i] for i in order),
            self.entries[np.ix_(order, order)],
            tuple(self.classes[i] for i in order),
        )

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "rows": self.entries.tolist()}

    @classmethod
    def from_json(cls, raw) -> AdjacencyMatrix:
        if not isinstance(raw, dict) or "rows" not in raw:
            raise SpecFormatError("matrix document needs 'rows'")
        extra = set(raw) - {"alphabet", "rows"}
        if extra:
            raise SpecFormatError(f"matrix document: unknown field(s) {sorted(extra)}")
        rows = raw["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise SpecFormatError("rows must be a list of lists")
        alphabet = raw.get("alphabet") or [str(i + 1) for i in range(len(rows))]
        if any(len(r) != len(rows) for r in rows):
            raise SpecFormatError("matrix must be square")
        return cls(tuple(str(a) for a in alphabet), np.array(rows, dtype=np.int64).reshape(len(rows), len(rows)))


def build_matrix(F: MarkovMultiMap) -> AdjacencyMatrix:
    """M(a, b) = 1 iff the open domain of b lies inside the open range of a."""
    syms = F.symbols
    n = len(syms)
    ent = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(syms):
        u, v = a.R.lo, a.R.hi
        for j, b in enumerate(syms):
            if a.cls == A2:
                hit = b.cls != A0 and b.D.lo == u
            elif b.cls == A0:
                hit = u <= b.D.lo and b.D.hi <= v
            else:
                hit = u < b.D.lo < v
            ent[i, j] = hit
    return AdjacencyMatrix(F.ids, ent, tuple(s.cls for s in syms))


# ---------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class Component:
    symbols: tuple
    kind: str
    positive_entropy: bool
    entropy: float

    def to_json(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "type": self.kind,
            "positive_entropy": self.positive_entropy,
            "entropy": self.entropy,
            "tolerance": ENTROPY_TOL,
        }


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple
    wandering_symbols: tuple

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "wandering": list(self.wandering_symbols),
        }

    def containing(self, sid) -> Optional[Component]:
        for c in self.components:
            if sid in c.symbols:
                return c
        return None


def _scc_labels(entries: np.ndarray) -> np.ndarray:
    if entries.shape[0] == 0:
        return np.zeros(0, dtype=int)
    _, labels = connected_components(entries, directed=True, connection="strong")
    return labels


def strongly_connected(M: AdjacencyMatrix) -> list[list[int]]:
    """Index lists of all SCCs (trivial ones included), ordered by least index."""
    labels = _scc_labels(M.entries)
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def classify(classes: Iterable[str]) -> str:
    cs = set(classes)
    if cs <= {A0}:
        return TYPE_I
    if cs <= {A2}:
        return TYPE_II
    return TYPE_III


def positive_entropy(M: AdjacencyMatrix, symbols: Optional[Iterable] = None) -> bool:
    """Exact test for a strongly connected set: is it more than a single cycle?"""
    sub = M if symbols is None else M.restrict(symbols)
    return bool((sub.entries.sum(axis=1) >= 2).any())


def decompose(M: AdjacencyMatrix) -> ComponentDecomposition:
    comps, wandering = [], []
    for group in strongly_connected(M):
        if len(group) == 1 and not M.entries[group[0], group[0]]:
            wandering.append(M.alphabet[group[0]])
            continue
        syms = tuple(M.alphabet[i] for i in group)
        pos = positive_entropy(M, syms)
        h = entropy(M, syms) if pos else 0.0
        comps.append(Component(syms, classify(M.classes[i] for i in group), pos, h))
    return ComponentDecomposition(tuple(comps), tuple(wandering))


def is_irreducible(M: AdjacencyMatrix) -> bool:
    if M.size == 0 or not M.entries.any():
        return False
    return len(strongly_connected(M)) == 1


# ---------------------------------------------------------------------------
# entropy


@dataclass(frozen=True)
class PerronEstimate:
    root: float
    lower: float
    upper: float
    iterations: int


def _bracket(S: np.ndarray, x: np.ndarray) -> tuple[float, float, np.ndarray]:
    y = S @ x
    ratios = y / x
    return float(ratios.min()), float(ratios.max()), y


def perron_irreducible(B: np.ndarray, tol: float = ENTROPY_TOL, max_iter: int = 10_000) -> PerronEstimate:
    """Perron root of an irreducible non-negative matrix.

    Power iteration on ``I + B`` (primitive even when ``B`` is periodic),
    stopped by the Collatz-Wielandt bracket ``min(Sx/x) <= rho(S) <= max(Sx/x)``.
    Falls back to repeated squaring of ``I + B`` when the spectral gap is small.
    """
    B = np.asarray(B, dtype=float)
    m = B.shape[0]
    rows = B.sum(axis=1)
    if np.all(rows == 1):
        return PerronEstimate(1.0, 1.0, 1.0, 0)
    S = np.eye(m) + B
    x = np.ones(m)
    lo = hi = 0.0
    for it in range(1, max_iter + 1):
        lo, hi, y = _bracket(S, x)
        if hi - lo <= tol * hi:
            return PerronEstimate((lo + hi) / 2 - 1, lo - 1, hi - 1, it)
        x = y / y.max()
    # squaring fallback: x <- S^(2^k) 1, normalized each step
    T = S / S.max()
    for k in range(1, 64):
        T = T @ T
        T /= T.max()
        x = T @ np.ones(m)
        if x.min() <= 0:
            break
        lo, hi, _ = _bracket(S, x / x.max())
        if hi - lo <= tol * hi:
            return PerronEstimate((lo + hi) / 2 - 1, lo - 1, hi - 1, max_iter + k)
    raise NonConvergence((lo + hi) / 2 - 1, hi - lo)


def spectral_radius(M: AdjacencyMatrix, symbols: Optional[Iterable] = None) -> float:
    sub = M if symbols is None else M.restrict(symbols)
    best = 0.0
    for group in strongly_connected(sub):
        block = sub.entries[np.ix_(group, group)]
        if not block.any():
            continue
        best = max(best, perron_irreducible(block).root)
    return best


def entropy(M: AdjacencyMatrix, symbols: Optional[Iterable] = None) -> float:
    """Topological entropy (natural log) of the SFT on ``symbols`` (default all)."""
    rho = spectral_radius(M, symbols)
    if rho <= 1.0:
        return 0.0
    return math.log(rho)


# ---------------------------------------------------------------------------
# language


def count_words(M: AdjacencyMatrix, n: int, symbols: Optional[Iterable] = None) -> int:
    """|L_n| (words of n + 1 symbols), exact."""
    sub = M if symbols is None else M.restrict(symbols)
    A = [[int(v) for v in row] for row in sub.entries.tolist()]
    counts = [1] * sub.size
    for _ in range(n):
        counts = [sum(A[i][j] * counts[j] for j in range(sub.size)) for i in range(sub.size)]
    return sum(counts)


def enumerate_words(
    M: AdjacencyMatrix, n: int, symbols: Optional[Iterable] = None, cap: Optional[int] = None
) -> list[tuple]:
    """All admissible words of ``n + 1`` symbols, in lexicographic alphabet order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    sub = M if symbols is None else M.restrict(symbols)
    cap = word_cap() if cap is None else cap
    total = count_words(sub, n)
    if total > cap:
        raise ExplosionGuard(total, cap)
    succ = [list(np.flatnonzero(row)) for row in sub.entries]
    out: list[tuple] = []

    def extend(word):
        if len(word) == n + 1:
            out.append(tuple(sub.alphabet[i] for i in word))
            return
        for j in succ[word[-1]]:
            word.append(j)
            extend(word)
            word.pop()

    for i in range(sub.size):
        extend([i])
    return out


def is_admissible(M: AdjacencyMatrix, word: Sequence) -> bool:
    idx = M.alphabet
    if any(a not in idx for a in word):
        return False
    return all(M(a, b) for a, b in zip(word, word[1:]))

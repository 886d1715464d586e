import random
from fractions import Fraction

import numpy as np
import pytest

from multimap import fixtures
from multimap.model import MarkovMultiMap, make_partition, point_symbol, segment_symbol, vertical_symbol
from multimap.graph import check_no_crossing
from multimap.symbolic import AdjacencyMatrix, is_irreducible

GOLDEN3 = [[0, 1, 1], [1, 0, 0], [1, 1, 0]]


@pytest.fixture
def notue():
    return fixtures.not_uniformly_expanding()


@pytest.fixture
def type3():
    return fixtures.type_three()


@pytest.fixture
def sq():
    return fixtures.squares_and_cubes()


@pytest.fixture
def dbl():
    return fixtures.doubling()


def random_walk(M: AdjacencyMatrix, rng: random.Random, length: int, start=None):
    word = [start if start is not None else rng.choice(M.alphabet)]
    while len(word) < length:
        nxt = M.successors(word[-1])
        if not nxt:
            break
        word.append(rng.choice(nxt))
    return tuple(word)


def random_irreducible(rng: np.random.Generator, n: int, need_branching=True) -> np.ndarray:
    while True:
        A = (rng.random((n, n)) < rng.uniform(0.2, 0.7)).astype(int)
        M = AdjacencyMatrix(tuple(str(i + 1) for i in range(n)), A)
        if not is_irreducible(M):
            continue
        if need_branching and not (A.sum(axis=1) >= 2).any():
            continue
        return A


def random_no_crossing(rng: random.Random) -> MarkovMultiMap:
    """A0 branches on a random partition (possibly stacked on one cell),
    optional verticals spanning several cells and a few P x P points."""
    cuts = sorted(rng.sample(range(1, 12), rng.randint(1, 4)))
    P = [Fraction(0)] + [Fraction(c, 12) for c in cuts] + [Fraction(1)]
    while True:
        syms = []
        for i, (lo, hi) in enumerate(zip(P, P[1:])):
            for j in range(rng.choice([1, 1, 2])):
                u, v = sorted(rng.sample(P, 2))
                a, b = (u, v) if rng.random() < 0.5 else (v, u)
                syms.append(segment_symbol(f"s{i}.{j}", (lo, a), (hi, b)))
        for k in range(rng.randint(0, 2)):
            x = rng.choice(P)
            u, v = sorted(rng.sample(P, 2))
            syms.append(vertical_symbol(f"v{k}", x, u, v))
        for k in range(rng.randint(0, 3)):
            syms.append(point_symbol(f"q{k}", rng.choice(P), rng.choice(P)))
        F = MarkovMultiMap(make_partition(P), tuple(syms))
        if check_no_crossing(F)[0]:
            return F


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")

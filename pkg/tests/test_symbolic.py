import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multimap import fixtures
from multimap.errors import ExplosionGuard, NonConvergence
from multimap.symbolic import (
    TYPE_I, TYPE_II, TYPE_III, AdjacencyMatrix, build_matrix, count_words, decompose, entropy,
    enumerate_words, is_admissible, is_irreducible, perron_irreducible, positive_entropy,
)

from conftest import GOLDEN3

# Perron roots from numpy.roots on characteristic polynomials, frozen.
LOG_GOLDEN = 0.4812118250596032  # l^3 - 2l - 1
LOG2 = math.log(2)


def mat(rows, alphabet=None):
    rows = np.asarray(rows)
    return AdjacencyMatrix(alphabet or tuple(str(i + 1) for i in range(len(rows))), rows)


# successor lists from the raw D/R tables, computed independently of build_matrix
NOTUE_EDGES = {
    "1": ["2", "3"], "2": ["4"], "3": ["1", "2", "3", "6", "8"], "4": ["2", "3"],
    "5": ["6", "8"], "6": ["7", "9"], "7": ["10"], "8": ["5"], "9": ["7", "9"], "10": ["6", "8"],
}


def test_matrix_notue(notue):
    M = build_matrix(notue)
    assert {a: M.successors(a) for a in M.alphabet} == NOTUE_EDGES


def test_matrix_squares_block(sq):
    M = build_matrix(sq)
    assert M.restrict(["1", "2"]).entries.tolist() == [[1, 1], [1, 1]]


def test_matrix_identity():
    assert build_matrix(fixtures.identity()).entries.tolist() == [[1]]


def test_matrix_type3_point_rows(type3):
    M = build_matrix(type3)
    # an A2 symbol at (x, q) is followed only by A1/A2 symbols sitting at q
    assert M.successors("7") == ["3", "4", "5", "7", "9"]
    assert M.successors("8") == ["8"]
    assert M.successors("9") == ["8"]


def test_matrix_json_round_trip(notue):
    M = build_matrix(notue)
    assert AdjacencyMatrix.from_json(M.to_json()) == M


def test_decompose_notue(notue):
    dec = decompose(build_matrix(notue))
    got = {c.symbols: c.kind for c in dec.components}
    assert got == {("1", "2", "3", "4"): TYPE_I, ("5", "6", "7", "8", "9", "10"): TYPE_II}
    assert dec.wandering_symbols == ()


def test_decompose_type3(type3):
    dec = decompose(build_matrix(type3))
    big = dec.containing("1")
    assert big.symbols == tuple("1234567") and big.kind == TYPE_III and big.positive_entropy
    assert dec.containing("8").symbols == ("8",)
    assert not dec.containing("8").positive_entropy
    assert dec.wandering_symbols == ("9",)


def test_decompose_acyclic():
    dec = decompose(mat([[0, 1], [0, 0]]))
    assert dec.components == () and dec.wandering_symbols == ("1", "2")


def test_positive_entropy_examples(notue):
    M = build_matrix(notue)
    assert positive_entropy(M, ["1", "2", "3", "4"])
    assert not positive_entropy(mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))
    assert positive_entropy(mat([[1, 1], [1, 1]]))


def test_entropy_examples(sq):
    assert entropy(build_matrix(sq), ["1", "2"]) == pytest.approx(LOG2, abs=1e-9)
    assert entropy(mat(GOLDEN3)) == pytest.approx(LOG_GOLDEN, abs=1e-9)
    for n in range(1, 7):
        cyc = np.roll(np.eye(n, dtype=int), 1, axis=1)
        assert entropy(mat(cyc)) == 0.0
    assert entropy(mat([[0]])) == 0.0


def test_entropy_periodic_matrix():
    # period 2, spectral radius sqrt(2)
    A = [[0, 0, 1, 1], [0, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]]
    rho = max(abs(np.linalg.eigvals(np.array(A, float))))
    assert entropy(mat(A)) == pytest.approx(math.log(rho), abs=1e-10)


def test_non_convergence_reports_estimate():
    with pytest.raises(NonConvergence) as exc:
        perron_irreducible(np.array([[1, 1], [1, 0]]), tol=0.0, max_iter=3)
    assert exc.value.estimate == pytest.approx((1 + 5 ** 0.5) / 2, abs=1e-6)


def test_enumerate_words(notue, sq):
    M = build_matrix(notue)
    w = enumerate_words(M, 1, ["1", "2", "3", "4"])
    assert ["".join(x) for x in w] == ["12", "13", "24", "31", "32", "33", "42", "43"]
    assert enumerate_words(M, 0) == [(a,) for a in M.alphabet]
    assert enumerate_words(build_matrix(sq), 2, ["1", "2"]) == list(itertools.product("12", repeat=3))


def test_word_cap(notue, monkeypatch):
    M = build_matrix(notue)
    with pytest.raises(ExplosionGuard):
        enumerate_words(M, 10, cap=50)
    monkeypatch.setenv("MULTIMAP_WORD_CAP", "10")
    with pytest.raises(ExplosionGuard):
        enumerate_words(M, 3)


def test_is_irreducible(notue):
    assert is_irreducible(mat(GOLDEN3))
    assert not is_irreducible(build_matrix(notue))
    assert not is_irreducible(mat([[0]]))
    assert is_irreducible(mat([[1]]))


def test_is_admissible(notue):
    M = build_matrix(notue)
    assert is_admissible(M, ("3", "3", "1"))
    assert not is_admissible(M, ("1", "1"))
    assert not is_admissible(M, ("x",))


def test_growth_rate_from_above():
    M = mat(GOLDEN3)
    rates = [math.log(count_words(M, n)) / n for n in (4, 8, 12)]
    assert rates[0] > rates[1] > rates[2] > LOG_GOLDEN
    assert rates[2] - LOG_GOLDEN < 0.1


def random_matrix(rng, n):
    return (rng.random((n, n)) < rng.uniform(0.1, 0.6)).astype(int)


@pytest.mark.parametrize("seed", range(40))
def test_components_form_dag(seed):
    rng = np.random.default_rng(seed)
    M = mat(random_matrix(rng, int(rng.integers(1, 9))))
    dec = decompose(M)
    seen = set()
    for c in dec.components:
        assert not seen & set(c.symbols)
        seen |= set(c.symbols)
        assert is_irreducible(M.restrict(c.symbols))
    assert seen | set(dec.wandering_symbols) == set(M.alphabet)
    assert not seen & set(dec.wandering_symbols)
    # quotient graph is acyclic: nilpotent
    blocks = [list(c.symbols) for c in dec.components] + [[w] for w in dec.wandering_symbols]
    where = {a: i for i, b in enumerate(blocks) for a in b}
    Q = np.zeros((len(blocks), len(blocks)), dtype=int)
    for a in M.alphabet:
        for b in M.successors(a):
            if where[a] != where[b]:
                Q[where[a], where[b]] = 1
    assert not np.linalg.matrix_power(Q, len(blocks)).any()


def test_positive_entropy_agrees_with_float():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        M = mat(random_matrix(rng, int(rng.integers(1, 9))))
        for c in decompose(M).components:
            assert c.positive_entropy == (entropy(M, c.symbols) > 1e-9)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 5), st.integers(1, 5))
@settings(max_examples=60, deadline=None)
def test_submultiplicative(seed, m, n):
    M = mat(random_matrix(np.random.default_rng(seed), 5))
    assert count_words(M, m + n) <= count_words(M, m) * count_words(M, n)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_entropy_permutation_invariant(seed, n):
    rng = np.random.default_rng(seed)
    M = mat(random_matrix(rng, n))
    order = list(rng.permutation(n))
    assert entropy(M.permuted(order)) == pytest.approx(entropy(M), abs=1e-10)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_entropy_matches_eigvals(seed, n):
    A = random_matrix(np.random.default_rng(seed), n)
    rho = max(abs(np.linalg.eigvals(A.astype(float)))) if A.any() else 0.0
    assert entropy(mat(A)) == pytest.approx(math.log(rho) if rho > 1 + 1e-9 else 0.0, abs=1e-8)


def test_count_matches_enumeration(notue):
    M = build_matrix(notue)
    for n in range(5):
        assert count_words(M, n) == len(enumerate_words(M, n))

"""Acceptance criteria, one check per criterion.

Each check returns ``(ok, detail)``. Under pytest every criterion prints a
``CRITERION n: PASS|FAIL`` line in the terminal summary; running this file as
a script prints the same lines.
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from multimap import fixtures
from multimap.dynamics import (
    IN_F, RULE_A1A2, RULE_CONTRACTING, RULE_DISJOINT, RULE_TYPE_III, UNKNOWN, certify_class_F,
    check_uniformly_expanding, interval_of_word,
)
from multimap.graph import check_properly_parametrized, point_set_equal, reparametrize
from multimap.numbers import IntervalQ
from multimap.realization import figure_coordinates, realize, verify_realization
from multimap.symbolic import (
    TYPE_I, TYPE_II, TYPE_III, AdjacencyMatrix, build_matrix, decompose, entropy, is_admissible,
)
from multimap.trajectory import _grid, check_labeled, label_special, sample_trajectory

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from conftest import GOLDEN3, random_irreducible, random_no_crossing, random_walk  # noqa: E402

Q = Fraction
# real root of l^3 - 2l - 1 from numpy.roots on the companion matrix, frozen
LOG_GOLDEN = 0.4812118250596032

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    return ok, detail


def timed(limit):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if dt >= limit:
                return False, f"{detail}; took {dt:.2f}s >= {limit}s"
            return ok, f"{detail} ({dt:.2f}s)"
        run.__name__ = fn.__name__
        return run
    return wrap


@timed(1.0)
def criterion_1():
    a = interval_of_word(fixtures.not_uniformly_expanding(), "331")
    b = interval_of_word(fixtures.type_three(), "13")
    ok = a == IntervalQ(Q(1, 2), Q(7, 12)) and b == IntervalQ(Q(1, 4), Q(1, 4))
    return ok, f"I_331 = {a}, I_13 = {b}"


GOLDEN3_SEGMENTS = {
    ((1, 2), (Q(3, 2), Q(7, 2))), ((2, 1), (Q(5, 2), Q(3, 2))), ((3, 1), (Q(7, 2), Q(3, 2))),
    ((3, 2), (Q(7, 2), Q(5, 2))), ((Q(3, 2), Q(9, 2)), (2, 5)), ((Q(5, 2), Q(9, 2)), (3, 5)),
    ((Q(7, 2), Q(9, 2)), (4, 5)), ((4, Q(9, 2)), (Q(9, 2), 5)), ((Q(9, 2), Q(9, 2)), (5, 5)),
}


@timed(1.0)
def criterion_2():
    out = realize(GOLDEN3)
    segs = figure_coordinates(out)
    ok = (len(segs) == 9 and set(segs) == GOLDEN3_SEGMENTS
          and out.multimap.P == tuple(1 + Q(m, 2) for m in range(9)))
    return ok, f"{len(segs)} segments, partition {[str(p) for p in out.multimap.P]}"


@timed(30.0)
def criterion_3():
    fig = verify_realization(GOLDEN3, realize(GOLDEN3), tol=1e-6)
    ok_fig = (abs(fig.input_entropy - LOG_GOLDEN) <= 1e-6 and abs(fig.c0_component_entropy - LOG_GOLDEN) <= 1e-6)
    two = verify_realization([[1, 1], [1, 1]], realize([[1, 1], [1, 1]]), tol=1e-9)
    ok_two = (abs(two.input_entropy - math.log(2)) <= 1e-9 and abs(two.c0_component_entropy - math.log(2)) <= 1e-9)
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(100):
        A = random_irreducible(rng, int(rng.integers(2, 7)))
        rep = verify_realization(A, realize(A), tol=1e-6)
        worst = max(worst, abs(rep.input_entropy - rep.c0_component_entropy))
    ok = ok_fig and ok_two and worst <= 1e-6
    return ok, (f"golden3 h_in={fig.input_entropy:.12f} h_C0={fig.c0_component_entropy:.12f}; "
                f"2-shift h_C0={two.c0_component_entropy:.12f}; random worst |dh|={worst:.2e}")


@timed(10.0)
def criterion_4():
    notes = []
    v = certify_class_F(fixtures.not_uniformly_expanding())
    f = next(f for f in v.findings if f.component.symbols == ("1", "2", "3", "4"))
    ok_a = (v.status == IN_F and f.coding.word == ("3",) and f.coding.rule == RULE_CONTRACTING
            and f.avoiding.word == ("3", "3", "1") and f.avoiding.rule == RULE_DISJOINT)
    notes.append(f"not_uniformly_expanding {v.status}")
    v = certify_class_F(fixtures.type_three())
    f = next(f for f in v.findings if f.component.kind == TYPE_III)
    ok_b = (v.status == IN_F and f.avoiding.rule == RULE_TYPE_III and f.coding.rule == RULE_A1A2
            and f.coding.word == ("3",))
    notes.append(f"type_three {v.status}")
    v = certify_class_F(fixtures.squares_and_cubes(), 6, 6)
    f = next(f for f in v.findings if f.component.symbols == ("1", "2"))
    ok_c = (v.status == UNKNOWN and f.coding is None and f.avoiding is None
            and f.codes_for_points.max_lengths == (1,) * 6 and f.codes_for_points.verdict == "stagnant")
    notes.append(f"squares_and_cubes {v.status}, max |I_u| = {[str(x) for x in f.codes_for_points.max_lengths]}")
    return ok_a and ok_b and ok_c, "; ".join(notes)


@timed(1.0)
def criterion_5():
    M = build_matrix(fixtures.not_uniformly_expanding())
    dec = decompose(M)
    by = {c.symbols: c for c in dec.components}
    a0 = by.get(("1", "2", "3", "4"))
    a2 = by.get(("5", "6", "7", "8", "9", "10"))
    ok_a0 = a0 is not None and a0.kind == TYPE_I and a0.positive_entropy
    ok_a2_type = a2 is not None and a2.kind == TYPE_II
    ok_a2_zero = ok_a2_type and not a2.positive_entropy and a2.entropy == 0.0
    t3 = decompose(build_matrix(fixtures.type_three()))
    ok_t3 = any(c.kind == TYPE_III for c in t3.components)
    detail = (f"A0 Type {a0.kind} h={a0.entropy:.6f}; A2 Type {a2.kind} h={a2.entropy:.6f} "
              f"(zero-entropy claim {'holds' if ok_a2_zero else 'FAILS'}); type_three has Type III: {ok_t3}")
    return ok_a0 and ok_a2_type and ok_a2_zero and ok_t3, detail


@timed(5.0)
def criterion_6():
    F = fixtures.not_uniformly_expanding()
    reps = [check_uniformly_expanding(F, ["1", "2", "3", "4"], N) for N in range(1, 7)]
    ok_a = all(r.max_inverse_product == 1 and not r.uniformly_expanding for r in reps)
    d = check_uniformly_expanding(fixtures.doubling(), ["L", "R"], 1)
    ok_b = d.uniformly_expanding and d.max_inverse_product == Q(1, 2)
    return ok_a and ok_b, f"not_uniformly_expanding maxima {[str(r.max_inverse_product) for r in reps]}; doubling N=1 {d.max_inverse_product}"


def _nested_laws(F, rng, count=500):
    M = build_matrix(F)
    for _ in range(count):
        u = random_walk(M, rng, rng.randint(2, 9))
        if len(u) < 2:
            continue
        I_u = interval_of_word(F, u, M)
        if I_u.lo > I_u.hi or not I_u.issubset(interval_of_word(F, u[:-1], M)):
            return False
        if not I_u.same_set(F[u[0]].preimage(interval_of_word(F, u[1:], M))):
            return False
    return True


def _labeling(F, rng, count=1000):
    M = build_matrix(F)
    starts = list(F.P) + list(_grid(F.ambient.lo, F.ambient.hi, 16))
    for i in range(count):
        t = sample_trajectory(F, rng.choice(starts), rng.randint(1, 8), seed=i)
        w = label_special(F, t, check=False).word
        if not is_admissible(M, w) or not check_labeled(F, t.points, w, M)["in_S"]:
            return False
        for n in range(len(w)):
            for b in M.alphabet:
                v = w[:n] + (b,) + w[n + 1:]
                if b != w[n] and is_admissible(M, v) and check_labeled(F, t.points, v, M)["in_S"]:
                    return False
    return True


@timed(60.0)
def criterion_7():
    rng = random.Random(7)
    names = ["not_uniformly_expanding", "type_three", "doubling", "squares_and_cubes"]
    a = all(_nested_laws(fixtures.ALL[n](), rng) for n in names)
    proper = [fixtures.not_uniformly_expanding(), fixtures.type_three(), fixtures.doubling(), realize(GOLDEN3).multimap]
    b = all(check_properly_parametrized(F).ok and _labeling(F, rng) for F in proper)
    nrng = np.random.default_rng(8)
    c = True
    for _ in range(200):
        n = int(nrng.integers(1, 9))
        A = (nrng.random((n, n)) < nrng.uniform(0.1, 0.6)).astype(int)
        M = AdjacencyMatrix(tuple(str(i) for i in range(n)), A)
        for comp in decompose(M).components:
            c &= comp.positive_entropy == (entropy(M, comp.symbols) > 1e-9)
    d = True
    for seed in range(50):
        F = random_no_crossing(random.Random(1000 + seed))
        G = reparametrize(F)
        d &= check_properly_parametrized(G).ok and point_set_equal(F, G)
    return a and b and c and d, f"(a) nested laws {a}; (b) labeling {b}; (c) positive entropy {c}; (d) reparametrize {d}"


def criterion_8(tmp_dir=None):
    import tempfile
    from pathlib import Path

    tmp = Path(tmp_dir or tempfile.mkdtemp())
    spec = tmp / "notue.json"
    spec.write_text(fixtures.not_uniformly_expanding().dumps())
    mat = tmp / "golden3.json"
    mat.write_text(json.dumps({"rows": GOLDEN3}))
    cmds = [
        ["certify", "--map", str(spec)],
        ["components", "--map", str(spec)],
        ["realize", "--matrix", str(mat), "--verify"],
        ["render", "--map", str(spec)],
        ["sample", "--map", str(spec), "--x0", "1/6", "--len", "30", "--seed", "5"],
    ]
    same = []
    for argv in cmds:
        outs = [subprocess.run([sys.executable, "-m", "multimap.cli", *argv], capture_output=True).stdout
                for _ in range(2)]
        same.append(outs[0] == outs[1] and len(outs[0]) > 0)
    return all(same), f"{sum(same)}/{len(cmds)} invocations byte-identical"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7, 8])
def test_criterion(n):
    ok, detail = record(n, *CRITERIA[n]())
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="the A2 component of the not_uniformly_expanding fixture has entropy log of the golden ratio, "
                                       "not zero; see the decisions ledger")
def test_criterion_5():
    ok, detail = record(5, *criterion_5())
    assert ok, detail


if __name__ == "__main__":
    for n, check in CRITERIA.items():
        ok, detail = check()
        print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")

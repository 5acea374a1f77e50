"""Ten end-to-end acceptance checks at zero tolerance, each with a time budget.

Every check records one pass/fail line; conftest prints them in the terminal
summary.
"""

from __future__ import annotations

import functools
import random
import time
from math import prod


import oracles
from binderlab import gf
from binderlab.binder import binder_dual_symplectic, binder_family, binder_generic, binder_symplectic
from binderlab.design import cross_oval_matrix, decompose_incidence, find_resolution, is_cross_oval, verify_bibd
from binderlab.etf import FAMILIES, FrameFamily, anchored_simplex_check, character_gram, gram_build, is_simplex, phase_incidence, simplex_size, spark_exhaustive
from binderlab.golden import golden_check
from binderlab.quadratic import QuadraticForm, action_shift, affine_quadric_source, q_sign, quadric, quadric_size
from binderlab.report import SUMMARY_TABLES, cmd_report_tables, spread_split, table_mismatches
from binderlab.symplectic import SymplecticSpace, enumerate_lagrangians, sp_count_bruteforce, sp_order

RESULTS: dict[int, str] = {}


def criterion(number: int, title: str, budget: float):
    """Time the check, enforce its budget and record one summary line."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget:.0f}s"
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                RESULTS[number] = f"criterion {number:2d} FAIL  {title} ({elapsed:.1f}s): {exc}"
                raise
            RESULTS[number] = f"criterion {number:2d} PASS  {title} ({elapsed:.1f}s)"

        return run

    return wrap


@criterion(1, "Lagrangian counts and the J=2 list", 5)
def test_criterion_01_lagrangian_counts():
    for J, count in zip(range(1, 5), (3, 15, 135, 2295)):
        lags = enumerate_lagrangians(SymplecticSpace(2, J))
        assert len(lags) == count == prod(2**j + 1 for j in range(1, J + 1))
    res = golden_check("lagrangians-j2")
    assert res.ok, res.summary()


@criterion(2, "dual binder at J=2, spread and residual designs", 10)
def test_criterion_02_dual_binder_and_resolutions():
    res = binder_dual_symplectic(2, 2)
    assert len(res.blocks) == 60
    assert res.bibd().params.as_tuple() == (16, 4, 3, 15, 60)
    split = spread_split(2)
    assert verify_bibd(split.spread).params.as_tuple() == (16, 4, 1, 5, 20)
    spread = find_resolution(split.spread)
    assert spread.found and len(spread.classes) == 5
    assert verify_bibd(split.residual).params.as_tuple() == (16, 4, 2, 10, 40)
    residual = find_resolution(split.residual, 2)
    assert not residual.found and residual.exhausted


@criterion(3, "symplectic binder, generic search and spark", 30)
def test_criterion_03_symplectic_binder():
    res = binder_symplectic(2, 2)
    assert len(res.blocks) == 16
    assert res.bibd().params.as_tuple() == (16, 6, 2, 6, 16)
    for block in res.point_sets():
        src = affine_quadric_source(block, 2)
        assert src is not None and len(block) == quadric_size(2, -1)
        form, complement = src
        assert q_sign(form) == (1 if complement else -1)
    assert binder_symplectic(2, 3).empty and binder_symplectic(3, 1).empty
    g = character_gram(SymplecticSpace(2, 2), 4, 1)
    assert binder_generic(g).blocks == res.blocks
    spark, subsets = spark_exhaustive(g)
    assert spark == 6 and sorted(subsets) == res.blocks


@criterion(4, "generic search equals structural enumerators at J=2", 60)
def test_criterion_04_oracle_equivalence():
    for tag in FAMILIES:
        structural = binder_family(tag, 2)
        searched = binder_generic(gram_build(FrameFamily(tag, 2, 2)))
        assert searched.blocks == structural.blocks, tag
        assert not structural.empty


@criterion(5, "summary tables at J=2,3,4 (18 rows)", 15 * 60)
def test_criterion_05_summary_tables():
    for J in (2, 3, 4):
        rows = cmd_report_tables(J, verify=True)
        assert table_mismatches(J, rows) == []
        assert {r.family: r.values() for r in rows} == SUMMARY_TABLES[J]
    j4 = SUMMARY_TABLES[4]
    assert (j4["psi"][-1], j4["phi-dc-hat"][-1], j4["psi-d"][-1], j4["psi-d-hat"][-1]) == (36720, 11475, 2295, 13056)


@criterion(6, "pair-extension fixtures at J=3 and J=4", 120)
def test_criterion_06_golden_pairs():
    for fixture, count in (("tremain-j3-lambda", 8), ("tremain-j4-lambda", 64)):
        res = golden_check(fixture)
        assert res.ok and res.computed == count, res.summary()


@criterion(7, "cross-oval histograms", 60)
def test_criterion_07_ovals():
    hist = cross_oval_matrix(binder_family("phi", 2).point_sets(), binder_family("psi", 2).point_sets())
    assert is_cross_oval(hist) and sum(hist.values()) == 16 * 60
    for J in (2, 3):
        hist = cross_oval_matrix(binder_family("psi-d", J).point_sets(), binder_family("psi-d-hat", J).point_sets())
        assert is_cross_oval(hist)


@criterion(8, "four-block incidence decomposition at J=2,3", 120)
def test_criterion_08_decomposition():
    for J in (2, 3):
        res = binder_dual_symplectic(2, J)
        d = FrameFamily("psi-d", 2, J).D
        dec = decompose_incidence(res.point_sets(), d, list(res.labels), sort_key=lambda v: gf.lex_key(v, 2, 2 * J))
        assert dec.identity_holds and dec.halves_ok
        assert set(dec.multiplicity.values()) == {3}
        assert dec.ok


@criterion(9, "phased incidence Gram identity", 30)
def test_criterion_09_phased_incidence():
    for tag in ("phi", "psi", "psi-d", "psi-d-hat"):
        g = gram_build(FrameFamily(tag, 2, 2))
        assert phase_incidence(g, binder_family(tag, 2).blocks).holds, tag


def _all_symplectic_j2() -> list:
    return oracles.symplectic_matrices(2, 2)


def _random_symplectic(space: SymplecticSpace, rnd: random.Random) -> list[list[int]]:
    n = space.dim
    a = gf.identity(n)
    for _ in range(3 * n):
        u = rnd.randrange(1, space.size)
        cols = [(1 << i) ^ (u if space.form(u, 1 << i) else 0) for i in range(n)]
        t = gf.transpose([list(gf.unpack(c, 2, n)) for c in cols])
        a = gf.mat_mul(t, a, 2)
    return a


@criterion(10, "property suites at their stated sizes", 5 * 60)
def test_criterion_10_properties():
    rnd = random.Random(2024)
    # polar identity, sign law and translate law
    for J in (1, 2, 3):
        space = SymplecticSpace(2, J)
        everything = frozenset(range(space.size))
        for sign in (1, -1):
            for w in range(space.size):
                q = QuadraticForm(J, sign, w)
                values = [q(x) for x in range(space.size)]
                for x in range(space.size):
                    for y in range(space.size):
                        assert values[x ^ y] ^ values[x] ^ values[y] == space.form(x, y)
                zeros = frozenset(quadric(q))
                assert len(zeros) == quadric_size(J, q_sign(q))
                for t in range(space.size):
                    moved = frozenset(v ^ t for v in zeros)
                    assert frozenset(quadric(q.shifted(t))) == (moved if values[t] == 0 else everything - moved)
    space4 = SymplecticSpace(2, 4)
    for _ in range(100_000):
        q = QuadraticForm(4, rnd.choice((1, -1)), rnd.randrange(256))
        x, y = rnd.randrange(256), rnd.randrange(256)
        assert q(x ^ y) ^ q(x) ^ q(y) == space4.form(x, y)
    for sign in (1, -1):
        for w in range(256):
            q = QuadraticForm(4, sign, w)
            assert len(quadric(q)) == quadric_size(4, q_sign(q))
    # action_shift: every group element at J=2, sampled elements at J=3 and 4, every v
    mats = _all_symplectic_j2()
    assert len(mats) == 720
    for sign in (1, -1):
        for w in (0, 5, 15):
            q = QuadraticForm(2, sign, w)
            for a in mats:
                v = action_shift(a, q)
                assert all(q(x) == q(gf.apply(a, x, 2) ^ v) for x in range(16))
    for J, samples in ((3, 40), (4, 10)):
        space = SymplecticSpace(2, J)
        for _ in range(samples):
            q = QuadraticForm(J, rnd.choice((1, -1)), rnd.randrange(space.size))
            a = _random_symplectic(space, rnd)
            v = action_shift(a, q)
            assert all(q(x) == q(gf.apply(a, x, 2) ^ v) for x in range(space.size))
    # anchored and full simplex criteria agree on every (S+1)-subset at J <= 2
    from itertools import combinations

    for tag, J in [("phi", 1), ("psi", 1)] + [(t, 2) for t in FAMILIES]:
        g = gram_build(FrameFamily(tag, 2, J))
        k = simplex_size(g)
        if k is None:
            continue
        for block in combinations(range(g.n), k):
            full = is_simplex(g, block)
            assert all(anchored_simplex_check(g, block, a) == full for a in block)
    # translation invariance of the two harmonic binders up to J = 3
    for tag, J in (("phi", 2), ("psi", 2), ("psi", 3), ("phi", 3)):
        sets = set(binder_family(tag, J).point_sets())
        for t in range(4**J):
            assert {frozenset(v ^ t for v in s) for s in sets} == sets
    # group orders
    for p, J, order in ((2, 1, 6), (2, 2, 720), (3, 1, 24)):
        space = SymplecticSpace(p, J)
        assert sp_count_bruteforce(space) == sp_order(space) == order

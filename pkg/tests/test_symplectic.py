"""Symplectic form, group, Lagrangians, spreads and character tables."""

from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from binderlab import gf
from binderlab.design import IncidenceStructure, verify_bibd
from binderlab.gf import GfVector
from binderlab.symplectic import (
    InvalidForm,
    SymplecticSpace,
    bform,
    build_symplectic_basis,
    character_square_is_scalar,
    character_table,
    cosets,
    enumerate_affine_lagrangians,
    enumerate_lagrangians,
    is_lagrangian,
    is_spread,
    is_symplectic_map,
    lagrangian_count,
    lagrangian_spread,
    sp_count_bruteforce,
    sp_order,
)


def b2(x: str, y: str) -> int:
    return bform(SymplecticSpace(2, len(x) // 2), GfVector.parse(x), GfVector.parse(y))


def test_form_examples():
    assert b2("01", "10") == 1
    assert b2("0101", "0110") == 1
    assert all(b2(x, x) == 0 for x in ("0000", "1111", "0110"))


def test_form_rejects_foreign_vectors():
    with pytest.raises(gf.DimensionMismatch):
        bform(SymplecticSpace(2, 2), GfVector.parse("01"), GfVector.parse("0110"))


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
def test_form_matches_coordinate_formula(p, J, data):
    space = SymplecticSpace(p, J)
    x = data.draw(st.integers(0, space.size - 1))
    y = data.draw(st.integers(0, space.size - 1))
    cx, cy = gf.unpack(x, p, space.dim), gf.unpack(y, p, space.dim)
    assert space.form(x, y) == oracles.bform(cx, cy, p)
    assert space.form(x, x) == 0
    assert (space.form(x, y) + space.form(y, x)) % p == 0


def swap(n: int, pairs: list[tuple[int, int]]) -> list[list[int]]:
    m = gf.identity(n)
    for a, b in pairs:
        m[a], m[b] = m[b], m[a]
    return m


def test_symplectic_map_examples():
    assert is_symplectic_map(SymplecticSpace(2, 2), gf.identity(4))
    assert is_symplectic_map(SymplecticSpace(2, 1), swap(2, [(0, 1)]))
    assert not is_symplectic_map(SymplecticSpace(3, 1), swap(2, [(0, 1)]))
    assert not is_symplectic_map(SymplecticSpace(2, 1), [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        is_symplectic_map(SymplecticSpace(2, 1), gf.identity(3))


def test_symplectic_basis_of_canonical_form():
    om = SymplecticSpace(3, 2).canonical_matrix()
    assert build_symplectic_basis(om, 3) == gf.identity(4)


def test_symplectic_basis_of_negated_form_in_characteristic_two():
    t = build_symplectic_basis([[0, -1], [1, 0]], 2)
    assert gf.mat_mul(gf.mat_mul(gf.transpose(t), [[0, 1], [1, 0]], 2), t, 2) == [[0, 1], [1, 0]]


def test_symplectic_basis_of_pulled_back_form():
    spread = lagrangian_spread(SymplecticSpace(2, 2))
    g, t = spread.pulled_back_gram, spread.transition
    assert gf.mat_mul(gf.mat_mul(gf.transpose(t), g, 2), t, 2) == SymplecticSpace(2, 2).canonical_matrix()


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 2**32))
def test_symplectic_basis_transports_random_forms(p, J, seed):
    rnd = random.Random(seed)
    n = 2 * J
    while True:
        m = [[rnd.randrange(p) for _ in range(n)] for _ in range(n)]
        if gf.mat_rank(m, p) == n:
            break
    om = SymplecticSpace(p, J).canonical_matrix()
    gram = gf.mat_mul(gf.mat_mul(gf.transpose(m), om, p), m, p)
    t = build_symplectic_basis(gram, p)
    assert gf.mat_mul(gf.mat_mul(gf.transpose(t), gram, p), t, p) == om


def test_symplectic_basis_rejects_bad_forms():
    with pytest.raises(InvalidForm):
        build_symplectic_basis([[0, 0], [0, 0]], 2)
    with pytest.raises(InvalidForm):
        build_symplectic_basis([[1, 1], [1, 0]], 2)
    with pytest.raises(InvalidForm):
        build_symplectic_basis([[0, 1], [1, 0]], 3)


@pytest.mark.parametrize("p,J,count", [(2, 1, 3), (2, 2, 15), (3, 1, 4), (2, 3, 135), (2, 4, 2295), (3, 2, 40)])
def test_lagrangian_counts(p, J, count):
    lags = enumerate_lagrangians(SymplecticSpace(p, J))
    assert len(lags) == count == lagrangian_count(p, J)
    assert len({s.rows for s in lags}) == count


@pytest.mark.parametrize("p,J", [(2, 1), (2, 2), (3, 1), (2, 3)])
def test_lagrangians_match_brute_force(p, J):
    space = SymplecticSpace(p, J)
    got = {frozenset(gf.unpack(v, p, space.dim) for v in s.elements()) for s in enumerate_lagrangians(space)}
    assert got == oracles.lagrangians(p, J)


@pytest.mark.parametrize("J", [1, 2, 3, 4])
def test_every_lagrangian_is_its_own_complement(J):
    space = SymplecticSpace(2, J)
    for s in enumerate_lagrangians(space):
        assert is_lagrangian(space, s)
        assert space.perp(s) == s


def test_ordered_basis_double_count():
    space = SymplecticSpace(2, 2)
    ordered = [(a, b) for a in range(1, 16) for b in range(1, 16) if b != a and space.form(a, b) == 0]
    assert len(ordered) == (16 - 1) * (8 - 2) == 90
    gl2 = [m for m in product(range(2), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 2]
    assert len(gl2) == 6
    spans = {gf.Subspace.span(pair, 2, 4).rows for pair in ordered}
    assert len(spans) == 90 // 6 == 15


@pytest.mark.parametrize("p,J,count", [(2, 1, 6), (2, 2, 60), (2, 3, 1080), (3, 1, 12)])
def test_affine_lagrangian_counts(p, J, count):
    cs = enumerate_affine_lagrangians(SymplecticSpace(p, J))
    assert len(cs) == count
    assert len({frozenset(c.elements()) for c in cs}) == count


@pytest.mark.parametrize("p,J", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2)])
def test_spread_partitions_nonzero_vectors(p, J):
    space = SymplecticSpace(p, J)
    spread = lagrangian_spread(space)
    assert len(spread.lines) == p**J + 1
    assert is_spread(space, spread.lines)
    for a in spread.lines:
        for b in spread.lines:
            if a != b:
                assert set(a.elements()) & set(b.elements()) == {0}
    if p**J * (p**J + 1) <= 300:
        blocks = [tuple(c.elements()) for s in spread.lines for c in cosets(s)]
        check = verify_bibd(IncidenceStructure.build(range(space.size), blocks))
        assert check.ok and check.params.lam == 1


def test_spread_at_j1_is_all_lines():
    space = SymplecticSpace(2, 1)
    assert {s.rows for s in lagrangian_spread(space).lines} == {s.rows for s in enumerate_lagrangians(space)}


def test_spread_at_j2_matches_field_lines():
    # lines of F_4^2 pushed through (x1 + x3 a, x2 + x4 a)
    space = SymplecticSpace(2, 2)
    got = {frozenset(space.render(v) for v in s.elements()) for s in lagrangian_spread(space).lines}
    expected = {
        frozenset({"0000", "0010", "1000", "1010"}),
        frozenset({"0000", "0011", "1100", "1111"}),
        frozenset({"0000", "0111", "1001", "1110"}),
        frozenset({"0000", "0110", "1011", "1101"}),
        frozenset({"0000", "0001", "0100", "0101"}),
    }
    assert got == expected


def test_unsupported_spread():
    with pytest.raises(ValueError):
        lagrangian_spread(SymplecticSpace(5, 2))


@pytest.mark.parametrize("p,J,order", [(2, 1, 6), (2, 2, 720), (3, 1, 24)])
def test_group_order_formula_and_brute_force(p, J, order):
    space = SymplecticSpace(p, J)
    assert sp_order(space) == order
    assert sp_count_bruteforce(space) == order


def test_brute_force_group_count_is_capped():
    with pytest.raises(gf.LimitExceeded):
        sp_count_bruteforce(SymplecticSpace(2, 3))


@pytest.mark.parametrize("p,J", [(2, 1), (2, 2), (2, 3), (3, 1)])
def test_character_table_squares_to_scalar(p, J):
    assert character_square_is_scalar(character_table(SymplecticSpace(p, J)))


def test_character_table_entries():
    table = character_table(SymplecticSpace(2, 2))
    i, j = table.labels.index(gf.parse("0101")), table.labels.index(gf.parse("0110"))
    assert table.dense()[i, j] == 1
    assert (table.dense().diagonal() == 0).all()


def test_large_character_table_stays_lazy():
    table = character_table(SymplecticSpace(2, 5))
    assert table.exponents is None
    assert table.exponent(1, 2) == 1
    with pytest.raises(gf.LimitExceeded):
        table.dense()

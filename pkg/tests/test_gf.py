"""Prime-field vectors, canonical subspaces, complements and cosets."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from binderlab import gf
from binderlab.gf import GfVector, Subspace, canonical_subspace, coset_canonicalize, orthogonal_complement
from binderlab.symplectic import SymplecticSpace, cosets, enumerate_lagrangians


def vecs(*texts: str) -> list[GfVector]:
    return [GfVector.parse(t) for t in texts]


def test_span_of_nothing_is_zero():
    s = canonical_subspace([], 2, 4)
    assert s.rank == 0
    assert list(s.elements()) == [0]


def test_span_reduces_to_echelon_basis():
    s = canonical_subspace(vecs("0010", "1000", "1010"))
    assert s.rank == 2
    assert s.render() == ["1000", "0010"]
    assert {gf.render(v, 2, 4) for v in s.elements()} == {"0000", "0010", "1000", "1010"}


def test_span_of_spanning_set_is_full():
    s = canonical_subspace(vecs("01", "10", "11"))
    assert s.rank == 2 and s.size == 4


def test_mixed_dimensions_rejected():
    with pytest.raises(gf.DimensionMismatch):
        canonical_subspace([GfVector.parse("01"), GfVector.parse("0100")])
    with pytest.raises(gf.DimensionMismatch):
        canonical_subspace([GfVector.parse("01", 2), GfVector.parse("01", 3)])


def test_complement_of_first_basis_vector():
    space = SymplecticSpace(2, 2)
    c = orthogonal_complement(canonical_subspace(vecs("1000")), space)
    expected = {t for t in (oracles.text(v) for v in oracles.all_vectors(2, 4)) if t[1] == "0"}
    assert {space.render(v) for v in c.elements()} == expected
    assert c.rank == 3


def test_complement_of_everything_is_zero():
    space = SymplecticSpace(2, 2)
    full = canonical_subspace([1, 2, 4, 8], 2, 4)
    assert orthogonal_complement(full, space).rank == 0


def test_lagrangian_is_its_own_complement():
    space = SymplecticSpace(2, 2)
    s = canonical_subspace(vecs("1000", "0010"))
    assert orthogonal_complement(s, space) == s


def test_coset_of_zero():
    s = canonical_subspace(vecs("1000", "0010"))
    assert coset_canonicalize(GfVector.parse("0000"), s).rep == 0
    assert coset_canonicalize(GfVector.parse("0000"), canonical_subspace([], 2, 4)).rep == 0


def test_coset_examples():
    s = canonical_subspace(vecs("1000", "0010"))
    assert coset_canonicalize(GfVector.parse("1010"), s).rep == 0
    c = coset_canonicalize(GfVector.parse("0001"), s)
    assert gf.render(c.rep, 2, 4) == "0001"
    assert {gf.render(v, 2, 4) for v in c.elements()} == {"0001", "1001", "0011", "1011"}


def test_lex_order_reads_first_coordinate_first():
    a, b = GfVector.parse("0100"), GfVector.parse("0011")
    assert b < a
    assert gf.lex_sorted([a.value, b.value], 2, 4) == [b.value, a.value]


def test_vector_rejects_out_of_range():
    with pytest.raises(ValueError):
        GfVector.from_coords([0, 3], 3)


# ---------------------------------------------------------------------------
# properties

primes = st.sampled_from([2, 3])


@st.composite
def vector_texts(draw, p=None, dim=None):
    p = draw(primes) if p is None else p
    dim = draw(st.sampled_from([2, 4, 6])) if dim is None else dim
    return p, "".join(str(draw(st.integers(0, p - 1))) for _ in range(dim))


@given(vector_texts())
def test_render_parse_round_trip(pt):
    p, t = pt
    v = GfVector.parse(t, p)
    assert v.render() == t
    assert GfVector.parse(v.render(), p) == v
    assert all(0 <= c < p for c in v.coords)


@st.composite
def subspaces(draw):
    p = draw(primes)
    J = draw(st.integers(1, 3 if p == 2 else 2))
    n = 2 * J
    k = draw(st.integers(0, n + 1))
    gens = [tuple(draw(st.integers(0, p - 1)) for _ in range(n)) for _ in range(k)]
    return p, J, gens


@given(subspaces())
def test_span_matches_brute_force(case):
    p, J, gens = case
    n = 2 * J
    s = canonical_subspace([gf.pack(g, p) for g in gens], p, n)
    ref = oracles.span(gens, p, n)
    assert {gf.unpack(v, p, n) for v in s.elements()} == ref
    assert all((gf.unpack(v, p, n) in ref) == (v in s) for v in range(p**n))


@given(subspaces())
def test_complement_dimension_and_involution(case):
    p, J, gens = case
    n = 2 * J
    space = SymplecticSpace(p, J)
    s = canonical_subspace([gf.pack(g, p) for g in gens], p, n)
    c = orthogonal_complement(s, space)
    assert s.rank + c.rank == n
    assert orthogonal_complement(c, space) == s
    ref = oracles.perp(oracles.span(gens, p, n), p, n)
    assert {gf.unpack(v, p, n) for v in c.elements()} == ref


@given(subspaces(), st.randoms(use_true_random=False))
def test_canonical_basis_independent_of_generators(case, rnd):
    p, J, gens = case
    n = 2 * J
    packed = [gf.pack(g, p) for g in gens]
    s = canonical_subspace(packed, p, n)
    # a different generating set: shuffled, rescaled and with combinations mixed in
    other = list(s.elements())
    rnd.shuffle(other)
    other = other[: max(len(packed), 1) + 2]
    mixed = [gf.vadd(a, gf.vscale(rnd.randrange(1, p), b, p, n), p, n) for a, b in zip(other, other[1:])] + other
    if s.rank:
        mixed += packed
    t = canonical_subspace(mixed, p, n)
    assert t.rows == s.rows
    assert rows_are_reduced(t)


def rows_are_reduced(s: Subspace) -> bool:
    piv = s.pivots
    if list(piv) != sorted(set(piv)):
        return False
    for r, row in zip(piv, s.rows):
        if gf.digit(row, r, s.p) != 1:
            return False
        if any(gf.digit(other, r, s.p) for other in s.rows if other != row):
            return False
    return True


@given(subspaces(), st.data())
def test_coset_rep_is_lex_minimal_and_idempotent(case, data):
    p, J, gens = case
    n = 2 * J
    s = canonical_subspace([gf.pack(g, p) for g in gens], p, n)
    v = data.draw(st.integers(0, p**n - 1))
    c = coset_canonicalize(v, s)
    members = [gf.vadd(v, x, p, n) for x in s.elements()]
    assert gf.render(c.rep, p, n) == min(gf.render(x, p, n) for x in members)
    for x in members[:5]:
        assert coset_canonicalize(x, s) == c


@pytest.mark.parametrize("p,J", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_cosets_of_every_lagrangian_partition_the_space(p, J):
    space = SymplecticSpace(p, J)
    for lag in enumerate_lagrangians(space):
        cs = cosets(lag)
        assert len(cs) == p**J
        seen = [v for c in cs for v in c.elements()]
        assert sorted(seen) == list(range(space.size))

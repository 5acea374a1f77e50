"""Canonical symplectic spaces F_p^{2J}: the form, Sp membership, symplectic
bases, character tables, Lagrangian enumeration, spreads and group orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod

import numpy as np

from . import gf
from .cyclo import CycloMatrix, zeta_exponent
from .gf import AffineSubspace, GfVector, LimitExceeded, Matrix, Subspace


class InvalidForm(ValueError):
    """Degenerate or non-alternating form matrix."""


@dataclass(frozen=True)
class SymplecticSpace:
    p: int
    J: int

    def __post_init__(self) -> None:
        if not gf.is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.J < 1:
            raise ValueError("J must be at least 1")

    @property
    def dim(self) -> int:
        return 2 * self.J

    @property
    def size(self) -> int:
        return self.p**self.dim

    @cached_property
    def _even_mask(self) -> int:
        return sum(1 << (2 * j) for j in range(self.J))

    def functional(self, x: int) -> int:
        """Packed c with B(x, y) = c . y."""
        if self.p == 2:
            e = self._even_mask
            return ((x & e) << 1) | ((x >> 1) & e)
        c = gf.unpack(x, self.p, self.dim)
        out = [0] * self.dim
        for j in range(self.J):
            out[2 * j + 1] = c[2 * j]
            out[2 * j] = (-c[2 * j + 1]) % self.p
        return gf.pack(out, self.p)

    def form(self, x: int, y: int) -> int:
        return gf.dot(self.functional(x), y, self.p, self.dim)

    def vectors(self) -> list[int]:
        """All vectors in lexicographic order."""
        return gf.lex_sorted(range(self.size), self.p, self.dim)

    def vec(self, text: str) -> int:
        if len(text) != self.dim:
            raise gf.DimensionMismatch(f"expected {self.dim} digits, got {text!r}")
        return gf.parse(text, self.p)

    def render(self, v: int) -> str:
        return gf.render(v, self.p, self.dim)

    def canonical_matrix(self) -> Matrix:
        n = self.dim
        om = [[0] * n for _ in range(n)]
        for j in range(self.J):
            om[2 * j][2 * j + 1] = 1
            om[2 * j + 1][2 * j] = self.p - 1
        return om

    def add(self, x: int, y: int) -> int:
        return gf.vadd(x, y, self.p, self.dim)

    def perp(self, s: Subspace) -> Subspace:
        return gf.orthogonal_complement(s, self)

    def form_table(self, labels: list[int]) -> np.ndarray:
        """Matrix of B(labels[i], labels[j])."""
        if self.p == 2:
            v = np.array(labels, dtype=np.uint64)
            f = np.array([self.functional(x) for x in labels], dtype=np.uint64)
            return (np.bitwise_count(f[:, None] & v[None, :]) & 1).astype(np.int64)
        return np.array([[self.form(x, y) for y in labels] for x in labels], dtype=np.int64)


def bform(space: SymplecticSpace, x: GfVector | int, y: GfVector | int) -> int:
    """Canonical symplectic form sum_j x(2j-1) y(2j) - x(2j) y(2j-1) mod p."""
    xs, ys = [_packed(space, v) for v in (x, y)]
    return space.form(xs, ys)


def _packed(space: SymplecticSpace, v: GfVector | int) -> int:
    if isinstance(v, GfVector):
        if v.p != space.p or v.dim != space.dim:
            raise gf.DimensionMismatch("vector does not belong to this space")
        return v.value
    return v


def is_symplectic_map(space: SymplecticSpace, a: Matrix) -> bool:
    n, p = space.dim, space.p
    if len(a) != n or any(len(row) != n for row in a):
        raise ValueError(f"expected a {n}x{n} matrix")
    a = [[x % p for x in row] for row in a]
    if gf.mat_rank(a, p) < n:
        return False
    om = space.canonical_matrix()
    return gf.mat_mul(gf.mat_mul(gf.transpose(a), om, p), a, p) == om


def build_symplectic_basis(gram: Matrix, p: int) -> Matrix:
    """T whose columns are a symplectic basis: T^t gram T is canonical."""
    n = len(gram)
    gram = [[x % p for x in row] for row in gram]
    if n % 2 or any(len(r) != n for r in gram):
        raise InvalidForm("form matrix must be square of even size")
    for i in range(n):
        if gram[i][i]:
            raise InvalidForm("form is not alternating")
        for j in range(n):
            if (gram[i][j] + gram[j][i]) % p:
                raise InvalidForm("form is not skew")
    if gf.mat_rank(gram, p) < n:
        raise InvalidForm("form is degenerate")

    def g(x: list[int], y: list[int]) -> int:
        return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j]) % p

    remaining = [[int(i == j) for j in range(n)] for i in range(n)]
    basis: list[list[int]] = []
    while remaining:
        e = remaining.pop(0)
        k = next((k for k, w in enumerate(remaining) if g(e, w)), None)
        if k is None:
            raise InvalidForm("form is degenerate")
        f = remaining.pop(k)
        inv = pow(g(e, f), -1, p)
        f = [(x * inv) % p for x in f]
        nxt = []
        for w in remaining:
            a, b = g(f, w), g(e, w)
            nxt.append([(wi + a * ei - b * fi) % p for wi, ei, fi in zip(w, e, f)])
        remaining = nxt
        basis += [e, f]
    t = gf.transpose(basis)
    om = SymplecticSpace(p, n // 2).canonical_matrix()
    if gf.mat_mul(gf.mat_mul(gf.transpose(t), gram, p), t, p) != om:
        raise InvalidForm("symplectic basis construction failed")
    return t


# ---------------------------------------------------------------------------
# Lagrangians


def lagrangian_count(p: int, J: int) -> int:
    return prod(p**j + 1 for j in range(1, J + 1))


def is_totally_orthogonal(space: SymplecticSpace, s: Subspace) -> bool:
    rows = s.rows
    return all(space.form(x, y) == 0 for i, x in enumerate(rows) for y in rows[i + 1 :])


def is_lagrangian(space: SymplecticSpace, s: Subspace) -> bool:
    return s.rank == space.J and is_totally_orthogonal(space, s)


DEFAULT_LAGRANGIAN_CAP = 250_000


def enumerate_lagrangians(space: SymplecticSpace, cap: int = DEFAULT_LAGRANGIAN_CAP) -> list[Subspace]:
    """All Lagrangian subspaces, grown one dimension at a time with
    level-wise dedupe on canonical bases."""
    if lagrangian_count(space.p, space.J) > cap:
        raise LimitExceeded(f"{lagrangian_count(space.p, space.J)} Lagrangians exceed cap {cap}")
    p, dim = space.p, space.dim
    level = {(): Subspace(p, dim, ())}
    for _ in range(space.J):
        nxt: dict[tuple[int, ...], Subspace] = {}
        for s in level.values():
            for v in gf.quotient_representatives(space.perp(s), s):
                t = Subspace.span(s.rows + (v,), p, dim)
                nxt.setdefault(t.rows, t)
        level = nxt
    return sorted(level.values(), key=Subspace.key)


def coset_reps(s: Subspace) -> list[int]:
    """Representatives with zeros on the pivot coordinates: one per coset."""
    free = [i for i in range(s.dim) if i not in s.pivots]
    reps = []
    for coeffs in product(range(s.p), repeat=len(free)):
        coords = [0] * s.dim
        for i, c in zip(free, coeffs):
            coords[i] = c
        reps.append(gf.pack(coords, s.p))
    return reps


def cosets(s: Subspace) -> list[AffineSubspace]:
    return [AffineSubspace(r, s) for r in coset_reps(s)]


def enumerate_affine_lagrangians(space: SymplecticSpace, cap: int = DEFAULT_LAGRANGIAN_CAP) -> list[AffineSubspace]:
    out = [c for s in enumerate_lagrangians(space, cap) for c in cosets(s)]
    return sorted(out, key=AffineSubspace.key)


# ---------------------------------------------------------------------------
# spreads from F_{p^J}

IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
}
"""Coefficients c_0..c_J of monic irreducible polynomials defining F_{p^J}."""


@dataclass(frozen=True)
class ExtensionField:
    p: int
    J: int

    def __post_init__(self) -> None:
        if self.J > 1 and (self.p, self.J) not in IRREDUCIBLE:
            raise ValueError(f"no field table for p={self.p}, J={self.J}")

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in product(range(self.p), repeat=self.J)]

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, J = self.p, self.J
        out = [0] * (2 * J - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        if J > 1:
            poly = IRREDUCIBLE[(p, J)]
            for d in range(2 * J - 2, J - 1, -1):
                c = out[d]
                if c:
                    out[d] = 0
                    for k in range(J):
                        out[d - J + k] = (out[d - J + k] - c * poly[k]) % p
        return tuple(out[:J])

    def sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def power(self, i: int) -> tuple[int, ...]:
        """alpha^i for i < J as a coefficient tuple."""
        return tuple(int(k == i) for k in range(self.J))


@dataclass
class Spread:
    space: SymplecticSpace
    lines: list[Subspace]
    transition: Matrix
    pulled_back_gram: Matrix = field(repr=False)


def lagrangian_spread(space: SymplecticSpace) -> Spread:
    """p^J + 1 Lagrangians partitioning the nonzero vectors.

    F_q^2 (q = p^J) is identified with F_p^{2J} by interleaving: coordinate
    2m-1 carries the alpha^(m-1) coefficient of x and coordinate 2m that of y.
    The form (x,y),(x',y') -> c0(x y' - y x'), with c0 the constant
    coefficient, is transported to the canonical form by a symplectic basis.
    """
    p, J, n = space.p, space.J, space.dim
    fld = ExtensionField(p, J)

    def split(u: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(u[0::2]), tuple(u[1::2])

    def pulled(u: tuple[int, ...], w: tuple[int, ...]) -> int:
        (x, y), (x2, y2) = split(u), split(w)
        return fld.sub(fld.mul(x, y2), fld.mul(y, x2))[0]

    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    gram = [[pulled(unit[i], unit[j]) for j in range(n)] for i in range(n)]
    t = build_symplectic_basis(gram, p)
    t_inv = gf.mat_inverse(t, p)

    def embed(x: tuple[int, ...], y: tuple[int, ...]) -> int:
        coords = [0] * n
        coords[0::2] = x
        coords[1::2] = y
        return gf.apply(t_inv, gf.pack(coords, p), p)

    zero = (0,) * J
    lines = []
    for slope in fld.elements():
        gens = [embed(fld.power(i), fld.mul(slope, fld.power(i))) for i in range(J)]
        lines.append(Subspace.span(gens, p, n))
    lines.append(Subspace.span([embed(zero, fld.power(i)) for i in range(J)], p, n))
    return Spread(space, sorted(lines, key=Subspace.key), t, gram)


def is_spread(space: SymplecticSpace, lines: list[Subspace]) -> bool:
    if len(lines) != space.p**space.J + 1:
        return False
    if not all(is_lagrangian(space, s) for s in lines):
        return False
    seen: set[int] = set()
    for s in lines:
        nz = [v for v in s.elements() if v]
        if seen.intersection(nz):
            return False
        seen.update(nz)
    return len(seen) == space.size - 1


# ---------------------------------------------------------------------------
# symplectic group order


def sp_order(space: SymplecticSpace) -> int:
    p = space.p
    return prod(p ** (2 * j - 1) * (p ** (2 * j) - 1) for j in range(1, space.J + 1))


def sp_count_bruteforce(space: SymplecticSpace, cap: int = 1 << 20) -> int:
    """Count invertible form-preserving matrices column tuple by column tuple."""
    if space.dim > 4 or space.size**space.dim > cap:
        raise LimitExceeded("brute-force Sp count is limited to 2J <= 4 and small p")
    n, p = space.dim, space.p
    om = space.canonical_matrix()
    count = 0
    for cols in product(range(space.size), repeat=n):
        if any(space.form(cols[i], cols[j]) != om[i][j] for i in range(n) for j in range(i + 1, n)):
            continue
        a = gf.transpose([list(gf.unpack(c, p, n)) for c in cols])
        if is_symplectic_map(space, a):
            count += 1
    return count


# ---------------------------------------------------------------------------
# character tables

DENSE_TABLE_LIMIT = 256


@dataclass
class CharacterTable:
    """Gamma(v1, v2) = exp(2 pi i B(v1, v2) / p) over lexicographically sorted V."""

    space: SymplecticSpace
    labels: list[int]
    exponents: np.ndarray | None

    def exponent(self, x: int, y: int) -> int:
        return self.space.form(x, y)

    def dense(self) -> np.ndarray:
        if self.exponents is None:
            raise LimitExceeded("character table is too large to materialize")
        return self.exponents

    def cyclo(self) -> CycloMatrix:
        p = self.space.p
        units = np.vectorize(lambda k: zeta_exponent(int(k), p))(self.dense())
        return CycloMatrix.from_units(units, p)


def character_table(space: SymplecticSpace, dense_limit: int = DENSE_TABLE_LIMIT) -> CharacterTable:
    labels = space.vectors()
    exps = space.form_table(labels) if space.size <= dense_limit else None
    return CharacterTable(space, labels, exps)


def character_square_is_scalar(table: CharacterTable) -> bool:
    """Gamma^2 = p^{2J} I, Gamma* = Gamma, unit diagonal."""
    g = table.cyclo()
    n = table.space.size
    ident = CycloMatrix.identity(n, table.space.p, n)
    hermitian = g.conj_transpose().equals(g)
    diag = bool((np.diag(table.dense()) == 0).all())
    return hermitian and diag and (g @ g).equals(ident)

"""Linear algebra over prime fields with a bit-packed fast path for p = 2.

A vector of F_p^n is packed into a single int: coordinate x_i is the base-p
digit of weight p^(i-1), so for p = 2 it is bit i-1.  The printed form is the
digit string x_1 x_2 ... x_n, and lexicographic order compares those strings
left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Protocol, Sequence


class DimensionMismatch(ValueError):
    """Vectors or subspaces with incompatible p or dimension."""


class LimitExceeded(RuntimeError):
    """A configured size cap was exceeded."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# packed vectors


def pack(coords: Sequence[int], p: int) -> int:
    if p == 2:
        value = 0
        for i, c in enumerate(coords):
            if c & 1:
                value |= 1 << i
        return value
    value = 0
    for c in reversed(coords):
        value = value * p + (c % p)
    return value


def unpack(value: int, p: int, dim: int) -> tuple[int, ...]:
    if p == 2:
        return tuple((value >> i) & 1 for i in range(dim))
    out = []
    for _ in range(dim):
        value, r = divmod(value, p)
        out.append(r)
    return tuple(out)


def render(value: int, p: int, dim: int) -> str:
    return "".join(str(c) for c in unpack(value, p, dim))


def parse(text: str, p: int = 2) -> int:
    text = text.strip()
    digits = [int(ch) for ch in text]
    if any(d >= p for d in digits):
        raise ValueError(f"digit out of range for p={p}: {text!r}")
    return pack(digits, p)


@lru_cache(maxsize=None)
def _lex_table(p: int, dim: int) -> tuple[int, ...]:
    size = p**dim
    table = []
    for v in range(size):
        key = 0
        for c in unpack(v, p, dim):
            key = key * p + c
        table.append(key)
    return tuple(table)


def lex_key(value: int, p: int, dim: int) -> int:
    """Integer whose natural order is the lexicographic order of digit strings."""
    if p**dim <= 1 << 16:
        return _lex_table(p, dim)[value]
    key = 0
    for c in unpack(value, p, dim):
        key = key * p + c
    return key


def lex_sorted(values: Iterable[int], p: int, dim: int) -> list[int]:
    return sorted(values, key=lambda v: lex_key(v, p, dim))


def vadd(x: int, y: int, p: int, dim: int) -> int:
    if p == 2:
        return x ^ y
    a, b = unpack(x, p, dim), unpack(y, p, dim)
    return pack([(s + t) % p for s, t in zip(a, b)], p)


def vscale(c: int, x: int, p: int, dim: int) -> int:
    c %= p
    if p == 2:
        return x if c else 0
    return pack([(c * s) % p for s in unpack(x, p, dim)], p)


def vsub(x: int, y: int, p: int, dim: int) -> int:
    return vadd(x, vscale(p - 1, y, p, dim), p, dim)


def digit(x: int, i: int, p: int) -> int:
    """Coordinate x_{i+1} (0-based position i)."""
    if p == 2:
        return (x >> i) & 1
    return (x // p**i) % p


def first_nonzero(x: int, p: int, dim: int) -> int:
    """0-based position of the first nonzero coordinate, -1 for zero."""
    if x == 0:
        return -1
    if p == 2:
        return (x & -x).bit_length() - 1
    for i in range(dim):
        if digit(x, i, p):
            return i
    return -1


def dot(x: int, y: int, p: int, dim: int) -> int:
    if p == 2:
        return (x & y).bit_count() & 1
    return sum(s * t for s, t in zip(unpack(x, p, dim), unpack(y, p, dim))) % p


@dataclass(frozen=True, order=False)
class GfVector:
    p: int
    dim: int
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.p**self.dim:
            raise ValueError("packed value out of range")

    @classmethod
    def parse(cls, text: str, p: int = 2) -> "GfVector":
        text = text.strip()
        return cls(p, len(text), parse(text, p))

    @classmethod
    def from_coords(cls, coords: Sequence[int], p: int) -> "GfVector":
        if any(not 0 <= c < p for c in coords):
            raise ValueError(f"coordinates must lie in [0, {p})")
        return cls(p, len(coords), pack(coords, p))

    @property
    def coords(self) -> tuple[int, ...]:
        return unpack(self.value, self.p, self.dim)

    def render(self) -> str:
        return render(self.value, self.p, self.dim)

    def __str__(self) -> str:
        return self.render()

    def __add__(self, other: "GfVector") -> "GfVector":
        _check_same(self, other)
        return GfVector(self.p, self.dim, vadd(self.value, other.value, self.p, self.dim))

    def __sub__(self, other: "GfVector") -> "GfVector":
        _check_same(self, other)
        return GfVector(self.p, self.dim, vsub(self.value, other.value, self.p, self.dim))

    def __lt__(self, other: "GfVector") -> bool:
        _check_same(self, other)
        return lex_key(self.value, self.p, self.dim) < lex_key(other.value, self.p, self.dim)


def _check_same(a: GfVector, b: GfVector) -> None:
    if a.p != b.p or a.dim != b.dim:
        raise DimensionMismatch(f"({a.p},{a.dim}) vs ({b.p},{b.dim})")


# ---------------------------------------------------------------------------
# subspaces


def _reduce(v: int, rows: Sequence[int], pivots: Sequence[int], p: int, dim: int) -> int:
    """Clear the pivot coordinates of v using reduced echelon rows."""
    if p == 2:
        for r, c in zip(rows, pivots):
            if (v >> c) & 1:
                v ^= r
        return v
    for r, c in zip(rows, pivots):
        a = digit(v, c, p)
        if a:
            v = vsub(v, vscale(a, r, p, dim), p, dim)
    return v


def _rref2(vectors: Iterable[int]) -> tuple[int, ...]:
    piv: dict[int, int] = {}
    for v in vectors:
        for b, r in piv.items():
            if v & b:
                v ^= r
        if not v:
            continue
        low = v & -v
        for b, r in piv.items():
            if r & low:
                piv[b] = r ^ v
        piv[low] = v
    return tuple(piv[b] for b in sorted(piv))


def rref(vectors: Iterable[int], p: int, dim: int) -> tuple[int, ...]:
    """Reduced row-echelon basis of the span, rows ordered by pivot position."""
    if p == 2:
        return _rref2(vectors)
    rows: list[int] = []
    pivots: list[int] = []
    for v in vectors:
        v = _reduce(v, rows, pivots, p, dim)
        if v == 0:
            continue
        c = first_nonzero(v, p, dim)
        if p != 2:
            v = vscale(pow(digit(v, c, p), -1, p), v, p, dim)
        for k, r in enumerate(rows):
            a = digit(r, c, p)
            if a:
                rows[k] = r ^ v if p == 2 else vsub(r, vscale(a, v, p, dim), p, dim)
        rows.append(v)
        pivots.append(c)
    order = sorted(range(len(rows)), key=lambda k: pivots[k])
    return tuple(rows[k] for k in order)


@dataclass(frozen=True)
class Subspace:
    """Subspace stored by its canonical reduced echelon basis."""

    p: int
    dim: int
    rows: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[int], p: int, dim: int) -> "Subspace":
        return cls(p, dim, rref(vectors, p, dim))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(first_nonzero(r, self.p, self.dim) for r in self.rows)

    @property
    def size(self) -> int:
        return self.p**self.rank

    def basis(self) -> list[GfVector]:
        return [GfVector(self.p, self.dim, r) for r in self.rows]

    def reduce(self, v: int) -> int:
        """Lexicographically least element of v + self."""
        return _reduce(v, self.rows, self.pivots, self.p, self.dim)

    def __contains__(self, v: object) -> bool:
        if isinstance(v, GfVector):
            if v.p != self.p or v.dim != self.dim:
                return False
            v = v.value
        return self.reduce(int(v)) == 0  # type: ignore[arg-type]

    def elements(self) -> Iterator[int]:
        p, dim = self.p, self.dim
        if p == 2:
            out = [0]
            for r in self.rows:
                out += [x ^ r for x in out]
            yield from out
            return
        for coeffs in product(range(p), repeat=self.rank):
            v = 0
            for c, r in zip(coeffs, self.rows):
                if c:
                    v = vadd(v, vscale(c, r, p, dim), p, dim)
            yield v

    def sorted_elements(self) -> list[int]:
        return lex_sorted(self.elements(), self.p, self.dim)

    def issubset(self, other: "Subspace") -> bool:
        return all(r in other for r in self.rows)

    def key(self) -> tuple[int, ...]:
        return tuple(lex_key(r, self.p, self.dim) for r in self.rows)

    def render(self) -> list[str]:
        return [render(r, self.p, self.dim) for r in self.rows]


@dataclass(frozen=True)
class AffineSubspace:
    """Coset rep + space with rep the lexicographically least element."""

    rep: int
    space: Subspace

    @property
    def p(self) -> int:
        return self.space.p

    @property
    def dim(self) -> int:
        return self.space.dim

    def elements(self) -> Iterator[int]:
        for s in self.space.elements():
            yield vadd(self.rep, s, self.p, self.dim)

    def sorted_elements(self) -> list[int]:
        return lex_sorted(self.elements(), self.p, self.dim)

    def __contains__(self, v: object) -> bool:
        if isinstance(v, GfVector):
            v = v.value
        return self.space.reduce(int(v)) == self.rep  # type: ignore[arg-type]

    def key(self) -> tuple[int, ...]:
        return tuple(lex_key(v, self.p, self.dim) for v in self.sorted_elements())

    def render(self) -> list[str]:
        return [render(v, self.p, self.dim) for v in self.sorted_elements()]


def _unwrap(vectors: Sequence[GfVector | int], p: int | None, dim: int | None) -> tuple[list[int], int, int]:
    vals: list[int] = []
    for v in vectors:
        if isinstance(v, GfVector):
            if p is None:
                p, dim = v.p, v.dim
            elif v.p != p or v.dim != dim:
                raise DimensionMismatch("mixed p or dim in vector list")
            vals.append(v.value)
        else:
            vals.append(int(v))
    if p is None or dim is None:
        raise DimensionMismatch("cannot infer p and dim from an empty list")
    return vals, p, dim


def canonical_subspace(vectors: Sequence[GfVector | int], p: int | None = None, dim: int | None = None) -> Subspace:
    """Canonical basis of the span of the given vectors."""
    vals, p, dim = _unwrap(vectors, p, dim)
    return Subspace.span(vals, p, dim)


def coset_canonicalize(v: GfVector | int, space: Subspace) -> AffineSubspace:
    if isinstance(v, GfVector):
        if v.p != space.p or v.dim != space.dim:
            raise DimensionMismatch("vector and subspace disagree")
        v = v.value
    return AffineSubspace(space.reduce(v), space)


class BilinearForm(Protocol):
    p: int

    @property
    def dim(self) -> int: ...

    def functional(self, x: int) -> int:
        """Packed coefficient vector c with form(x, y) = c . y."""
        ...


def null_space(constraints: Sequence[int], p: int, dim: int) -> Subspace:
    """All y with c . y = 0 for every constraint vector c."""
    rows = rref(constraints, p, dim)
    pivots = [first_nonzero(r, p, dim) for r in rows]
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        coords = [0] * dim
        coords[f] = 1
        for r, c in zip(rows, pivots):
            coords[c] = (-digit(r, f, p)) % p
        basis.append(pack(coords, p))
    return Subspace.span(basis, p, dim)


def orthogonal_complement(space: Subspace, form: BilinearForm) -> Subspace:
    """{w : form(v, w) = 0 for all v in space}."""
    if space.p != form.p or space.dim != form.dim:
        raise DimensionMismatch("form and subspace disagree")
    return null_space([form.functional(r) for r in space.rows], space.p, space.dim)


def quotient_representatives(space: Subspace, sub: Subspace) -> list[int]:
    """Distinct reduced representatives of the nonzero classes of space/sub."""
    reduced = rref((sub.reduce(r) for r in space.rows), space.p, space.dim)
    quotient = Subspace(space.p, space.dim, reduced)
    return [v for v in quotient.elements() if v]


# ---------------------------------------------------------------------------
# small dense matrices over F_p (row-major lists)

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def mat_rank(a: Matrix, p: int) -> int:
    if not a:
        return 0
    return len(rref([pack(row, p) for row in a], p, len(a[0])))


def mat_inverse(a: Matrix, p: int) -> Matrix:
    n = len(a)
    work = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = pow(work[col][col], -1, p)
        work[col] = [(x * inv) % p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def columns_packed(a: Matrix, p: int) -> list[int]:
    return [pack(col, p) for col in zip(*a)]


def apply(a: Matrix, v: int, p: int) -> int:
    """Packed image A v of a packed column vector v."""
    dim = len(a)
    cols = columns_packed(a, p)
    return apply_columns(cols, v, p, dim)


def apply_columns(cols: Sequence[int], v: int, p: int, dim: int) -> int:
    if p == 2:
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= cols[i]
            v >>= 1
            i += 1
        return out
    out = 0
    for i, c in enumerate(unpack(v, p, dim)):
        if c:
            out = vadd(out, vscale(c, cols[i], p, dim), p, dim)
    return out


def render_matrix(a: Matrix) -> list[str]:
    return ["".join(str(x) for x in row) for row in a]

"""Quadratic forms over F_2 whose polarization is the canonical symplectic form.

Every such form is v -> Q_base(v) + B(w, v) for one of the two base forms

    plus:  sum_j x(2j-1) x(2j)
    minus: plus + x(2J-1) + x(2J)

and a shift vector w.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import gf
from .gf import AffineSubspace, Matrix, Subspace
from .symplectic import SymplecticSpace, cosets, is_symplectic_map, is_totally_orthogonal


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    J: int
    base_sign: int = 1
    shift: int = 0

    def __post_init__(self) -> None:
        if self.base_sign not in (1, -1):
            raise ValueError("base_sign must be +1 or -1")
        if self.J < 1:
            raise ValueError("J must be at least 1")
        if not 0 <= self.shift < 1 << (2 * self.J):
            raise ValueError("shift out of range")

    @cached_property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace(2, self.J)

    @cached_property
    def _even(self) -> int:
        return sum(1 << (2 * j) for j in range(self.J))

    @cached_property
    def _tail(self) -> int:
        return 3 << (2 * self.J - 2)

    def __call__(self, v: int) -> int:
        q = (v & (v >> 1) & self._even).bit_count()
        if self.base_sign < 0:
            q += (v & self._tail).bit_count()
        if self.shift:
            q += self.space.form(self.shift, v)
        return q & 1

    def shifted(self, w: int) -> "QuadraticForm":
        """The form v -> Q(v) + B(w, v)."""
        return QuadraticForm(self.J, self.base_sign, self.shift ^ w)

    def canonical(self) -> "QuadraticForm":
        """Equivalent representation over the plus base form."""
        if self.base_sign > 0:
            return self
        return QuadraticForm(self.J, 1, self.shift ^ self._tail)

    def to_json(self) -> dict:
        return {"j": self.J, "base": "+" if self.base_sign > 0 else "-", "shift": self.space.render(self.shift)}

    @classmethod
    def from_json(cls, data: dict) -> "QuadraticForm":
        base = data.get("base", "+")
        sign = 1 if base == "+" else -1 if base in ("-", "−") else None
        if sign is None:
            raise ValueError(f"unknown base {base!r}")
        J = int(data["j"])
        return cls(J, sign, gf.parse(data.get("shift", "0" * 2 * J)))


def q_eval(q: QuadraticForm, v: gf.GfVector | int) -> int:
    if isinstance(v, gf.GfVector):
        if v.p != 2 or v.dim != 2 * q.J:
            raise gf.DimensionMismatch("vector does not match the form")
        v = v.value
    return q(v)


def quadric(q: QuadraticForm) -> list[int]:
    """Zero set of q in lexicographic order."""
    return [v for v in q.space.vectors() if q(v) == 0]


def quadric_size(J: int, sign: int) -> int:
    return 2 ** (J - 1) * (2**J + sign)


def q_sign(q: QuadraticForm) -> int:
    n = len(quadric(q))
    diff = n - 2 ** (2 * q.J - 1)
    sign, rem = divmod(diff, 2 ** (q.J - 1))
    assert rem == 0 and sign in (1, -1)
    return sign


def same_form(a: QuadraticForm, b: QuadraticForm) -> bool:
    return a.J == b.J and quadric(a) == quadric(b)


# ---------------------------------------------------------------------------
# affine quadrics


def reference_quadric(J: int, size_sign: int) -> list[int]:
    return quadric(QuadraticForm(J, size_sign))


def translate(points: list[int] | frozenset[int], w: int) -> frozenset[int]:
    return frozenset(v ^ w for v in points)


def enumerate_affine_quadrics(J: int, size_sign: int, cap: int = 8) -> list[list[int]]:
    """All 2^{2J} translates of the quadric of size 2^{J-1}(2^J + size_sign)."""
    if J > cap:
        raise gf.LimitExceeded(f"J={J} exceeds cap {cap}")
    space = SymplecticSpace(2, J)
    ref = reference_quadric(J, size_sign)
    out = {translate(ref, w) for w in range(space.size)}
    return sorted((gf.lex_sorted(s, 2, 2 * J) for s in out), key=lambda s: [gf.lex_key(v, 2, 2 * J) for v in s])


def affine_quadric_source(points: list[int] | frozenset[int], J: int) -> tuple[QuadraticForm, bool] | None:
    """A form whose quadric is the set (flag False) or its complement (flag True)."""
    pts = frozenset(points)
    space = SymplecticSpace(2, J)
    comp = frozenset(range(space.size)) - pts
    for w in range(space.size):
        q = QuadraticForm(J, 1, w)
        z = frozenset(quadric(q))
        if z == pts:
            return q, False
        if z == comp:
            return q, True
    return None


def is_affine_quadric(points: list[int] | frozenset[int], J: int) -> bool:
    return affine_quadric_source(points, J) is not None


def default_d(J: int) -> frozenset[int]:
    """Complement of the quadric of the minus base form."""
    space = SymplecticSpace(2, J)
    return frozenset(range(space.size)) - frozenset(quadric(QuadraticForm(J, -1)))


# ---------------------------------------------------------------------------
# structure


def hyperbolic_basis(q: QuadraticForm) -> list[int]:
    """Symplectic basis v_1..v_2J with all but the last pair singular and the
    last pair singular (sign +) or nonsingular (sign -)."""
    space = q.space
    remaining = list(range(1, space.size))
    basis: list[int] = []
    while True:
        if len(remaining) == 3:
            e = next((v for v in remaining if q(v) == 0), remaining[0])
        else:
            e = next(v for v in remaining if q(v) == 0)
        f0 = next(v for v in remaining if space.form(e, v))
        f = f0 ^ e if q(f0) and q(e) == 0 else f0
        basis += [e, f]
        remaining = [v for v in remaining if space.form(e, v) == 0 and space.form(f, v) == 0]
        if not remaining:
            break
    _check_hyperbolic(q, basis)
    return basis


def _check_hyperbolic(q: QuadraticForm, basis: list[int]) -> None:
    space = q.space
    n = space.dim
    om = space.canonical_matrix()
    for i in range(n):
        for j in range(n):
            if space.form(basis[i], basis[j]) != om[i][j]:
                raise AssertionError("not a symplectic basis")
    if any(q(v) for v in basis[:-2]):
        raise AssertionError("leading vectors are not singular")
    last = {q(basis[-2]), q(basis[-1])}
    if len(last) != 1 or (last == {0}) != (q_sign(q) > 0):
        raise AssertionError("last pair does not match the sign")


def action_shift(a: Matrix, q: QuadraticForm) -> int:
    """The unique v_A in the quadric with Q(v) = Q(A v + v_A) for all v."""
    space = q.space
    if not is_symplectic_map(space, a):
        raise InvalidInput("matrix is not symplectic")
    cols = gf.columns_packed(a, 2)
    n = space.dim
    # Q(Av) + Q(v) = B(c, v), read off on the standard basis
    bits = sum((q(cols[i]) ^ q(1 << i)) << i for i in range(n))
    c = space.functional(bits)
    v_a = gf.apply_columns(cols, c, 2, n)
    if q(v_a) != 0:
        raise AssertionError("shift is not singular")
    if any(q(v) != q(gf.apply_columns(cols, v, 2, n) ^ v_a) for v in range(space.size)):
        raise AssertionError("shift characterization failed")
    zq = set(quadric(q))
    if {gf.apply_columns(cols, v, 2, n) ^ v_a for v in zq} != zq:
        raise AssertionError("A Q + v_A != Q")
    return v_a


def singular_split(s: Subspace, q: QuadraticForm) -> tuple[Subspace, bool]:
    """(S meet quadric, whether that halves S) for totally orthogonal S."""
    if not is_totally_orthogonal(q.space, s):
        raise InvalidInput("subspace is not totally orthogonal")
    zero = [v for v in s.elements() if q(v) == 0]
    inter = Subspace.span(zero, 2, s.dim)
    halved = len(zero) != s.size
    if halved and 2 * len(zero) != s.size:
        raise AssertionError("singular part is not of index 2")
    return inter, halved


def is_totally_singular(s: Subspace | AffineSubspace, q: QuadraticForm) -> bool:
    return all(q(v) == 0 for v in s.elements())


def lagrangian_extensions(s: Subspace, q: QuadraticForm) -> list[tuple[Subspace, bool]]:
    """The three Lagrangians containing a (J-1)-dim totally singular S, each
    flagged by whether it is totally singular."""
    space = q.space
    if s.rank != q.J - 1 or not is_totally_singular(s, q) or not is_totally_orthogonal(space, s):
        raise InvalidInput("S must be a (J-1)-dimensional totally singular subspace")
    exts = {}
    for v in gf.quotient_representatives(space.perp(s), s):
        t = Subspace.span(s.rows + (v,), 2, space.dim)
        exts[t.rows] = t
    out = [(t, is_totally_singular(t, q)) for t in sorted(exts.values(), key=Subspace.key)]
    if len(out) != 3:
        raise AssertionError("expected exactly three extensions")
    return out


def totally_singular_coset(lag: Subspace, q: QuadraticForm) -> AffineSubspace:
    """The unique coset of a Lagrangian lying inside a plus-sign quadric."""
    if q_sign(q) < 0:
        raise InvalidInput("requires a form of positive sign")
    found = [c for c in cosets(lag) if is_totally_singular(c, q)]
    if len(found) != 1:
        raise AssertionError(f"expected one singular coset, found {len(found)}")
    return found[0]

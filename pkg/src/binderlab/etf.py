"""Exact Gram matrices of the symplectic ETF family and the checks that run on
them: tightness, duals, triple products, regular simplices, phased
incidence lifts, spark and symmetries.

Off-diagonal entries are signed p-th roots of unity stored as exponents of
omega (see ``cyclo``); the diagonal is a single integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from . import gf
from .cyclo import (
    ZERO_ENTRY,
    CycloInt,
    CycloMatrix,
    cyclo_det,
    int_det,
    minus_one_exponent,
    signed_to_unit,
    unit_order,
    unit_to_signed,
)
from .quadratic import default_d, is_affine_quadric, quadric_size
from .symplectic import SymplecticSpace

FAMILIES = ("phi", "psi", "phi-dc", "phi-dc-hat", "psi-d", "psi-d-hat")
SUB_FAMILIES = FAMILIES[2:]


class InvalidFamily(ValueError):
    pass


@dataclass
class ExactGram:
    """Gram matrix with constant integer diagonal and unit off-diagonals."""

    labels: tuple[int, ...]
    p: int
    diag: int
    exps: np.ndarray
    vec_dim: int | None = None
    name: str = ""
    # is_tight result, computed once; the Gram is not mutated after construction
    _tight: tuple[bool, Fraction] | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.exps = np.asarray(self.exps, dtype=np.int64)
        n = len(self.labels)
        if self.exps.shape != (n, n):
            raise ValueError("exponent matrix does not match labels")
        m = unit_order(self.p)
        off = ~np.eye(n, dtype=bool)
        e = self.exps
        nz = off & (e != ZERO_ENTRY)
        if ((e[nz] < 0) | (e[nz] >= m)).any():
            raise ValueError("exponents out of range")
        et = e.T
        if not ((e == ZERO_ENTRY) == (et == ZERO_ENTRY))[off].all():
            raise ValueError("support is not symmetric")
        if ((e[nz] + et[nz]) % m).any():
            raise ValueError("Gram matrix is not Hermitian")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return unit_order(self.p)

    def entry(self, i: int, j: int) -> CycloInt:
        if i == j:
            return CycloInt.from_int(self.diag, self.p)
        e = int(self.exps[i, j])
        if e == ZERO_ENTRY:
            return CycloInt.from_int(0, self.p)
        return CycloInt.unit(e, self.p)

    def signed(self, i: int, j: int) -> tuple[int, int]:
        return unit_to_signed(int(self.exps[i, j]), self.p)

    def cyclo(self) -> CycloMatrix:
        return CycloMatrix.from_units(self.exps, self.p, self.diag)

    def integer_matrix(self) -> np.ndarray:
        """Dense integer matrix; only for p = 2."""
        if self.p != 2:
            raise ValueError("integer form only exists for p = 2")
        g = np.where(self.exps == 0, 1, -1)
        g[self.exps == ZERO_ENTRY] = 0
        np.fill_diagonal(g, self.diag)
        return g

    def render_label(self, i: int) -> str:
        if self.vec_dim is None:
            return str(self.labels[i])
        return gf.render(self.labels[i], self.p, self.vec_dim)

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.labels)}

    def to_json(self) -> dict:
        off = []
        for i in range(self.n):
            for j in range(self.n):
                if i != j and self.exps[i, j] != ZERO_ENTRY:
                    eps, k = self.signed(i, j)
                    off.append([i, j, eps, k])
        out = {"n": self.n, "p": self.p, "diag": self.diag, "offdiag": off}
        if self.vec_dim is not None:
            out["labels"] = [self.render_label(i) for i in range(self.n)]
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "ExactGram":
        if isinstance(data, str):
            data = json.loads(data)
        n, p = int(data["n"]), int(data["p"])
        exps = np.full((n, n), ZERO_ENTRY, dtype=np.int64)
        for i, j, eps, k in data["offdiag"]:
            exps[i, j] = signed_to_unit(int(eps), int(k), p)
        np.fill_diagonal(exps, 0)
        labels = data.get("labels")
        if labels:
            dim = len(labels[0])
            return cls(tuple(gf.parse(s, p) for s in labels), p, int(data["diag"]), exps, dim)
        return cls(tuple(range(n)), p, int(data["diag"]), exps)


@dataclass(frozen=True)
class FrameFamily:
    tag: str
    p: int
    J: int
    D: frozenset[int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.tag not in FAMILIES:
            raise InvalidFamily(f"unknown family {self.tag!r}")
        if self.tag in SUB_FAMILIES:
            if self.p != 2:
                raise InvalidFamily("quadric sub-families need p = 2")
            if self.J < 2:
                raise InvalidFamily("quadric sub-families need J >= 2")
            if self.D is None:
                object.__setattr__(self, "D", default_d(self.J))
            assert self.D is not None
            if len(self.D) != quadric_size(self.J, 1) or not is_affine_quadric(self.D, self.J):
                raise InvalidFamily("D must be an affine quadric of size 2^{J-1}(2^J+1)")

    @property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace(self.p, self.J)

    def labels(self) -> list[int]:
        space = self.space
        if self.tag in ("phi", "psi"):
            return space.vectors()
        assert self.D is not None
        if self.tag in ("phi-dc", "phi-dc-hat"):
            return [v for v in space.vectors() if v not in self.D]
        return [v for v in space.vectors() if v in self.D]

    def diagonal(self) -> int:
        p, J = self.p, self.J
        return {
            "phi": p**J + 1,
            "psi": p**J - 1,
            "phi-dc": 2**J + 1,
            "phi-dc-hat": 2 ** (J - 1) - 1,
            "psi-d": 2**J - 1,
            "psi-d-hat": 2 ** (J - 1) + 1,
        }[self.tag]

    def negated(self) -> bool:
        return self.tag in ("psi", "phi-dc-hat", "psi-d")

    def span_dimension(self) -> int:
        """Closed-form dimension of the span."""
        p, J = self.p, self.J
        return {
            "phi": p**J * (p**J + 1) // 2,
            "psi": p**J * (p**J - 1) // 2,
            "phi-dc": (4**J - 1) // 3,
            "phi-dc-hat": 2 ** (J - 1) * (2**J - 1) - (4**J - 1) // 3,
            "psi-d": (4**J - 1) // 3,
            "psi-d-hat": 2 ** (J - 1) * (2**J + 1) - (4**J - 1) // 3,
        }[self.tag]


def gram_build(family: FrameFamily) -> ExactGram:
    space = family.space
    labels = family.labels()
    b = space.form_table(labels)
    p = family.p
    exps = (b * (unit_order(p) // p)) % unit_order(p)
    if family.negated():
        exps = (exps + minus_one_exponent(p)) % unit_order(p)
    np.fill_diagonal(exps, 0)
    return ExactGram(tuple(labels), p, family.diagonal(), exps, space.dim, family.tag)


def character_gram(space: SymplecticSpace, shift: int, sign: int = 1) -> ExactGram:
    """shift * I + sign * Gamma as a Gram matrix (diagonal shift + sign)."""
    labels = space.vectors()
    p = space.p
    exps = (space.form_table(labels) * (unit_order(p) // p)) % unit_order(p)
    if sign < 0:
        exps = (exps + minus_one_exponent(p)) % unit_order(p)
    np.fill_diagonal(exps, 0)
    return ExactGram(tuple(labels), p, shift + sign, exps, space.dim)


# ---------------------------------------------------------------------------
# bounds and tightness


@dataclass(frozen=True)
class SqrtValue:
    """Nonnegative square root of a rational, kept exact."""

    radicand: Fraction

    def exact(self) -> Fraction | None:
        num, den = self.radicand.numerator, self.radicand.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None

    def integer(self) -> int | None:
        v = self.exact()
        return int(v) if v is not None and v.denominator == 1 else None


def welch_spark_bounds(n: int, dim: int | Fraction) -> tuple[SqrtValue, bool]:
    """S = sqrt(D(N-1)/(N-D)); the flag says whether S is an integer."""
    dim = Fraction(dim)
    if not 0 < dim < n:
        raise ValueError("need 0 < D < N")
    s = SqrtValue(dim * (n - 1) / (n - dim))
    return s, s.integer() is not None


def is_tight(g: ExactGram) -> tuple[bool, Fraction]:
    """Whether G^2 = A G, with A read off the (0,0) entries."""
    if g._tight is None:
        g._tight = _tightness(g)
    return g._tight


def _tightness(g: ExactGram) -> tuple[bool, Fraction]:
    c = g.cyclo()
    sq = c @ c
    if g.diag == 0:
        return False, Fraction(0)
    top = sq.entry(0, 0)
    if not top.is_rational():
        return False, Fraction(0)
    a = Fraction(top.coeffs[0], g.diag)
    ok = sq.scale(a.denominator).equals(c.scale(a.numerator))
    return ok, a


def frame_dimension(g: ExactGram) -> Fraction:
    """Rank via Tr(G)/A for a tight Gram matrix."""
    ok, a = is_tight(g)
    if not ok:
        raise ValueError("Gram matrix is not tight")
    return Fraction(g.n * g.diag) / a


def dual_gram(g: ExactGram) -> ExactGram:
    """A I - G."""
    ok, a = is_tight(g)
    if not ok:
        raise ValueError("Gram matrix is not tight")
    if a.denominator != 1:
        raise ValueError("tight constant is not an integer")
    e = g.exps.copy()
    off = e != ZERO_ENTRY
    e[off] = (e[off] + minus_one_exponent(g.p)) % g.m
    np.fill_diagonal(e, 0)
    return ExactGram(g.labels, g.p, int(a) - g.diag, e, g.vec_dim, g.name + "-dual" if g.name else "")


def simplex_size(g: ExactGram) -> int | None:
    """S + 1 when S is an integer, else None."""
    dim = frame_dimension(g)
    if dim >= g.n:
        return None
    s, integral = welch_spark_bounds(g.n, dim)
    return s.integer() + 1 if integral else None  # type: ignore[operator]


# ---------------------------------------------------------------------------
# triple products and simplices


def triple_product(g: ExactGram, i: int, j: int, k: int) -> tuple[int, int]:
    if len({i, j, k}) != 3:
        raise ValueError("indices must be pairwise distinct")
    e = g.exps
    if ZERO_ENTRY in (e[i, j], e[j, k], e[k, i]):
        raise ValueError("triple product of a zero entry")
    return unit_to_signed(int(e[i, j] + e[j, k] + e[k, i]), g.p)


def _all_triples_minus_one(g: ExactGram, idx: np.ndarray) -> bool:
    e = g.exps[np.ix_(idx, idx)]
    if (e[~np.eye(len(idx), dtype=bool)] == ZERO_ENTRY).any():
        return False
    # tp[i,j,k] = e[i,j] + e[j,k] + e[k,i]
    tp = (e[:, :, None] + e[None, :, :] + e.T[:, None, :]) % g.m
    n = len(idx)
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    distinct = (a != b) & (b != c) & (a != c)
    return bool((tp[distinct] == minus_one_exponent(g.p)).all())


def is_simplex(g: ExactGram, block: Iterable[int]) -> bool:
    """Every triple product inside the block is -1 and |block| = S + 1."""
    idx = np.array(sorted(set(block)), dtype=np.int64)
    k = simplex_size(g)
    if k is None or len(idx) != k:
        return False
    return _all_triples_minus_one(g, idx)


def anchored_simplex_check(g: ExactGram, block: Iterable[int], anchor: int) -> bool:
    """TP(anchor, i, j) = -1 for all distinct i, j in block minus anchor."""
    members = sorted(set(block))
    if anchor not in members:
        raise ValueError("anchor must belong to the block")
    k = simplex_size(g)
    if k is None or len(members) != k:
        return False
    rest = np.array([x for x in members if x != anchor], dtype=np.int64)
    e = g.exps
    row = e[anchor, rest]
    if (row == ZERO_ENTRY).any():
        return False
    sub = e[np.ix_(rest, rest)]
    if (sub[~np.eye(len(rest), dtype=bool)] == ZERO_ENTRY).any():
        return False
    tp = (row[:, None] + sub + e[rest, anchor][None, :]) % g.m
    off = ~np.eye(len(rest), dtype=bool)
    return bool((tp[off] == minus_one_exponent(g.p)).all())


# ---------------------------------------------------------------------------
# phased incidence


@dataclass
class PhasedIncidence:
    """Rows z_b / sqrt(lam) with z stored as omega exponents (ZERO_ENTRY off support)."""

    exps: np.ndarray
    lam: int
    a: Fraction
    holds: bool
    p: int = 2

    def gram_times_lam(self) -> CycloMatrix:
        z = CycloMatrix.from_units(self.exps, self.p)
        return z.conj_transpose() @ z


def phase_incidence(g: ExactGram, blocks: Sequence[Sequence[int]]) -> PhasedIncidence:
    """Phase a BIBD of simplices so that Psi* Psi = A I - G exactly."""
    from .design import IncidenceStructure, verify_bibd

    check = verify_bibd(IncidenceStructure(tuple(range(g.n)), tuple(tuple(sorted(b)) for b in blocks)))
    if not check.ok:
        raise ValueError(f"blocks do not form a BIBD: {check.witness}")
    for b in blocks:
        if not is_simplex(g, b):
            raise ValueError(f"block {sorted(b)} is not a regular simplex")
    ok, a = is_tight(g)
    lam = check.params.lam
    z = np.full((len(blocks), g.n), ZERO_ENTRY, dtype=np.int64)
    half = minus_one_exponent(g.p)
    for r, b in enumerate(blocks):
        b = sorted(b)
        n0 = b[0]
        z[r, n0] = 0
        for n in b[1:]:
            z[r, n] = (int(g.exps[n0, n]) + half) % g.m
    zc = CycloMatrix.from_units(z, g.p)
    lhs = zc.conj_transpose() @ zc
    dual = dual_gram(g)
    rhs = dual.cyclo().scale(lam)
    return PhasedIncidence(z, lam, a, lhs.equals(rhs), g.p)


# ---------------------------------------------------------------------------
# spark


SPARK_MAX_N = 20


def principal_det(g: ExactGram, idx: Sequence[int]) -> CycloInt:
    if g.p == 2:
        e = g.exps
        rows = [[g.diag if i == j else (0 if e[i, j] == ZERO_ENTRY else (1 if e[i, j] == 0 else -1)) for j in idx] for i in idx]
        return CycloInt.from_int(int_det(rows), 2)
    rows_c = [[g.entry(i, j) for j in idx] for i in idx]
    return cyclo_det(rows_c, g.p)


def spark_exhaustive(g: ExactGram, size_cap: int | None = None) -> tuple[int | None, list[tuple[int, ...]]]:
    """Smallest k with a singular principal k x k submatrix, and all such k-sets."""
    if g.n > SPARK_MAX_N:
        raise gf.LimitExceeded(f"spark search limited to N <= {SPARK_MAX_N}")
    cap = g.n if size_cap is None else min(size_cap, g.n)
    for k in range(1, cap + 1):
        singular = [c for c in combinations(range(g.n), k) if principal_det(g, c).is_zero()]
        if singular:
            return k, singular
    return None, []


# ---------------------------------------------------------------------------
# symmetries


def verify_symmetry(g: ExactGram, perm: Sequence[int]) -> tuple[bool, list[int] | tuple[int, int]]:
    """Unimodular z with G(s i, s j) = conj(z_i) z_j G(i, j), propagated from
    index 0; returns omega exponents of z, or a violating pair."""
    n = g.n
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    e = g.exps
    m = g.m
    pe = e[np.ix_(perm, perm)]
    z: list[int | None] = [None] * n
    z[0] = 0
    order = [0]
    for i in order:
        for j in range(n):
            if z[j] is None and e[i, j] != ZERO_ENTRY:
                if pe[i, j] == ZERO_ENTRY:
                    return False, (i, j)
                z[j] = (z[i] + int(pe[i, j]) - int(e[i, j])) % m  # type: ignore[operator]
                order.append(j)
    for j in range(n):
        if z[j] is None:
            z[j] = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if (e[i, j] == ZERO_ENTRY) != (pe[i, j] == ZERO_ENTRY):
                return False, (i, j)
            if e[i, j] != ZERO_ENTRY and (int(pe[i, j]) - int(e[i, j]) + z[i] - z[j]) % m:  # type: ignore[operator]
                return False, (i, j)
    return True, [int(x) for x in z]  # type: ignore[arg-type]


def tp_preserved(g: ExactGram, perm: Sequence[int]) -> bool:
    """TP(s i, s j, s k) = TP(i, j, k) for every triple."""
    e = g.exps
    pe = e[np.ix_(perm, perm)]
    tp = (e[:, :, None] + e[None, :, :] + e.T[:, None, :]) % g.m
    ptp = (pe[:, :, None] + pe[None, :, :] + pe.T[:, None, :]) % g.m
    return bool((tp == ptp).all())

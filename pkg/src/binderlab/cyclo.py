"""Exact arithmetic in the cyclotomic integers Z[zeta_p].

Scalars use the basis 1, zeta, ..., zeta^(p-2).  Matrices use the redundant
basis 1, ..., zeta^(p-1), where an element vanishes iff all of its
coefficients agree (the only relation is 1 + zeta + ... + zeta^(p-1) = 0).
For p = 2 the ring is Z and zeta = -1.

Entries of the Gram matrices are signed p-th roots of unity.  They are stored
as exponents e of omega = exp(2 pi i / m) where m = 2p for odd p and m = 2 for
p = 2, so that products of entries become sums of exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

import numpy as np

ZERO_ENTRY = -1


def unit_order(p: int) -> int:
    return 2 if p == 2 else 2 * p


def zeta_exponent(k: int, p: int) -> int:
    """omega-exponent of zeta_p^k."""
    return (k * (unit_order(p) // p)) % unit_order(p)


def minus_one_exponent(p: int) -> int:
    return unit_order(p) // 2


def unit_to_signed(e: int, p: int) -> tuple[int, int]:
    """omega^e as (eps, k) meaning eps * zeta_p^k, with k = 0 when p = 2."""
    m = unit_order(p)
    e %= m
    if p == 2:
        return (1, 0) if e == 0 else (-1, 0)
    if e % 2 == 0:
        return 1, (e // 2) % p
    return -1, ((e - p) // 2) % p


def signed_to_unit(eps: int, k: int, p: int) -> int:
    e = zeta_exponent(k, p)
    if eps < 0:
        e += minus_one_exponent(p)
    return e % unit_order(p)


@dataclass(frozen=True)
class CycloInt:
    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_int(cls, n: int, p: int) -> "CycloInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def from_redundant(cls, c: Sequence[int], p: int) -> "CycloInt":
        top = c[p - 1]
        return cls(p, tuple(int(c[k]) - int(top) for k in range(p - 1)))

    @classmethod
    def unit(cls, e: int, p: int) -> "CycloInt":
        eps, k = unit_to_signed(e, p)
        c = [0] * p
        c[k] = eps
        return cls.from_redundant(c, p)

    def redundant(self) -> list[int]:
        return list(self.coeffs) + [0]

    def __add__(self, other: "CycloInt") -> "CycloInt":
        return CycloInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        return CycloInt(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycloInt") -> "CycloInt":
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycloInt.from_redundant(out, p)

    def galois(self, a: int) -> "CycloInt":
        """Image under zeta -> zeta^a."""
        p = self.p
        out = [0] * p
        for k, c in enumerate(self.coeffs):
            out[(a * k) % p] += c
        return CycloInt.from_redundant(out, p)

    def conj(self) -> "CycloInt":
        return self.galois(self.p - 1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def norm(self) -> int:
        acc = self
        for a in range(2, self.p):
            acc = acc * self.galois(a)
        assert acc.is_rational()
        return acc.coeffs[0]

    def exact_div(self, other: "CycloInt") -> "CycloInt":
        """self / other, which must lie in Z[zeta]."""
        co = CycloInt.from_int(1, self.p)
        for a in range(2, self.p):
            co = co * other.galois(a)
        n = (other * co).coeffs[0]
        num = self * co
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[zeta]")
        if any(c % n for c in num.coeffs):
            raise ArithmeticError("quotient is not a cyclotomic integer")
        return CycloInt(self.p, tuple(c // n for c in num.coeffs))

    def __str__(self) -> str:
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


T = TypeVar("T")


def bareiss_det(
    matrix: Sequence[Sequence[T]],
    zero: T,
    one: T,
    is_zero: Callable[[T], bool],
    exact_div: Callable[[T, T], T],
) -> T:
    """Fraction-free determinant over an integral domain."""
    n = len(matrix)
    if n == 0:
        return one
    a = [list(row) for row in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(a[k][k]):
            swap = next((r for r in range(k + 1, n) if not is_zero(a[r][k])), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)  # type: ignore[operator]
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det  # type: ignore[operator]


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    return bareiss_det(matrix, 0, 1, lambda x: x == 0, lambda x, y: x // y)


def cyclo_det(matrix: Sequence[Sequence[CycloInt]], p: int) -> CycloInt:
    return bareiss_det(
        matrix,
        CycloInt.from_int(0, p),
        CycloInt.from_int(1, p),
        lambda x: x.is_zero(),
        lambda x, y: x.exact_div(y),
    )


class CycloMatrix:
    """Matrix over Z[zeta_p] as an integer array of shape (p, rows, cols)."""

    def __init__(self, coeffs: np.ndarray, p: int) -> None:
        self.c = coeffs.astype(np.int64, copy=False)
        self.p = p

    @classmethod
    def from_units(cls, exps: np.ndarray, p: int, diag: int | None = None) -> "CycloMatrix":
        """Entries omega^e from an exponent array; ZERO_ENTRY marks zeros."""
        m = unit_order(p)
        rows, cols = exps.shape
        c = np.zeros((p, rows, cols), dtype=np.int64)
        mask = exps != ZERO_ENTRY
        e = np.where(mask, exps, 0) % m
        if p == 2:
            c[0][mask & (e == 0)] = 1
            c[1][mask & (e == 1)] = 1
        else:
            even = (e % 2) == 0
            k = np.where(even, e // 2, (e - p) // 2) % p
            sgn = np.where(even, 1, -1)
            for kk in range(p):
                sel = mask & (k == kk)
                c[kk][sel] = sgn[sel]
        if diag is not None:
            idx = np.arange(min(rows, cols))
            c[:, idx, idx] = 0
            c[0, idx, idx] = diag
        return cls(c, p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.c.shape[1], self.c.shape[2]

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        p = self.p
        out = np.zeros((p, self.shape[0], other.shape[1]), dtype=np.int64)
        for k in range(p):
            if not self.c[k].any():
                continue
            for l in range(p):
                if other.c[l].any():
                    out[(k + l) % p] += self.c[k] @ other.c[l]
        return CycloMatrix(out, p)

    def scale(self, n: int) -> "CycloMatrix":
        return CycloMatrix(self.c * n, self.p)

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return CycloMatrix(self.c - other.c, self.p)

    def conj_transpose(self) -> "CycloMatrix":
        p = self.p
        out = np.zeros((p, self.shape[1], self.shape[0]), dtype=np.int64)
        for k in range(p):
            out[(-k) % p] += self.c[k].T
        return CycloMatrix(out, p)

    def is_zero(self) -> bool:
        return bool((self.c == self.c[0:1]).all())

    def entry(self, i: int, j: int) -> CycloInt:
        return CycloInt.from_redundant([int(x) for x in self.c[:, i, j]], self.p)

    def equals(self, other: "CycloMatrix") -> bool:
        return (self - other).is_zero()

    @classmethod
    def identity(cls, n: int, p: int, scale: int = 1) -> "CycloMatrix":
        c = np.zeros((p, n, n), dtype=np.int64)
        c[0] = np.eye(n, dtype=np.int64) * scale
        return cls(c, p)

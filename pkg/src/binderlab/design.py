"""Incidence structures: BIBD verification, arcs and ovals, cross-oval
histograms, the inside/straddling decomposition of affine Lagrangian designs,
and an exact search for resolutions into balanced classes."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Hashable, Iterable, Sequence

import numpy as np

from .quadratic import is_affine_quadric, quadric_size


class RaggedBlocks(ValueError):
    pass


@dataclass(frozen=True)
class IncidenceStructure:
    vertices: tuple[Hashable, ...]
    blocks: tuple[tuple[Hashable, ...], ...]

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("repeated vertices")
        for b in self.blocks:
            if not vs.issuperset(b) or len(set(b)) != len(b):
                raise ValueError(f"block {b} is not a subset of the vertices")

    @classmethod
    def build(cls, vertices: Iterable[Hashable], blocks: Iterable[Iterable[Hashable]]) -> "IncidenceStructure":
        vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        blocks = [tuple(b) for b in blocks]
        for b in blocks:
            if not pos.keys() >= set(b):
                raise ValueError(f"block {b} is not a subset of the vertices")
        return cls(vertices, tuple(tuple(sorted(b, key=pos.__getitem__)) for b in blocks))

    def matrix(self) -> np.ndarray:
        pos = {v: i for i, v in enumerate(self.vertices)}
        x = np.zeros((len(self.blocks), len(self.vertices)), dtype=np.int64)
        for r, b in enumerate(self.blocks):
            for v in b:
                x[r, pos[v]] = 1
        return x

    def block_size(self) -> int:
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise RaggedBlocks(f"block sizes {sorted(sizes)}")
        return sizes.pop()

    def to_json(self, render=str) -> dict:
        return {"vertices": [render(v) for v in self.vertices], "blocks": [[render(v) for v in b] for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict | str) -> "IncidenceStructure":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.build(data["vertices"], data["blocks"])


@dataclass(frozen=True)
class BibdParams:
    V: int
    K: int
    lam: int
    R: int
    B: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.V, self.K, self.lam, self.R, self.B)

    def relations_hold(self) -> bool:
        return (
            self.lam * (self.V - 1) == self.R * (self.K - 1)
            and self.B * self.K == self.V * self.R
            and (self.K == self.V or self.V <= self.B)
        )


@dataclass
class BibdCheck:
    ok: bool
    params: BibdParams | None = None
    witness: tuple | None = None


def gram_of_incidence(x: np.ndarray) -> np.ndarray:
    """X^t X; float64 products are exact while counts stay below 2^53."""
    if x.shape[0] * 1.0 >= 2.0**52:
        return x.T @ x
    xf = x.astype(np.float64)
    return np.rint(xf.T @ xf).astype(np.int64)


def verify_bibd(inc: IncidenceStructure) -> BibdCheck:
    """X^t X = (R - lam) I + lam J, else a violating vertex pair."""
    k = inc.block_size()
    x = inc.matrix()
    v = len(inc.vertices)
    g = gram_of_incidence(x)
    diag = np.diag(g)
    if (diag != diag[0]).any():
        i = int(np.nonzero(diag != diag[0])[0][0])
        return BibdCheck(False, witness=(inc.vertices[0], inc.vertices[i]))
    r = int(diag[0])
    if v == 1:
        lam = 0
    else:
        off = g[~np.eye(v, dtype=bool)]
        lam = int(off[0])
        if (off != lam).any():
            bad = np.argwhere((g != lam) & ~np.eye(v, dtype=bool))[0]
            return BibdCheck(False, witness=(inc.vertices[bad[0]], inc.vertices[bad[1]]))
    params = BibdParams(v, k, lam, r, len(inc.blocks))
    if not params.relations_hold():
        return BibdCheck(False, params, witness=("relations",))
    return BibdCheck(True, params)


# ---------------------------------------------------------------------------
# arcs and ovals


def oval_bound(inc: IncidenceStructure) -> Fraction:
    k = inc.block_size()
    return Fraction(len(inc.vertices) - 1, k - 1) + 1


def intersection_sizes(points: Iterable[Hashable], inc: IncidenceStructure) -> Counter:
    s = set(points)
    return Counter(len(s.intersection(b)) for b in inc.blocks)


def is_arc(points: Iterable[Hashable], inc: IncidenceStructure) -> bool:
    return max(intersection_sizes(points, inc), default=0) <= 2


def is_oval(points: Iterable[Hashable], inc: IncidenceStructure) -> bool:
    """Nonempty and meeting every block in 0 or 2 points."""
    points = list(points)
    if not points:
        return False
    if not verify_bibd(inc).ok:
        raise ValueError("oval test needs a BIBD")
    ok = set(intersection_sizes(points, inc)) <= {0, 2}
    if ok and len(set(points)) != oval_bound(inc):
        raise AssertionError("oval does not attain the arc bound")
    return ok


def cross_oval_matrix(a: Sequence[Iterable[Hashable]], b: Sequence[Iterable[Hashable]]) -> Counter:
    """Histogram of |x meet y| over x in a, y in b."""
    bs = [frozenset(y) for y in b]
    hist: Counter = Counter()
    for x in a:
        xs = frozenset(x)
        hist.update(len(xs & y) for y in bs)
    return hist


def is_cross_oval(hist: Counter) -> bool:
    return set(hist) <= {0, 2}


# ---------------------------------------------------------------------------
# decomposition relative to an affine quadric


def prod_range(lo: int, hi: int, f) -> int:
    return prod(f(j) for j in range(lo, hi + 1))


def expected_decomposition_params(J: int) -> dict[str, tuple[int, int, int, int, int]]:
    """Closed forms for the four designs of the decomposition."""
    t = lambda j: 2**j + 1  # noqa: E731
    full = (4**J, 2**J, prod_range(1, J - 1, t), prod_range(1, J, t), 2**J * prod_range(1, J, t))
    inside = (2 ** (J - 1) * (2**J + 1), 2**J, prod_range(0, J - 2, t), prod_range(0, J - 1, t), prod_range(1, J, t))
    outside = (
        2 ** (J - 1) * (2**J - 1),
        2 ** (J - 1),
        prod_range(2, J - 1, t),
        prod_range(2, J, t),
        (2**J - 1) * prod_range(2, J, t),
    )
    last = (
        2 ** (J - 1) * (2**J + 1),
        2 ** (J - 1),
        (2 ** (J - 1) - 1) * prod_range(1, J - 2, t),
        (2**J - 1) * prod_range(1, J - 1, t),
        (2**J - 1) * prod_range(1, J, t),
    )
    return {"full": full, "inside": inside, "outside": outside, "last": last}


@dataclass
class Decomposition:
    vertices: tuple[int, ...]
    x: np.ndarray
    x_outside: np.ndarray
    x_last: np.ndarray
    x_inside: np.ndarray
    params: dict[str, BibdParams | None]
    expected: dict[str, tuple[int, int, int, int, int]]
    halves_ok: bool
    multiplicity: Counter
    identity_holds: bool
    inside_blocks: list[tuple[int, ...]] = field(default_factory=list)
    outside_blocks: list[tuple[int, ...]] = field(default_factory=list)
    last_blocks: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.halves_ok
            and set(self.multiplicity.values()) == {3}
            and self.identity_holds
            and all(self.params[k] is not None and self.params[k].as_tuple() == self.expected[k] for k in self.expected)  # type: ignore[union-attr]
        )


def decompose_incidence(
    blocks: Sequence[Iterable[int]],
    d: Iterable[int],
    vertices: Sequence[int],
    sort_key=None,
) -> Decomposition:
    """Split affine Lagrangian blocks by an affine quadric D.

    Columns: D^c then D, each in the given vertex order.  Rows: straddling
    blocks grouped by their D^c-part (groups in order of the D^c-part, each
    group ordered by D-part), then blocks inside D.
    """
    dset = frozenset(d)
    J = (len(vertices).bit_length() - 1) // 2
    if len(vertices) != 4**J or len(dset) != quadric_size(J, 1) or not is_affine_quadric(dset, J):
        raise ValueError("D must be an affine quadric of size 2^{J-1}(2^J+1)")
    order = {v: i for i, v in enumerate(vertices)}
    if sort_key is None:
        sort_key = order.__getitem__

    def srt(xs: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(xs, key=sort_key))

    def key(b: tuple[int, ...]) -> list[int]:
        return [sort_key(v) for v in b]

    blocks = [srt(b) for b in blocks]
    n = len(blocks[0]) if blocks else 0
    inside = sorted((b for b in blocks if dset.issuperset(b)), key=key)
    straddle = [b for b in blocks if not dset.issuperset(b)]
    halves_ok = all(2 * sum(v in dset for v in b) == n for b in straddle)

    def out_part(b: tuple[int, ...]) -> tuple[int, ...]:
        return srt(v for v in b if v not in dset)

    def in_part(b: tuple[int, ...]) -> tuple[int, ...]:
        return srt(v for v in b if v in dset)

    multiplicity = Counter(out_part(b) for b in straddle)
    outside = sorted(multiplicity, key=key)
    rank = {c: i for i, c in enumerate(outside)}
    straddle.sort(key=lambda b: (rank[out_part(b)], key(in_part(b))))
    last = [in_part(b) for b in straddle]

    cols_out = [v for v in vertices if v not in dset]
    cols_in = [v for v in vertices if v in dset]
    x = IncidenceStructure.build(cols_out + cols_in, straddle + inside).matrix()
    x_outside = IncidenceStructure.build(cols_out, outside).matrix()
    x_last = IncidenceStructure.build(cols_in, last).matrix()
    x_inside = IncidenceStructure.build(cols_in, inside).matrix()

    identity = False
    if set(multiplicity.values()) == {3}:
        top = np.hstack([np.kron(x_outside, np.ones((3, 1), dtype=np.int64)), x_last])
        bottom = np.hstack([np.zeros((len(inside), len(cols_out)), dtype=np.int64), x_inside])
        identity = bool(np.array_equal(x, np.vstack([top, bottom])))

    def params(vs: list[int], bl: list[tuple[int, ...]]) -> BibdParams | None:
        if not bl:
            return None
        c = verify_bibd(IncidenceStructure.build(vs, bl))
        return c.params if c.ok else None

    return Decomposition(
        tuple(cols_out + cols_in),
        x,
        x_outside,
        x_last,
        x_inside,
        {
            "full": params(list(vertices), blocks),
            "inside": params(cols_in, inside),
            "outside": params(cols_out, outside),
            "last": params(cols_in, last),
        },
        expected_decomposition_params(J),
        halves_ok,
        multiplicity,
        identity,
        inside,
        outside,
        last,
    )


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    classes: list[list[tuple]] | None
    exhausted: bool
    nodes: int

    @property
    def found(self) -> bool:
        return self.classes is not None


def find_resolution(inc: IncidenceStructure, class_count: int | None = None, node_budget: int = 10_000_000) -> Resolution:
    """Partition the blocks into class_count classes of equal size, each with
    replication R/class_count at every vertex and, when class_count divides
    lam, every pair covered lam/class_count times.

    With the default class_count = R the classes are parallel classes.  A
    None result with exhausted=True is a certificate that no such partition
    exists; running out of budget raises instead.
    """
    check = verify_bibd(inc)
    if not check.ok or check.params is None:
        raise ValueError("resolution search needs a BIBD")
    prm = check.params
    c = prm.R if class_count is None else class_count
    if prm.R % c or prm.B % c:
        return Resolution(None, True, 0)
    rep = prm.R // c
    pair_cap = prm.lam // c if prm.lam % c == 0 else None
    pos = {v: i for i, v in enumerate(inc.vertices)}
    blocks = [tuple(pos[v] for v in b) for b in inc.blocks]
    pairs = [[(b[i], b[j]) for i in range(len(b)) for j in range(i + 1, len(b))] for b in blocks]
    nv = len(inc.vertices)
    cover = [[0] * nv for _ in range(c)]
    pair_count: list[dict[tuple[int, int], int]] = [dict() for _ in range(c)]
    assign: list[int] = [-1] * len(blocks)
    pair_limit = pair_cap if pair_cap is not None else prm.lam
    nodes = 0

    # most constrained first: order blocks by their first vertex
    order = sorted(range(len(blocks)), key=lambda i: blocks[i])

    def fits(k: int, bi: int) -> bool:
        if any(cover[k][v] >= rep for v in blocks[bi]):
            return False
        pc = pair_count[k]
        return all(pc.get(pr, 0) < pair_limit for pr in pairs[bi])

    def place(k: int, bi: int, delta: int) -> None:
        for v in blocks[bi]:
            cover[k][v] += delta
        pc = pair_count[k]
        for pr in pairs[bi]:
            pc[pr] = pc.get(pr, 0) + delta

    def rec(t: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise RuntimeError("resolution search budget exceeded")
        if t == len(order):
            return True
        bi = order[t]
        for k in range(min(used + 1, c)):
            if fits(k, bi):
                place(k, bi, 1)
                assign[bi] = k
                if rec(t + 1, max(used, k + 1)):
                    return True
                place(k, bi, -1)
                assign[bi] = -1
        return False

    if rec(0, 0):
        classes = [[inc.blocks[i] for i in range(len(blocks)) if assign[i] == k] for k in range(c)]
        for cls in classes:
            sub = Counter(v for b in cls for v in b)
            assert all(sub[v] == rep for v in inc.vertices)
            if pair_cap:
                pc = Counter(frozenset((b[i], b[j])) for b in cls for i in range(len(b)) for j in range(i + 1, len(b)))
                assert len(pc) == nv * (nv - 1) // 2 and set(pc.values()) == {pair_cap}
        return Resolution(classes, True, nodes)
    return Resolution(None, True, nodes)

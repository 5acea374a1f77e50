"""Binders: the index sets of an ETF whose vectors form a regular simplex.

Structural enumerators for the symplectic families sit next to a generic
anchored clique search over any exact Gram matrix, so each can be checked
against the other.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import gf
from .design import BibdCheck, IncidenceStructure, verify_bibd
from .etf import ExactGram, FrameFamily, gram_build, is_simplex, simplex_size
from .cyclo import ZERO_ENTRY, minus_one_exponent
from .quadratic import QuadraticForm, affine_quadric_source, quadric, quadric_size, translate
from .symplectic import (
    SymplecticSpace,
    cosets,
    enumerate_affine_lagrangians,
    enumerate_lagrangians,
)

Progress = Callable[[str], None]

# blocks of the J = 4 restricted search stay far below this
DEFAULT_NODE_BUDGET = 200_000_000


class BudgetExceeded(RuntimeError):
    """Search stopped early; carries the partial state."""

    def __init__(self, message: str, anchors_done: int, blocks: list[tuple[int, ...]]):
        super().__init__(message)
        self.anchors_done = anchors_done
        self.blocks = blocks


@dataclass
class BinderResult:
    name: str
    labels: tuple[int, ...]
    p: int
    dim: int | None
    blocks: list[tuple[int, ...]]
    method: str
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        blocks = sorted({tuple(sorted(b)) for b in self.blocks})
        if len(blocks) != len(self.blocks):
            raise AssertionError("duplicate blocks")
        if len({len(b) for b in blocks}) > 1:
            raise AssertionError("blocks of unequal size")
        self.blocks = blocks

    @property
    def empty(self) -> bool:
        return not self.blocks

    @property
    def block_size(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def render(self, i: int) -> str:
        if self.dim is None:
            return str(self.labels[i])
        return gf.render(self.labels[i], self.p, self.dim)

    def point_sets(self) -> list[frozenset[int]]:
        return [frozenset(self.labels[i] for i in b) for b in self.blocks]

    def rendered(self) -> list[list[str]]:
        return [[self.render(i) for i in b] for b in self.blocks]

    def incidence(self) -> IncidenceStructure:
        return IncidenceStructure(tuple(range(len(self.labels))), tuple(self.blocks))

    def bibd(self) -> BibdCheck | None:
        """BIBD verdict from the incidence identity; None for an empty binder."""
        if not self.blocks:
            return None
        return verify_bibd(self.incidence())

    def to_json(self) -> list[list[str]]:
        return self.rendered()


def verify_blocks(g: ExactGram, result: BinderResult) -> list[tuple[int, ...]]:
    """Blocks failing the full triple-product test (empty when all pass)."""
    if tuple(g.labels) != tuple(result.labels):
        raise ValueError("Gram and binder use different index sets")
    return [b for b in result.blocks if not is_simplex(g, b)]


# ---------------------------------------------------------------------------
# clique search on bitsets


def _bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask.astype(np.uint8), bitorder="little").tobytes(), "little")


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0


def _cliques(adj: Sequence[int], cand: int, need: int, prefix: list[int], out: list[tuple[int, ...]], ctr: _Counter) -> None:
    """Append prefix + C for every clique C of size need inside cand, ascending."""
    if need == 0:
        out.append(tuple(prefix))
        return
    if need == 1:
        while cand:
            low = cand & -cand
            out.append((*prefix, low.bit_length() - 1))
            cand ^= low
        return
    ctr.nodes += 1
    if ctr.nodes > ctr.budget:
        raise BudgetExceeded("node budget exceeded", 0, out)
    while cand.bit_count() >= need:
        low = cand & -cand
        i = low.bit_length() - 1
        cand ^= low
        nxt = cand & adj[i]
        if nxt.bit_count() >= need - 1:
            prefix.append(i)
            _cliques(adj, nxt, need - 1, prefix, out, ctr)
            prefix.pop()


def cliques_of_size(adj: Sequence[int], cand: int, size: int, budget: int = DEFAULT_NODE_BUDGET) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    _cliques(adj, cand, size, [], out, _Counter(budget))
    return out


def _anchor_task(args: tuple) -> list[tuple[int, ...]]:
    adj, anchor, cand, need, budget = args
    out: list[tuple[int, ...]] = []
    _cliques(adj, cand, need, [anchor], out, _Counter(budget))
    return out


def _run_anchors(
    tasks: list[tuple],
    threads: int,
    progress: Progress | None,
) -> list[tuple[int, ...]]:
    blocks: list[tuple[int, ...]] = []
    step = max(1, len(tasks) // 20)
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for t, found in enumerate(pool.map(_anchor_task, tasks, chunksize=max(1, len(tasks) // (4 * threads)))):
                blocks.extend(found)
                if progress and (t + 1) % step == 0:
                    progress(f"anchors {t + 1}/{len(tasks)}, blocks {len(blocks)}")
        return blocks
    for t, task in enumerate(tasks):
        try:
            blocks.extend(_anchor_task(task))
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), t, blocks + exc.blocks) from None
        if progress and (t + 1) % step == 0:
            progress(f"anchors {t + 1}/{len(tasks)}, blocks {len(blocks)}")
    return blocks


def _compatibility(g: ExactGram, anchor: int) -> np.ndarray:
    """c[i, j]: TP(anchor, i, j) = -1, all entries nonzero, i != j."""
    e = g.exps
    row = e[anchor]
    c = (row[:, None] + e + e[:, anchor][None, :]) % g.m == minus_one_exponent(g.p)
    c &= (e != ZERO_ENTRY) & (row != ZERO_ENTRY)[:, None] & (row != ZERO_ENTRY)[None, :]
    np.fill_diagonal(c, False)
    return c


def binder_generic(
    g: ExactGram,
    threads: int = 1,
    progress: Progress | None = None,
    budget: int = DEFAULT_NODE_BUDGET,
) -> BinderResult:
    """All (S+1)-subsets with every triple product -1, anchored at the block minimum."""
    start = time.perf_counter()
    k = simplex_size(g)
    if k is None or k > g.n:
        return BinderResult(g.name, g.labels, g.p, g.vec_dim, [], "generic", time.perf_counter() - start, ["S is not an integer"])
    tasks = []
    for a in range(g.n - k + 1):
        c = _compatibility(g, a)
        higher = np.arange(g.n) > a
        cand = _bits(higher & (g.exps[a] != ZERO_ENTRY))
        adj = [_bits(c[i] & higher) if i > a else 0 for i in range(g.n)]
        tasks.append((adj, a, cand, k - 1, budget))
    blocks = _run_anchors(tasks, threads, progress)
    return BinderResult(g.name, g.labels, g.p, g.vec_dim, blocks, "generic", time.perf_counter() - start)


# ---------------------------------------------------------------------------
# structural enumerators


def _positions(labels: Sequence[int]) -> dict[int, int]:
    return {v: i for i, v in enumerate(labels)}


def _result(name: str, labels: Sequence[int], p: int, dim: int, sets: Iterable[Iterable[int]], start: float, notes=()) -> BinderResult:
    pos = _positions(labels)
    blocks = [tuple(sorted(pos[v] for v in s)) for s in sets]
    return BinderResult(name, tuple(labels), p, dim, blocks, "structural", time.perf_counter() - start, list(notes))


def binder_symplectic(p: int, J: int) -> BinderResult:
    """Binder of the character-table ETF."""
    start = time.perf_counter()
    space = SymplecticSpace(p, J)
    labels = space.vectors()
    name = f"phi-p{p}-j{J}"
    if p > 2:
        return _result(name, labels, p, space.dim, [], start, ["empty for odd p"])
    if J == 1:
        return _result(name, labels, p, space.dim, [labels], start)
    if J > 2:
        return _result(name, labels, p, space.dim, [], start, ["2^J + 1 exceeds 2J + 1"])
    ref = quadric(QuadraticForm(J, -1))
    sets = {translate(ref, w) for w in labels}
    size = quadric_size(J, -1)
    for s in sets:
        if len(s) != size or affine_quadric_source(s, J) is None:
            raise AssertionError("translate is not an affine quadric of size 2^{J-1}(2^J - 1)")
    return _result(name, labels, p, space.dim, sets, start)


def binder_dual_symplectic(p: int, J: int) -> BinderResult:
    """Binder of the dual ETF: all affine Lagrangian subspaces."""
    start = time.perf_counter()
    space = SymplecticSpace(p, J)
    sets = [c.elements() for c in enumerate_affine_lagrangians(space)]
    return _result(f"psi-p{p}-j{J}", space.vectors(), p, space.dim, sets, start)


def _psi_d_hat_sets(J: int, d: Sequence[int], threads: int = 1, progress: Progress | None = None) -> list[frozenset[int]]:
    """Translates a + ({0} + S) inside D with S pairwise nonorthogonal, anchored at
    the lex-minimal member."""
    space = SymplecticSpace(2, J)
    labels = gf.lex_sorted(d, 2, space.dim)
    n = len(labels)
    k = 2 ** (J - 1) + 2
    tasks = []
    for a_pos, a in enumerate(labels):
        if n - a_pos < k:
            break
        shifted = [v ^ a for v in labels]
        table = space.form_table(shifted).astype(bool)
        higher = np.arange(n) > a_pos
        adj = [_bits(table[i] & higher) if i > a_pos else 0 for i in range(n)]
        tasks.append((adj, a_pos, _bits(higher), k - 1, DEFAULT_NODE_BUDGET))
    found = _run_anchors(tasks, threads, progress)
    return [frozenset(labels[i] for i in b) for b in found]


def binder_family(
    tag: str,
    J: int,
    d: Iterable[int] | None = None,
    threads: int = 1,
    progress: Progress | None = None,
    force_search: bool = False,
) -> BinderResult:
    """Binder of one of the six symplectic families (sub-families relative to D)."""
    if tag in ("phi", "psi"):
        fam = FrameFamily(tag, 2, J)
    else:
        fam = FrameFamily(tag, 2, J, None if d is None else frozenset(d))
    if force_search:
        g = gram_build(fam)
        return binder_generic(g, threads, progress)
    if tag == "phi":
        return binder_symplectic(2, J)
    if tag == "psi":
        return binder_dual_symplectic(2, J)
    start = time.perf_counter()
    space = SymplecticSpace(2, J)
    labels = fam.labels()
    dset = frozenset(fam.D)  # type: ignore[arg-type]
    if tag == "phi-dc":
        sets = [labels] if J == 2 else []
        return _result(tag, labels, 2, space.dim, sets, start, [] if sets else ["empty unless J = 2"])
    if tag == "psi-d":
        sets = []
        for lag in enumerate_lagrangians(space):
            inside = [c for c in cosets(lag) if dset.issuperset(c.elements())]
            if len(inside) != 1:
                raise AssertionError(f"{len(inside)} cosets of a Lagrangian inside D")
            sets.append(inside[0].elements())
        return _result(tag, labels, 2, space.dim, sets, start)
    if tag == "phi-dc-hat":
        parts: dict[frozenset[int], int] = {}
        for c in enumerate_affine_lagrangians(space):
            pts = frozenset(c.elements())
            if not dset.issuperset(pts):
                out = pts - dset
                parts[out] = parts.get(out, 0) + 1
        if set(parts.values()) != {3}:
            raise AssertionError("outside parts are not three-to-one")
        return _result(tag, labels, 2, space.dim, parts, start)
    if tag == "psi-d-hat":
        if J > 4:
            return _result(tag, labels, 2, space.dim, [], start, ["empty for J > 4"])
        sets = _psi_d_hat_sets(J, labels, threads, progress)
        return _result(tag, labels, 2, space.dim, sets, start)
    raise ValueError(f"unknown family {tag!r}")


# ---------------------------------------------------------------------------
# pair counts and nonorthogonal sets


@dataclass
class PairExtensions:
    count: int
    blocks: list[tuple[int, ...]]
    extensions: list[tuple[int, ...]]
    dim: int

    def rendered_blocks(self) -> list[list[str]]:
        return [[gf.render(v, 2, self.dim) for v in b] for b in self.blocks]

    def rendered_extensions(self) -> list[list[str]]:
        return [[gf.render(v, 2, self.dim) for v in b] for b in self.extensions]


def golden_d(J: int) -> frozenset[int]:
    """Quadric of the plus base form, which holds 0 and the all-ones vector for even J."""
    return frozenset(quadric(QuadraticForm(J, 1)))


def pair_extension_count(tag: str, J: int, pair: tuple[int, int], d: Iterable[int] | None = None) -> PairExtensions:
    """Binder blocks containing both members of the pair, with their other members."""
    a, b = pair
    if a == b:
        raise ValueError("pair members must be distinct")
    dim = 2 * J
    key = lambda v: gf.lex_key(v, 2, dim)  # noqa: E731
    if tag != "psi-d-hat":
        res = binder_family(tag, J, d)
        pos = _positions(res.labels)
        if a not in pos or b not in pos:
            raise ValueError("pair lies outside the index set")
        sets = [s for s in res.point_sets() if a in s and b in s]
    else:
        fam = FrameFamily(tag, 2, J, None if d is None else frozenset(d))
        dset = frozenset(fam.D)  # type: ignore[arg-type]
        if a not in dset or b not in dset:
            raise ValueError("pair lies outside D")
        space = SymplecticSpace(2, J)
        u = a ^ b
        # the remaining members x satisfy B(x + a, b + a) = 1 and are pairwise nonorthogonal after shifting by a
        cand = gf.lex_sorted([x for x in dset if x not in (a, b) and space.form(x ^ a, u)], 2, dim)
        table = space.form_table([x ^ a for x in cand]).astype(bool)
        adj = [_bits(row) for row in table]
        found = cliques_of_size(adj, (1 << len(cand)) - 1, 2 ** (J - 1))
        sets = [frozenset([a, b, *(cand[i] for i in c)]) for c in found]
    blocks = sorted((tuple(sorted(s, key=key)) for s in sets), key=lambda t: [key(v) for v in t])
    ext = sorted(
        (tuple(sorted((v for v in s if v not in (a, b)), key=key)) for s in sets),
        key=lambda t: [key(v) for v in t],
    )
    return PairExtensions(len(blocks), blocks, ext, dim)


def max_nonorthogonal_set(J: int) -> tuple[int, list[int]]:
    """Largest set of pairwise nonorthogonal vectors in F_2^{2J}, with a witness.

    Sp acts transitively on nonorthogonal pairs, so the first two members are
    fixed to e_1, e_2 without loss of generality.
    """
    if J > 4:
        raise gf.LimitExceeded("max_nonorthogonal_set is limited to J <= 4")
    space = SymplecticSpace(2, J)
    e1, e2 = 1, 2
    cand = [v for v in space.vectors() if space.form(v, e1) and space.form(v, e2)]
    table = space.form_table(cand).astype(bool) if cand else np.zeros((0, 0), bool)
    adj = [_bits(row) for row in table]
    best: list[int] = []

    def grow(clique: list[int], bits: int) -> None:
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        while bits and len(clique) + bits.bit_count() > len(best):
            low = bits & -bits
            i = low.bit_length() - 1
            bits ^= low
            clique.append(i)
            grow(clique, bits & adj[i])
            clique.pop()

    grow([], (1 << len(cand)) - 1)
    witness = gf.lex_sorted([e1, e2, *(cand[i] for i in best)], 2, space.dim)
    for x in witness:
        for y in witness:
            if x != y and not space.form(x, y):
                raise AssertionError("witness is not pairwise nonorthogonal")
    return len(witness), witness

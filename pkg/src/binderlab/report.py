"""Summary rows for the six families, binder probabilities, and the spread
split of the affine Lagrangian design."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb

from .binder import BinderResult, Progress, binder_family, verify_blocks
from .design import IncidenceStructure, verify_bibd
from .etf import FAMILIES, FrameFamily, frame_dimension, gram_build, simplex_size
from .symplectic import SymplecticSpace, cosets, enumerate_lagrangians, lagrangian_spread

DISPLAY = {
    "phi": "Phi",
    "psi": "Psi",
    "phi-dc": "Phi_Dc",
    "phi-dc-hat": "PhiHat_Dc",
    "psi-d": "Psi_D",
    "psi-d-hat": "PsiHat_D",
}

# rows (D, V, K, lam, R, B) with zeros marking an empty binder
SUMMARY_TABLES: dict[int, dict[str, tuple[int, int, int, int, int, int]]] = {
    2: {
        "phi": (10, 16, 6, 2, 6, 16),
        "psi": (6, 16, 4, 3, 15, 60),
        "phi-dc": (5, 6, 6, 1, 1, 1),
        "phi-dc-hat": (1, 6, 2, 1, 5, 15),
        "psi-d": (5, 10, 4, 2, 6, 15),
        "psi-d-hat": (5, 10, 4, 2, 6, 15),
    },
    3: {
        "phi": (36, 64, 10, 0, 0, 0),
        "psi": (28, 64, 8, 15, 135, 1080),
        "phi-dc": (21, 28, 10, 0, 0, 0),
        "phi-dc-hat": (7, 28, 4, 5, 45, 315),
        "psi-d": (21, 36, 8, 6, 30, 135),
        "psi-d-hat": (15, 36, 6, 8, 56, 336),
    },
    4: {
        "phi": (136, 256, 18, 0, 0, 0),
        "psi": (120, 256, 16, 135, 2295, 36720),
        "phi-dc": (85, 120, 18, 0, 0, 0),
        "phi-dc-hat": (35, 120, 8, 45, 765, 11475),
        "psi-d": (85, 136, 16, 30, 270, 2295),
        "psi-d-hat": (51, 136, 10, 64, 960, 13056),
    },
}


@dataclass
class ReportRow:
    family: str
    D: int
    V: int
    K: int
    lam: int
    R: int
    B: int
    verified: bool = True

    def values(self) -> tuple[int, int, int, int, int, int]:
        return (self.D, self.V, self.K, self.lam, self.R, self.B)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["name"] = DISPLAY[self.family]
        return out


def report_row(tag: str, J: int, threads: int = 1, progress: Progress | None = None, verify: bool = False) -> tuple[ReportRow, BinderResult]:
    fam = FrameFamily(tag, 2, J)
    g = gram_build(fam)
    dim = frame_dimension(g)
    if dim != fam.span_dimension() or dim.denominator != 1:
        raise AssertionError(f"{tag}: trace dimension {dim} differs from {fam.span_dimension()}")
    k = simplex_size(g)
    if k is None:
        raise AssertionError(f"{tag}: simplex size is not an integer")
    res = binder_family(tag, J, threads=threads, progress=progress)
    ok = True
    if verify:
        ok = not verify_blocks(g, res)
    if res.empty:
        return ReportRow(tag, int(dim), g.n, k, 0, 0, 0, ok), res
    check = res.bibd()
    if check is None or not check.ok or check.params is None:
        return ReportRow(tag, int(dim), g.n, k, -1, -1, len(res.blocks), False), res
    prm = check.params
    if prm.K != k or prm.V != g.n:
        ok = False
    return ReportRow(tag, int(dim), prm.V, prm.K, prm.lam, prm.R, prm.B, ok), res


def cmd_report_tables(J: int, threads: int = 1, progress: Progress | None = None, verify: bool = False) -> list[ReportRow]:
    """Rows for all six families at J in {2, 3, 4}."""
    if J not in (2, 3, 4):
        raise ValueError("tables exist for J in {2, 3, 4}")
    rows = []
    for tag in FAMILIES:
        if progress:
            progress(f"J={J} {tag}")
        rows.append(report_row(tag, J, threads, progress, verify)[0])
    return rows


def table_mismatches(J: int, rows: list[ReportRow]) -> list[str]:
    exp = SUMMARY_TABLES[J]
    out = []
    for r in rows:
        if r.values() != exp[r.family]:
            out.append(f"{r.family}: computed {r.values()} expected {exp[r.family]}")
        if not r.verified:
            out.append(f"{r.family}: verification failed")
    return out


def cmd_probability(tag: str, J: int) -> Fraction:
    """Chance that a uniformly random (S+1)-subset of indices is a binder block."""
    g = gram_build(FrameFamily(tag, 2, J))
    k = simplex_size(g)
    if k is None:
        return Fraction(0)
    res = binder_family(tag, J)
    return Fraction(len(res.blocks), comb(g.n, k))


@dataclass
class SpreadSplit:
    spread: IncidenceStructure
    residual: IncidenceStructure


def spread_split(J: int) -> SpreadSplit:
    """Cosets of a Lagrangian spread and cosets of the remaining Lagrangians."""
    space = SymplecticSpace(2, J)
    lines = lagrangian_spread(space).lines
    keys = {line.rows for line in lines}
    vertices = tuple(space.vectors())
    spread_blocks = [c.sorted_elements() for line in lines for c in cosets(line)]
    rest = [c.sorted_elements() for lag in enumerate_lagrangians(space) if lag.rows not in keys for c in cosets(lag)]
    spread = IncidenceStructure.build(vertices, spread_blocks)
    residual = IncidenceStructure.build(vertices, rest)
    for inc in (spread, residual):
        if not verify_bibd(inc).ok:
            raise AssertionError("spread split is not a pair of BIBDs")
    return SpreadSplit(spread, residual)

"""Command-line front end.

Every subcommand prints a human summary by default, or JSON/CSV on request,
and exits 0 only when all of its checks pass.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Any

from . import gf
from .binder import BinderResult, binder_family, binder_generic, binder_dual_symplectic, binder_symplectic, verify_blocks
from .design import (
    IncidenceStructure,
    cross_oval_matrix,
    decompose_incidence,
    find_resolution,
    intersection_sizes,
    is_cross_oval,
    oval_bound,
    verify_bibd,
)
from .etf import FAMILIES, ExactGram, FrameFamily, gram_build, spark_exhaustive
from .golden import FIXTURES, golden_check
from .quadratic import default_d, is_affine_quadric
from .report import DISPLAY, cmd_probability, cmd_report_tables, table_mismatches
from .symplectic import SymplecticSpace, enumerate_affine_lagrangians, enumerate_lagrangians, is_spread, lagrangian_spread


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def write_atomic(path: str | Path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(args: argparse.Namespace, payload: Any, human: str, table: list[list[Any]] | None = None) -> None:
    if getattr(args, "json", False):
        text = _dumps(payload)
    elif getattr(args, "csv", False) and table is not None:
        text = _csv(table)
    else:
        text = human if human.endswith("\n") else human + "\n"
    out = getattr(args, "out", None)
    if out:
        data = text if (getattr(args, "json", False) or getattr(args, "csv", False)) else _dumps(payload)
        write_atomic(out, data)
        print(human.rstrip("\n"))
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)


def _parse_d(arg: str | None, J: int) -> frozenset[int] | None:
    """D as a JSON file of vector strings or a comma-separated list."""
    if arg is None:
        return None
    if os.path.exists(arg):
        items = _load_json(arg)
    else:
        items = [s for s in arg.split(",") if s]
    pts = frozenset(gf.parse(s) for s in items)
    if not is_affine_quadric(pts, J):
        raise ValueError("--d is not an affine quadric")
    return pts


# ---------------------------------------------------------------------------
# subcommands


def cmd_lagrangians(args: argparse.Namespace) -> int:
    space = SymplecticSpace(args.p, args.j)
    if args.spread:
        spread = lagrangian_spread(space)
        ok = is_spread(space, spread.lines)
        lines = [[space.render(v) for v in s.sorted_elements()] for s in spread.lines]
        transition = ["".join(str(x) for x in row) for row in spread.transition]
        payload = {"lines": lines, "transition": transition, "verified": ok}
        human = "\n".join(" ".join(line) for line in lines) + f"\n{len(lines)} spread members, verified={ok}"
        _emit(args, payload, human, [["member", "vectors"]] + [[i, " ".join(s)] for i, s in enumerate(lines)])
        return 0 if ok else 1
    if args.affine:
        sets = [[space.render(v) for v in c.sorted_elements()] for c in enumerate_affine_lagrangians(space)]
    else:
        sets = [[space.render(v) for v in s.sorted_elements()] for s in enumerate_lagrangians(space)]
    kind = "affine Lagrangian subspaces" if args.affine else "Lagrangian subspaces"
    human = "\n".join(" ".join(s) for s in sets) + f"\n{len(sets)} {kind}"
    _emit(args, sets, human, [["index", "vectors"]] + [[i, " ".join(s)] for i, s in enumerate(sets)])
    return 0


def _family(args: argparse.Namespace) -> FrameFamily:
    d = _parse_d(getattr(args, "d", None), args.j)
    return FrameFamily(args.family, args.p, args.j, d)


def cmd_gram(args: argparse.Namespace) -> int:
    g = gram_build(_family(args))
    payload = g.to_json()
    human = f"{args.family} J={args.j} p={args.p}: N={g.n}, diag={g.diag}, {len(payload['offdiag'])} off-diagonal entries"
    _emit(args, payload, human)
    return 0


def _binder_for(args: argparse.Namespace) -> tuple[BinderResult, ExactGram]:
    if args.gram:
        g = ExactGram.from_json(_load_json(args.gram))
        return binder_generic(g, args.threads, _progress), g
    fam = _family(args)
    g = gram_build(fam)
    if args.p != 2:
        if args.family == "phi":
            res = binder_generic(g, args.threads, _progress) if args.force_search else binder_symplectic(args.p, args.j)
        else:
            res = binder_generic(g, args.threads, _progress) if args.force_search else binder_dual_symplectic(args.p, args.j)
        return res, g
    res = binder_family(args.family, args.j, fam.D, args.threads, _progress, args.force_search)
    return res, g


def cmd_binder(args: argparse.Namespace) -> int:
    res, g = _binder_for(args)
    ok = True
    name = res.name or args.family or "gram"
    if res.blocks:
        lines = [f"{name}: {len(res.blocks)} blocks of size {res.block_size} ({res.method}, {res.elapsed:.2f}s)"]
    else:
        lines = [f"{name}: empty binder ({res.method}, {res.elapsed:.2f}s)"]
    params = None
    if res.blocks:
        check = res.bibd()
        if check is not None and check.ok and check.params is not None:
            params = check.params.as_tuple()
            lines.append(f"BIBD (V,K,lam,R,B) = {params}")
        else:
            lines.append("blocks do not form a BIBD")
    if args.verify:
        bad = verify_blocks(g, res)
        ok = not bad
        lines.append(f"simplex check: {'all blocks pass' if ok else f'{len(bad)} blocks fail'}")
    if args.out and not args.csv:
        args.json = True
    _emit(args, res.rendered(), "\n".join(lines), [["block"]] + [[" ".join(b)] for b in res.rendered()])
    return 0 if ok else 1


def _incidence_from(path: str) -> IncidenceStructure:
    data = _load_json(path)
    if isinstance(data, list):
        vertices = sorted({v for b in data for v in b})
        return IncidenceStructure.build(vertices, data)
    return IncidenceStructure.from_json(data)


def cmd_design(args: argparse.Namespace) -> int:
    if args.action == "verify":
        inc = _incidence_from(args.file)
        check = verify_bibd(inc)
        if check.ok and check.params is not None:
            human = f"BIBD (V,K,lam,R,B) = {check.params.as_tuple()}"
            payload = {"ok": True, "params": list(check.params.as_tuple())}
        else:
            human = f"not a BIBD, witness {check.witness}"
            payload = {"ok": False, "witness": [str(w) for w in check.witness or ()]}
        if args.matrix:
            x = inc.matrix()
            write_atomic(args.matrix, _csv(x.tolist()))
        _emit(args, payload, human)
        return 0 if check.ok else 1
    if args.action == "ovals":
        inc = _incidence_from(args.file)
        if args.points:
            pts = [s for s in args.points.split(",") if s]
            hist = intersection_sizes(pts, inc)
            ok = set(hist) <= {0, 2}
            bound = oval_bound(inc)
            human = f"intersection sizes {dict(sorted(hist.items()))}, oval bound {bound}, oval={ok and len(set(pts)) == bound}"
            _emit(args, {"histogram": {str(k): v for k, v in sorted(hist.items())}, "bound": str(bound), "oval": ok}, human)
            return 0 if ok else 1
        other = _incidence_from(args.against)
        hist = cross_oval_matrix(inc.blocks, other.blocks)
        ok = is_cross_oval(hist)
        human = f"cross intersection histogram {dict(sorted(hist.items()))}, oval relation={ok}"
        _emit(args, {"histogram": {str(k): v for k, v in sorted(hist.items())}, "oval": ok}, human)
        return 0 if ok else 1
    if args.action == "decompose":
        d = _parse_d(args.d, args.j) or default_d(args.j)
        res = binder_dual_symplectic(2, args.j)
        dec = decompose_incidence(res.point_sets(), d, res.labels)
        rows = [[k, *(dec.params[k].as_tuple() if dec.params[k] else ()), *dec.expected[k]] for k in dec.expected]
        human = "\n".join(
            f"{k}: computed {dec.params[k].as_tuple() if dec.params[k] else None} expected {dec.expected[k]}" for k in dec.expected
        )
        human += f"\nhalves={dec.halves_ok} multiplicity={sorted(set(dec.multiplicity.values()))} identity={dec.identity_holds}"
        if args.matrix:
            write_atomic(args.matrix, _csv(dec.x.tolist()))
        payload = {
            "ok": dec.ok,
            "params": {k: (list(v.as_tuple()) if v else None) for k, v in dec.params.items()},
            "expected": {k: list(v) for k, v in dec.expected.items()},
            "identity": dec.identity_holds,
        }
        _emit(args, payload, human, [["design", "V", "K", "lam", "R", "B", "eV", "eK", "elam", "eR", "eB"]] + rows)
        return 0 if dec.ok else 1
    inc = _incidence_from(args.file)
    res = find_resolution(inc, args.classes)
    if res.found:
        human = f"resolution into {len(res.classes)} classes found after {res.nodes} nodes"
        payload = {"found": True, "classes": [[list(b) for b in c] for c in res.classes]}
    else:
        human = f"no resolution exists (exhaustive search, {res.nodes} nodes)"
        payload = {"found": False, "exhausted": res.exhausted}
    _emit(args, payload, human)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    rows = cmd_report_tables(args.j, args.threads, _progress, args.verify)
    bad = table_mismatches(args.j, rows)
    header = ["family", "D", "V", "K", "lam", "R", "B"]
    table = [header] + [[DISPLAY[r.family], *r.values()] for r in rows]
    human = "\n".join("".join(f"{c!s:>11}" for c in row) for row in table)
    human += "\n" + ("all rows match the reference table" if not bad else "\n".join(bad))
    _emit(args, {"j": args.j, "rows": [r.as_dict() for r in rows], "mismatches": bad}, human, table)
    return 0 if not bad else 1


def cmd_golden(args: argparse.Namespace) -> int:
    ids = sorted(FIXTURES) if args.fixture == "all" else [args.fixture]
    results = [golden_check(f) for f in ids]
    payload = [
        {"fixture": r.fixture, "ok": r.ok, "expected": r.expected, "computed": r.computed, "missing": r.missing, "extra": r.extra}
        for r in results
    ]
    _emit(args, payload, "\n".join(r.summary() for r in results))
    return 0 if all(r.ok for r in results) else 1


def cmd_probability_cli(args: argparse.Namespace) -> int:
    prob = cmd_probability(args.family, args.j)
    _emit(args, {"family": args.family, "j": args.j, "probability": str(prob)}, f"{prob} ~ {float(prob):.6g}")
    return 0


def cmd_spark(args: argparse.Namespace) -> int:
    g = ExactGram.from_json(_load_json(args.gram)) if args.gram else gram_build(_family(args))
    spark, subsets = spark_exhaustive(g, args.size_cap)
    rendered = [[g.render_label(i) for i in s] for s in subsets]
    human = f"spark {spark}, {len(subsets)} singular subsets of that size"
    _emit(args, {"spark": spark, "subsets": rendered}, human)
    return 0


# ---------------------------------------------------------------------------
# parser


def _output_flags(p: argparse.ArgumentParser) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--out", help="write the result to this file (atomically)")


def _family_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", choices=FAMILIES, required=required)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--j", type=int, required=required)
    p.add_argument("--d", help="affine quadric D: JSON file of vectors or comma-separated list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binderlab", description="Binders of symplectic ETFs and their block designs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lagrangians", help="enumerate Lagrangian subspaces, their cosets, or a spread")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--j", type=int, required=True)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--affine", action="store_true")
    kind.add_argument("--spread", action="store_true")
    _output_flags(p)
    p.set_defaults(run=cmd_lagrangians)

    p = sub.add_parser("gram", help="export an exact Gram matrix")
    _family_flags(p)
    _output_flags(p)
    p.set_defaults(run=cmd_gram)

    p = sub.add_parser("binder", help="enumerate a binder")
    _family_flags(p, required=False)
    p.add_argument("--gram", help="run the generic search on a Gram JSON file")
    p.add_argument("--force-search", action="store_true", help="use the generic search even where the answer is known")
    p.add_argument("--verify", action="store_true", help="re-check every block with the full simplex test")
    p.add_argument("--threads", type=int, default=1)
    _output_flags(p)
    p.set_defaults(run=cmd_binder)

    p = sub.add_parser("design", help="verify, oval, decompose and resolve block designs")
    p.add_argument("action", choices=["verify", "ovals", "decompose", "resolve"])
    p.add_argument("file", nargs="?", help="incidence JSON or block list JSON")
    p.add_argument("--against", help="second block list for cross-oval histograms")
    p.add_argument("--points", help="comma-separated point set to test as an oval")
    p.add_argument("--classes", type=int, help="number of resolution classes (default R)")
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--d", help="affine quadric D for decompose")
    p.add_argument("--matrix", help="also write the incidence matrix as 0/1 CSV")
    _output_flags(p)
    p.set_defaults(run=cmd_design)

    p = sub.add_parser("report", help="summary rows for the six families")
    p.add_argument("--j", type=int, required=True, choices=[2, 3, 4])
    p.add_argument("--verify", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    _output_flags(p)
    p.set_defaults(run=cmd_report)

    p = sub.add_parser("golden", help="diff recomputed data against the reference fixtures")
    p.add_argument("fixture", choices=sorted(FIXTURES) + ["all"])
    _output_flags(p)
    p.set_defaults(run=cmd_golden)

    p = sub.add_parser("probability", help="chance a random subset is a binder block")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--j", type=int, required=True)
    _output_flags(p)
    p.set_defaults(run=cmd_probability_cli)

    p = sub.add_parser("spark", help="exhaustive spark of a small Gram matrix")
    _family_flags(p, required=False)
    p.add_argument("--gram", help="Gram JSON file")
    p.add_argument("--size-cap", type=int)
    _output_flags(p)
    p.set_defaults(run=cmd_spark)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("binder", "spark") and not args.gram and (args.family is None or args.j is None):
        parser.error("--family and --j are required unless --gram is given")
    if args.command == "design" and args.action in ("verify", "ovals", "resolve") and not args.file:
        parser.error(f"design {args.action} needs a FILE")
    if args.command == "design" and args.action == "ovals" and not (args.points or args.against):
        parser.error("design ovals needs --points or --against")
    try:
        return args.run(args)
    except (ValueError, gf.LimitExceeded, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""Recompute the summary rows for J = 2, 3, 4 and compare them with the reference values."""

from __future__ import annotations

import argparse
import sys
import time

from binderlab.report import DISPLAY, cmd_report_tables, table_mismatches


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--j", type=int, nargs="*", default=[2, 3, 4], choices=[2, 3, 4])
    parser.add_argument("--verify", action="store_true", help="re-check every block with the full simplex test")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()
    failed = False
    for J in args.j:
        start = time.perf_counter()
        rows = cmd_report_tables(J, args.threads, verify=args.verify)
        bad = table_mismatches(J, rows)
        print(f"J={J} ({time.perf_counter() - start:.1f}s)")
        for r in rows:
            print(f"  {DISPLAY[r.family]:>10}  " + " ".join(f"{x:>6}" for x in r.values()))
        for line in bad:
            print(f"  MISMATCH {line}")
        failed |= bool(bad)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

"""Diff every reference fixture against freshly computed sets."""

from __future__ import annotations

import sys

from binderlab.golden import FIXTURES, golden_check


def main() -> int:
    results = [golden_check(f) for f in sorted(FIXTURES)]
    for r in results:
        print(r.summary())
        for s in r.missing:
            print("  missing", " ".join(s))
        for s in r.extra:
            print("  extra  ", " ".join(s))
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

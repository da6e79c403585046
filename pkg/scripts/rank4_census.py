#!/usr/bin/env python3
"""Print a minimal non-comatroid census as a TSV table."""

from __future__ import annotations

import argparse

from comatroid.census import minimal_non_comatroids


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-r", "--rank", type=int, default=4)
    ap.add_argument("-q", type=int, default=2)
    args = ap.parse_args()
    report = minimal_non_comatroids(args.rank, args.q)
    print(f"# q={report.q} r={report.r} scanned={report.scanned} "
          f"classes={len(report.classes)} [{report.seconds:.1f}s]")
    print(report.to_tsv(), end="")


if __name__ == "__main__":
    main()

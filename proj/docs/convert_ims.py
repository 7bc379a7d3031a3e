#!/usr/bin/env python3
"""Convert an IMS run-to-failure ASCII record to a single-column CSV.

Usage:
    python convert_ims.py 2004.02.15.23.22.39 "$SIOS_DATA_ROOT/ims/510.csv"

IMS records are tab-separated, one row per sample and one column per
accelerometer (second test: one column per bearing; first test: two).
Record 510 of the second test, taken at 2004.02.15.23.22.39, is the one
referenced by data/reproduce_manifest.csv; bearing 1 is column 1.
"""

import argparse
import sys
from pathlib import Path


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("record", help="IMS ASCII record, e.g. 2004.02.15.23.22.39")
    ap.add_argument("csv", help="output CSV path")
    ap.add_argument("--column", type=int, default=1,
                    help="1-based channel column (default: 1, bearing 1)")
    args = ap.parse_args()

    samples = []
    with open(args.record) as f:
        for line_no, line in enumerate(f, 1):
            fields = line.split()
            if not fields:
                continue
            if args.column < 1 or args.column > len(fields):
                sys.exit(f"{args.record}:{line_no}: has {len(fields)} columns, "
                         f"asked for column {args.column}")
            samples.append(fields[args.column - 1])

    out = Path(args.csv)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(samples) + "\n")
    print(f"{args.record}: wrote {len(samples)} samples "
          f"(column {args.column}) to {out}")


if __name__ == "__main__":
    main()

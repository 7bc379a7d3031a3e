#!/usr/bin/env python3
"""Convert a CWRU bearing .mat record to a single-column CSV.

Usage:
    python convert_cwru.py 105.mat "$SIOS_DATA_ROOT/cwru/105.csv"

Requires scipy (pip install scipy). The drive-end accelerometer channel
(*_DE_time) is extracted by default; records in data/reproduce_manifest.csv
all use that channel at 12 kHz.
"""

import argparse
import sys
from pathlib import Path

import scipy.io


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("mat", help=".mat record, e.g. 105.mat")
    ap.add_argument("csv", help="output CSV path")
    ap.add_argument("--channel", default="DE", choices=["DE", "FE", "BA"],
                    help="accelerometer channel (default: DE, drive end)")
    args = ap.parse_args()

    data = scipy.io.loadmat(args.mat)
    suffix = f"_{args.channel}_time"
    keys = sorted(k for k in data if k.endswith(suffix))
    if not keys:
        names = sorted(k for k in data if not k.startswith("__"))
        sys.exit(f"{args.mat}: no variable ending in {suffix}; found {names}")
    samples = data[keys[0]].ravel()

    out = Path(args.csv)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as f:
        for x in samples:
            f.write(repr(float(x)))
            f.write("\n")
    print(f"{args.mat}: wrote {len(samples)} samples from {keys[0]} to {out}")


if __name__ == "__main__":
    main()

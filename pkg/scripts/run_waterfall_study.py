#!/usr/bin/env python3
"""Waterfall comparison of the designed convolutional codes.

Simulates the four rate-0.9 / rate-0.75 codes with 6000-bit
zero-terminated blocks over an Eb/N0 grid and writes one BER CSV per
code, suitable for plotting with the frontend figure renderer.

Usage:
    python3 scripts/run_waterfall_study.py --out results/waterfall \
        [--min-frame-errors 50] [--max-frames 3000] [--workers 4]
"""

import argparse
import pathlib

from acldpc import (
    ArrayCodeSpec,
    ChannelPoint,
    build_array_exponents,
    run_ber_sweep,
    terminate,
    unwrap_exponents,
    write_ber_csv,
)
from acldpc.unwrap import ZERO_TERMINATED

BLOCK_BITS = 6000

CODES = {
    "c1-r09-proper-q43": (ArrayCodeSpec(q=43, r0=3, n0=30, delta=(0, 1, 2)),
                          [3.2, 3.4, 3.6, 3.8]),
    "c3-r09-improper-q71": (ArrayCodeSpec(q=71, r0=3, n0=30, delta=(0, 11, 37)),
                            [3.2, 3.4, 3.6, 3.8]),
    "c4-r075-proper-q71": (ArrayCodeSpec(q=71, r0=4, n0=16, delta=(0, 1, 2, 3)),
                           [2.2, 2.4, 2.6, 2.8]),
    "c5-r075-improper-q71": (ArrayCodeSpec(q=71, r0=4, n0=16, delta=(0, 11, 37, 70)),
                             [2.2, 2.4, 2.6, 2.8]),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--min-frame-errors", type=int, default=50)
    parser.add_argument("--max-frames", type=int, default=3000)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for label, (spec, grid) in CODES.items():
        sf = unwrap_exponents(build_array_exponents(spec))
        tc = terminate(sf, BLOCK_BITS // spec.n0, ZERO_TERMINATED)
        points = [ChannelPoint(e, sf.rate) for e in grid]
        records = run_ber_sweep(
            tc, points, min_frame_errors=args.min_frame_errors,
            max_frames=args.max_frames, seed=args.seed, workers=args.workers,
        )
        path = out / f"{label}.csv"
        write_ber_csv(path, records)
        print(f"{label}: wrote {path}")
        for r in records:
            print(f"  {r.ebno_db:4.1f} dB  frames={r.frames:6d}  ber={r.ber:.3e}")


if __name__ == "__main__":
    main()

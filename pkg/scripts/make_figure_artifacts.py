#!/usr/bin/env python3
"""Generate the artifacts behind the two-panel performance figure.

For each rate group (0.9 and 0.75) this produces:

  * one BER CSV per code (proper and improper shift sets),
  * a truncated-union-bound CSV for the proper code, from a Monte Carlo
    harvested low-weight spectrum,
  * a threshold JSON for the matching regular ensemble,

plus a ``figure.json`` spec consumable by the frontend renderer:

    python3 scripts/make_figure_artifacts.py --out results/figure --quick
    cd frontend && npm run render -- ../results/figure/figure.json

``--quick`` shrinks the simulation budgets so the whole run finishes in
a few minutes; drop it for smoother curves.
"""

import argparse
import json
import pathlib

from acldpc import (
    ArrayCodeSpec,
    ChannelPoint,
    EnsembleSpec,
    build_array_exponents,
    compute_tub,
    estimate_spectrum_mc,
    ga_threshold,
    run_ber_sweep,
    terminate,
    unwrap_exponents,
    write_ber_csv,
    write_tub_csv,
)
from acldpc.unwrap import TAIL_BITING, ZERO_TERMINATED

BLOCK_BITS = 6000

GROUPS = {
    "rate09": dict(
        title="rate 0.9",
        proper=ArrayCodeSpec(q=43, r0=3, n0=30, delta=(0, 1, 2)),
        improper=ArrayCodeSpec(q=71, r0=3, n0=30, delta=(0, 11, 37)),
        grid=[3.0, 3.2, 3.4, 3.6, 3.8, 4.0],
        harvest_ebno=3.8,
        ensemble=(3, 30),
        ebno_range=[2.8, 4.2],
    ),
    "rate075": dict(
        title="rate 0.75",
        proper=ArrayCodeSpec(q=71, r0=4, n0=16, delta=(0, 1, 2, 3)),
        improper=ArrayCodeSpec(q=71, r0=4, n0=16, delta=(0, 11, 37, 70)),
        grid=[2.0, 2.2, 2.4, 2.6, 2.8, 3.0],
        harvest_ebno=2.7,
        ensemble=(4, 16),
        ebno_range=[1.8, 3.2],
    ),
}


def terminated(spec: ArrayCodeSpec, block_bits: int):
    sf = unwrap_exponents(build_array_exponents(spec))
    return sf, terminate(sf, block_bits // spec.n0, ZERO_TERMINATED)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--quick", action="store_true",
                        help="small budgets (minutes instead of hours)")
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    min_fe = 20 if args.quick else 50
    max_frames = 400 if args.quick else 5000
    harvest_frames = 300 if args.quick else 3000

    panels = []
    for key, g in GROUPS.items():
        inputs = []
        for kind in ("proper", "improper"):
            spec = g[kind]
            sf, tc = terminated(spec, BLOCK_BITS)
            records = run_ber_sweep(
                tc, [ChannelPoint(e, sf.rate) for e in g["grid"]],
                min_frame_errors=min_fe, max_frames=max_frames,
                seed=args.seed, workers=args.workers,
            )
            path = out / f"{key}_{kind}.csv"
            write_ber_csv(path, records)
            inputs.append({"kind": "ber", "path": path.name,
                           "label": f"{g['title']} {kind}"})
            print(f"wrote {path}")

        # TUB for the proper code from a harvested low-weight spectrum
        spec = g["proper"]
        sf = unwrap_exponents(build_array_exponents(spec))
        tb = terminate(sf, spec.q, TAIL_BITING)
        ws = estimate_spectrum_mc(tb, g["harvest_ebno"], frames=harvest_frames,
                                  seed=args.seed)
        if ws.entries:
            curve = compute_tub(ws, sf.rate, g["grid"], k=tb.k)
            path = out / f"{key}_tub.csv"
            write_tub_csv(path, curve)
            inputs.append({"kind": "tub", "path": path.name,
                           "label": f"TUB {g['title']} proper"})
            print(f"wrote {path}")
        else:
            print(f"no codewords harvested for {key}; skipping TUB")

        dv, dc = g["ensemble"]
        ens = EnsembleSpec(dv, dc)
        doc = {"dv": dv, "dc": dc, "method": "ga",
               "threshold_db": ga_threshold(ens), "tol": 0.01}
        path = out / f"{key}_threshold.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        inputs.append({"kind": "threshold", "path": path.name,
                       "label": f"threshold ({dv},{dc})"})
        print(f"wrote {path}")

        panels.append({"title": g["title"], "inputs": inputs})

    ranges = [GROUPS["rate075"]["ebno_range"][0], GROUPS["rate09"]["ebno_range"][1]]
    figure = {
        "panels": panels,
        "ebnoRange": ranges,
        "berRange": [1e-7, 1.0],
        "output": "figure.svg",
    }
    (out / "figure.json").write_text(json.dumps(figure, indent=2) + "\n")
    print(f"wrote {out / 'figure.json'}")


if __name__ == "__main__":
    main()

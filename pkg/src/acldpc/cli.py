"""Command-line front end: construct -> unwrap -> simulate -> analyze.

Artifacts are written under --out with a run manifest appended per
command (manifest.jsonl).  Exit codes: 0 success, 2 validation error,
3 resource-limit abort.  All primary artifacts are byte-identical across
reruns with the same inputs, flags, and seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .alist import write_alist
from .channel import (
    DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_FRAME_ERRORS,
    ChannelPoint,
    run_ber_sweep,
    write_ber_csv,
)
from .construction import ConstructionError, load_code_spec
from .density_evolution import EnsembleSpec, threshold_report
from .gf2 import MatrixError, expand, gf2_rank, girth, has_length4_cycle
from .spectrum import (
    WeightSpectrum,
    brute_force_spectrum,
    compute_tub,
    error_impulse_search,
    estimate_spectrum_mc,
    read_spectrum_json,
    write_spectrum_json,
    write_tub_csv,
)
from .unwrap import (
    FELSTROM,
    TAIL_BITING,
    ZERO_TERMINATED,
    dump_stacked,
    terminate,
    unwrap_exponents,
    unwrap_tanner,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3

WORKERS_ENV = "ACLDPC_WORKERS"


class ResourceLimit(RuntimeError):
    """An analysis exceeded its configured budget."""


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _append_manifest(out_dir: Path, command: str, spec_path: str, seed, params: dict,
                     outputs: list[str], t0: float) -> None:
    entry = {
        "command": command,
        "spec_digest": _digest(spec_path),
        "seed": seed,
        "params": params,
        "outputs": outputs,
        "version": __version__,
        "wall_time": round(time.monotonic() - t0, 3),
    }
    with open(out_dir / "manifest.jsonl", "a") as fh:
        json.dump(entry, fh, sort_keys=True)
        fh.write("\n")


def _write_json(path: Path, doc) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_grid(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _build_sf(spec, method: str):
    exp = spec.exponent_matrix()
    if method == FELSTROM:
        return unwrap_exponents(exp)
    return unwrap_tanner(exp)


def _terminated(spec, block_bits: int, mode: str):
    sf = _build_sf(spec, FELSTROM)
    if block_bits % sf.n0:
        raise ConstructionError(
            f"block bits {block_bits} not divisible by n0 = {sf.n0}"
        )
    return terminate(sf, block_bits // sf.n0, mode)


def cmd_construct(args) -> int:
    t0 = time.monotonic()
    spec = load_code_spec(args.spec)
    exp = spec.exponent_matrix()
    H = expand(exp)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    arr = exp.to_array()
    exp_path = out / "exponents.txt"
    exp_path.write_text(
        "\n".join(" ".join(str(int(v)) for v in row) for row in arr) + "\n"
    )
    alist_path = out / "H.alist"
    write_alist(alist_path, H)
    report = {
        "kind": spec.kind,
        "name": spec.name,
        "modulus": spec.modulus,
        "r0": exp.r0,
        "n0": exp.n0,
        "rows": H.rows,
        "cols": H.cols,
        "nnz": H.nnz,
        "rank": gf2_rank(H),
        "has_length4_cycle": has_length4_cycle(H),
        "girth": girth(H),
    }
    report_path = out / "construct_report.json"
    _write_json(report_path, report)
    print("\n".join(" ".join(str(int(v)) for v in row) for row in arr))
    _append_manifest(out, "construct", args.spec, None, {},
                     [str(exp_path), str(alist_path), str(report_path)], t0)
    return EXIT_OK


def cmd_unwrap(args) -> int:
    t0 = time.monotonic()
    spec = load_code_spec(args.spec)
    sf = _build_sf(spec, args.method)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dump_path = out / "syndrome_former.txt"
    dump_path.write_text(dump_stacked(sf) + "\n")
    metrics = {"q": spec.modulus, **sf.metrics()}
    metrics_path = out / "metrics.json"
    _write_json(metrics_path, metrics)
    print(json.dumps(metrics, sort_keys=True))
    _append_manifest(out, "unwrap", args.spec, None, {"method": args.method},
                     [str(dump_path), str(metrics_path)], t0)
    return EXIT_OK


def cmd_simulate(args) -> int:
    t0 = time.monotonic()
    spec = load_code_spec(args.spec)
    tc = _terminated(spec, args.block_bits, args.termination)
    points = [ChannelPoint(ebno_db=e, rate=tc.sf.rate) for e in _parse_grid(args.ebno_grid)]
    records = run_ber_sweep(
        tc,
        points,
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        seed=args.seed,
        workers=args.workers,
        max_iter=args.max_iter,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "ber.csv"
    write_ber_csv(csv_path, records)
    for r in records:
        print(f"ebno {r.ebno_db:g} dB  frames {r.frames}  ber {r.ber:.3e}  fer {r.fer:.3e}")
    params = {
        "block_bits": args.block_bits,
        "termination": args.termination,
        "ebno_grid": args.ebno_grid,
        "min_frame_errors": args.min_frame_errors,
        "max_frames": args.max_frames,
        "max_iter": args.max_iter,
        "workers": args.workers,
    }
    _append_manifest(out, "simulate", args.spec, args.seed, params, [str(csv_path)], t0)
    return EXIT_OK


def _analyze_distance(args, spec, out: Path) -> list[str]:
    tc = _terminated(spec, args.block_bits, args.termination)
    deadline = time.monotonic() + args.budget_seconds if args.budget_seconds else None
    try:
        if args.method == "brute":
            result = brute_force_spectrum(tc)
        elif args.method == "mc":
            result = estimate_spectrum_mc(
                tc, args.ebno, args.frames, seed=args.seed, max_iter=args.max_iter,
                deadline=deadline,
            )
        else:
            result = error_impulse_search(
                tc,
                args.max_impulse_weight,
                seed=args.seed,
                max_iter=args.max_iter,
                deadline=deadline,
            )
    except TimeoutError as exc:
        raise ResourceLimit(str(exc)) from exc
    path = out / "spectrum.json"
    write_spectrum_json(path, result)
    print(f"d_upper {result.d_upper}  entries {len(result.entries)}")
    return [str(path)]


def _analyze_tub(args, spec, out: Path) -> list[str]:
    ws = read_spectrum_json(args.spectrum)
    sf = _build_sf(spec, FELSTROM)
    k = args.k
    if args.tub_mode == "ber" and not k:
        raise ConstructionError("--k is required for BER-mode bounds")
    curve = compute_tub(ws, sf.rate, _parse_grid(args.ebno_grid), mode=args.tub_mode, k=k)
    path = out / "tub.csv"
    write_tub_csv(path, curve)
    print(f"tub rows {len(curve)}")
    return [str(path)]


def _analyze_threshold(args, spec, out: Path) -> list[str]:
    dv = args.dv if args.dv else spec.r0
    dc = args.dc if args.dc else spec.n0
    report = threshold_report(EnsembleSpec(dv=dv, dc=dc), args.threshold_method)
    path = out / "threshold.json"
    _write_json(path, report)
    print(f"threshold ({dv},{dc}) {args.threshold_method}: {report['threshold_db']:.3f} dB")
    return [str(path)]


def cmd_analyze(args) -> int:
    t0 = time.monotonic()
    spec = load_code_spec(args.spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.distance:
        outputs = _analyze_distance(args, spec, out)
        what = "distance"
    elif args.tub:
        outputs = _analyze_tub(args, spec, out)
        what = "tub"
    else:
        outputs = _analyze_threshold(args, spec, out)
        what = "threshold"
    params = {"analysis": what, "method": getattr(args, "method", None)}
    _append_manifest(out, "analyze", args.spec, args.seed, params, outputs, t0)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acldpc", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build exponent matrix and expanded parity checks")
    c.add_argument("spec", help="code-spec JSON file")
    c.add_argument("--out", required=True, help="output directory")
    c.set_defaults(func=cmd_construct)

    u = sub.add_parser("unwrap", help="produce the convolutional syndrome former")
    u.add_argument("spec")
    u.add_argument("--method", choices=[FELSTROM, "tanner"], default=FELSTROM)
    u.add_argument("--out", required=True)
    u.set_defaults(func=cmd_unwrap)

    s = sub.add_parser("simulate", help="Monte Carlo BER sweep")
    s.add_argument("spec")
    s.add_argument("--ebno-grid", required=True, help="comma-separated Eb/N0 values in dB")
    s.add_argument("--block-bits", type=int, default=60000)
    s.add_argument("--termination", choices=[ZERO_TERMINATED, TAIL_BITING],
                   default=ZERO_TERMINATED)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--min-frame-errors", type=int, default=DEFAULT_MIN_FRAME_ERRORS)
    s.add_argument("--max-frames", type=int, default=DEFAULT_MAX_FRAMES)
    s.add_argument("--max-iter", type=int, default=100)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("analyze", help="spectrum, union bound, or threshold analysis")
    a.add_argument("spec")
    what = a.add_mutually_exclusive_group(required=True)
    what.add_argument("--distance", action="store_true")
    what.add_argument("--tub", action="store_true")
    what.add_argument("--threshold", action="store_true")
    a.add_argument("--method", choices=["mc", "impulse", "brute"], default="impulse",
                   help="distance search method")
    a.add_argument("--block-bits", type=int, default=60000)
    a.add_argument("--termination", choices=[ZERO_TERMINATED, TAIL_BITING],
                   default=ZERO_TERMINATED)
    a.add_argument("--ebno", type=float, default=4.0, help="MC harvest operating point (dB)")
    a.add_argument("--frames", type=int, default=10000)
    a.add_argument("--max-impulse-weight", type=int, default=2)
    a.add_argument("--max-iter", type=int, default=100)
    a.add_argument("--budget-seconds", type=float, default=0.0,
                   help="abort distance searches that run past this wall time")
    a.add_argument("--spectrum", help="spectrum JSON input for --tub")
    a.add_argument("--ebno-grid", default="2.0,2.5,3.0,3.5,4.0")
    a.add_argument("--tub-mode", choices=["ber", "fer"], default="ber")
    a.add_argument("--k", type=int, default=0, help="information length for BER-mode bounds")
    a.add_argument("--dv", type=int, default=0)
    a.add_argument("--dc", type=int, default=0)
    a.add_argument("--threshold-method", choices=["ga", "discretized"], default="ga")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConstructionError, MatrixError, FileNotFoundError, KeyError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimit as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

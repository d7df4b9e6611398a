"""BPSK over AWGN: modulation, LLR computation, and the BER sweep harness.

Sweeps transmit the all-zero codeword (valid by decoder symmetry) and use
counter-based Philox substreams keyed by (seed, point index, frame index),
so results are bit-identical regardless of the worker count.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from .codec import SumProductDecoder
from .unwrap import TerminatedCode

DEFAULT_MIN_FRAME_ERRORS = 100
DEFAULT_MAX_FRAMES = 10_000_000

BER_CSV_COLUMNS = [
    "ebno_db", "rate", "frames", "bit_errors", "frame_errors", "ber", "fer", "seed",
]


def qfunc(x):
    """Gaussian tail probability Q(x)."""
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


@dataclass(frozen=True)
class ChannelPoint:
    ebno_db: float
    rate: float

    @property
    def sigma(self) -> float:
        return math.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebno_db / 10.0)))


@dataclass
class BerRecord:
    ebno_db: float
    rate: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    seed: int
    elapsed: float = 0.0


def modulate(bits) -> np.ndarray:
    """BPSK map: bit 0 -> +1, bit 1 -> -1."""
    bits = np.asarray(bits, dtype=np.uint8)
    return 1.0 - 2.0 * bits.astype(np.float64)


def frame_rng(seed: int, point_index: int, frame_index: int) -> np.random.Generator:
    """Counter-based substream for one frame of one sweep point."""
    key = (seed & 0xFFFFFFFFFFFFFFFF, ((point_index << 40) | frame_index) & 0xFFFFFFFFFFFFFFFF)
    return np.random.Generator(np.random.Philox(key=key))


def add_noise_and_llr(symbols, point: ChannelPoint, rng) -> np.ndarray:
    """Transmit over AWGN and return channel LLRs 2 y / sigma^2."""
    symbols = np.asarray(symbols, dtype=np.float64)
    sigma = point.sigma
    y = symbols + rng.normal(0.0, sigma, size=symbols.shape)
    return 2.0 * y / (sigma * sigma)


def _sim_frame(decoder, info_positions, point, seed, point_index, frame_index,
               max_iter=100):
    rng = frame_rng(seed, point_index, frame_index)
    sigma = point.sigma
    n = decoder.H.cols
    llr = (1.0 + rng.normal(0.0, sigma, size=n)) * (2.0 / (sigma * sigma))
    res = decoder.decode(llr, max_iter=max_iter)
    bit_errs = int(res.hard_bits[info_positions].sum())
    frame_err = bool(res.hard_bits.any())
    return bit_errs, frame_err


_WORKER_STATE: dict = {}


def _worker_init(rows, cols, row_support, info_positions):
    from .gf2 import SparseBitMatrix

    H = SparseBitMatrix.from_row_support(rows, cols, row_support)
    _WORKER_STATE["decoder"] = SumProductDecoder(H)
    _WORKER_STATE["info"] = np.asarray(info_positions)


def _worker_frames(args):
    point, seed, point_index, frame_indices, max_iter = args
    dec = _WORKER_STATE["decoder"]
    info = _WORKER_STATE["info"]
    return [
        (f, *_sim_frame(dec, info, point, seed, point_index, f, max_iter))
        for f in frame_indices
    ]


def run_ber_sweep(
    tc: TerminatedCode,
    points,
    *,
    min_frame_errors: int = DEFAULT_MIN_FRAME_ERRORS,
    max_frames: int = DEFAULT_MAX_FRAMES,
    seed: int = 0,
    workers: int = 1,
    max_iter: int = 100,
    batch_size: int | None = None,
) -> list[BerRecord]:
    """Simulate each point until ``min_frame_errors`` frame errors or
    ``max_frames`` frames, scanning frames in index order.

    The stop decision is taken on the cumulative error count in frame-index
    order, so the simulated frame set does not depend on ``workers``.
    """
    if min_frame_errors < 1:
        raise ValueError("min_frame_errors must be >= 1")
    decoder = SumProductDecoder(tc.H)
    info = tc.info_positions
    k = len(info)
    records = []
    batch = batch_size or max(32, workers * 16)
    pool = None
    if workers > 1:
        pool = ProcessPoolExecutor(
            max_workers=workers,
            initializer=_worker_init,
            initargs=(tc.H.rows, tc.H.cols, tc.H.row_support, info),
        )
    try:
        for p_idx, point in enumerate(points):
            t0 = time.monotonic()
            results: list[tuple[int, int, bool]] = []
            next_frame = 0
            done_frames = bit_errors = frame_errors = 0
            while next_frame < max_frames:
                upto = min(next_frame + batch, max_frames)
                idxs = list(range(next_frame, upto))
                if pool is None:
                    chunk = [
                        (f, *_sim_frame(decoder, info, point, seed, p_idx, f, max_iter))
                        for f in idxs
                    ]
                else:
                    per = max(1, len(idxs) // workers)
                    jobs = [
                        (point, seed, p_idx, idxs[i : i + per], max_iter)
                        for i in range(0, len(idxs), per)
                    ]
                    chunk = [r for part in pool.map(_worker_frames, jobs) for r in part]
                    chunk.sort(key=lambda r: r[0])
                next_frame = upto
                stop = False
                for f, be, fe in chunk:
                    done_frames += 1
                    bit_errors += be
                    frame_errors += int(fe)
                    if frame_errors >= min_frame_errors:
                        stop = True
                        break
                if stop:
                    break
            records.append(
                BerRecord(
                    ebno_db=point.ebno_db,
                    rate=point.rate,
                    frames=done_frames,
                    bit_errors=bit_errors,
                    frame_errors=frame_errors,
                    ber=bit_errors / (done_frames * k) if done_frames else 0.0,
                    fer=frame_errors / done_frames if done_frames else 0.0,
                    seed=seed,
                    elapsed=time.monotonic() - t0,
                )
            )
    finally:
        if pool is not None:
            pool.shutdown()
    return records


def simulate_uncoded(ebno_db: float, nbits: int, seed: int = 0) -> float:
    """Hard-decision BER of uncoded BPSK at rate 1 (reference path)."""
    point = ChannelPoint(ebno_db=ebno_db, rate=1.0)
    rng = frame_rng(seed, 0, 0)
    llr = add_noise_and_llr(np.ones(nbits), point, rng)
    return float((llr < 0).mean())


def write_ber_csv(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BER_CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [repr(float(r.ebno_db)), repr(float(r.rate)), r.frames, r.bit_errors,
                 r.frame_errors, repr(float(r.ber)), repr(float(r.fer)), r.seed]
            )


def read_ber_csv(path) -> list[BerRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(
                BerRecord(
                    ebno_db=float(row["ebno_db"]),
                    rate=float(row["rate"]),
                    frames=int(row["frames"]),
                    bit_errors=int(row["bit_errors"]),
                    frame_errors=int(row["frame_errors"]),
                    ber=float(row["ber"]),
                    fer=float(row["fer"]),
                    seed=int(row["seed"]),
                )
            )
    return out

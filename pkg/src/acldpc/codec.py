"""Systematic GF(2) encoding and flooding sum-product decoding with LLRs.

Sign convention: positive LLR means bit 0 is more likely.  Hard-decision
ties (LLR exactly 0) resolve to bit 0 for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import SparseBitMatrix
from .unwrap import TerminatedCode

LLR_CLIP = 25.0  # applied to check-node inputs; tanh is numerically exact below this
_PAD = 1e30  # box-plus identity stand-in for padded message slots


class CodecError(ValueError):
    pass


def syndrome(H: SparseBitMatrix, v) -> np.ndarray:
    """GF(2) product H v^T as a uint8 vector."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (H.cols,):
        raise CodecError(f"vector length {v.shape} does not match {H.cols} columns")
    out = np.fromiter(
        (int(v[list(sup)].sum() & 1) for sup in H.row_support),
        dtype=np.uint8,
        count=H.rows,
    )
    return out


def encode(tc: TerminatedCode, info) -> np.ndarray:
    """Systematic encoding: free columns of the eliminated H carry ``info``."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (tc.k,):
        raise CodecError(f"expected {tc.k} information bits, got {info.shape}")
    R, pivots = tc._rref
    word = np.zeros(tc.n, dtype=np.uint8)
    free = tc.info_positions
    word[free] = info
    if pivots:
        word[list(pivots)] = (R[: len(pivots)][:, free] @ info) & 1
    return word


@dataclass
class DecodeResult:
    hard_bits: np.ndarray
    iterations_used: int
    converged: bool


def _boxplus(a, b):
    """Exact pairwise box-plus; stable for any finite magnitudes."""
    m = np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
    return m + np.log1p(np.exp(-np.abs(a + b))) - np.log1p(np.exp(-np.abs(a - b)))


class SumProductDecoder:
    """Flooding-schedule SPA on a fixed parity-check matrix.

    Messages live in a (checks x max_degree) padded array; check updates
    use forward/backward box-plus sweeps (no division), variable updates
    sum check messages per column.  Deterministic: check index ascending,
    then variable index ascending, every iteration.
    """

    def __init__(self, H: SparseBitMatrix):
        self.H = H
        degs = np.array([len(s) for s in H.row_support])
        if any(len(s) == 0 for s in H.col_support):
            raise CodecError("decoder requires every column to be checked")
        self.max_deg = int(degs.max()) if degs.size else 0
        nc = H.rows
        self.cell_var = np.zeros((nc, self.max_deg), dtype=np.int64)
        self.cell_mask = np.zeros((nc, self.max_deg), dtype=bool)
        for i, sup in enumerate(H.row_support):
            self.cell_var[i, : len(sup)] = sup
            self.cell_mask[i, : len(sup)] = True
        self.edge_var = self.cell_var[self.cell_mask]

    def decode(self, llr, max_iter: int = 100) -> DecodeResult:
        llr = np.asarray(llr, dtype=np.float64)
        if llr.shape != (self.H.cols,):
            raise CodecError("LLR length does not match the code length")
        hard = (llr < 0).astype(np.uint8)
        if self._syndrome_ok(hard):
            return DecodeResult(hard_bits=hard, iterations_used=0, converged=True)

        v2c = np.where(self.cell_mask, llr[self.cell_var], _PAD)
        c2v = np.zeros_like(v2c)
        nc, md = v2c.shape
        for it in range(1, max_iter + 1):
            m = np.where(self.cell_mask, np.clip(v2c, -LLR_CLIP, LLR_CLIP), _PAD)
            fwd = np.full((nc, md + 1), _PAD)
            bwd = np.full((nc, md + 1), _PAD)
            for s in range(md):
                fwd[:, s + 1] = _boxplus(fwd[:, s], m[:, s])
                bwd[:, md - 1 - s] = _boxplus(bwd[:, md - s], m[:, md - 1 - s])
            c2v = _boxplus(fwd[:, :md], bwd[:, 1:])
            c2v[~self.cell_mask] = 0.0

            totals = llr.copy()
            np.add.at(totals, self.edge_var, c2v[self.cell_mask])
            hard = (totals < 0).astype(np.uint8)
            if self._syndrome_ok(hard):
                return DecodeResult(hard_bits=hard, iterations_used=it, converged=True)
            v2c = np.where(self.cell_mask, totals[self.cell_var] - c2v, _PAD)
        return DecodeResult(hard_bits=hard, iterations_used=max_iter, converged=False)

    def _syndrome_ok(self, hard) -> bool:
        parity = np.bitwise_and(
            (hard[self.cell_var] & self.cell_mask).sum(axis=1), 1
        )
        return not parity.any()


def decode_sp(H: SparseBitMatrix, llr, max_iter: int = 100) -> DecodeResult:
    """One-shot sum-product decode; build a SumProductDecoder to amortize
    the structure setup across frames."""
    return SumProductDecoder(H).decode(llr, max_iter=max_iter)

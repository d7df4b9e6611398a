"""Unwrapping block codes into time-invariant convolutional syndrome formers.

Two routes are provided:

* the circulant-of-blocks route: permute the expanded block matrix so it
  becomes a circulant of r0 x n0 blocks, then cut it diagonally (n0 right,
  r0 down) into a semi-infinite band matrix;
* the exponent route: read each exponent directly as a time offset after
  subtracting the row minimum (memory = max row spread + 1).

A ``SyndromeFormer`` stores the delay taps C_0..C_{m-1} of the band: the
checks at period t involve C_u applied to the symbols of period t - u.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .gf2 import ExponentMatrix, MatrixError, SparseBitMatrix, gf2_rref

FELSTROM = "felstrom"
TANNER = "tanner"


def circulant_block_orders(q: int, r0: int, n0: int) -> tuple[list[int], list[int]]:
    """Row/column orderings that turn a block-of-circulants into a
    circulant-of-blocks: new index s*r0 + l maps to old index l*q + s."""
    row_order = [l * q + s for s in range(q) for l in range(r0)]
    col_order = [j * q + s for s in range(q) for j in range(n0)]
    return row_order, col_order


def to_circulant_of_blocks(H: SparseBitMatrix, q: int, r0: int, n0: int) -> list[np.ndarray]:
    """Extract the circulant blocks H_0..H_{q-1} of a QC matrix.

    Requires H to be (r0*q) x (n0*q) with every q x q tile circulant, so
    that the permuted matrix has block (s, t) equal to H_{(t-s) mod q}.
    """
    if H.rows != r0 * q or H.cols != n0 * q:
        raise MatrixError(
            f"expected {(r0 * q, n0 * q)} matrix for q={q}, got {(H.rows, H.cols)}"
        )
    dense = H.to_dense()
    blocks = [np.zeros((r0, n0), dtype=np.uint8) for _ in range(q)]
    for l in range(r0):
        for j in range(n0):
            tile = dense[l * q : (l + 1) * q, j * q : (j + 1) * q]
            first = tile[0]
            for s in range(1, q):
                if not np.array_equal(tile[s], np.roll(first, s)):
                    raise MatrixError(
                        f"tile ({l}, {j}) is not circulant with period q={q}"
                    )
            for u in np.nonzero(first)[0]:
                blocks[int(u)][l, j] = 1
    return blocks


@dataclass(frozen=True, eq=False)
class SyndromeFormer:
    """Delay taps of a time-invariant convolutional parity check.

    ``taps[u]`` is the r0 x n0 coefficient applied to the symbols u
    periods in the past.  ``source`` records which unwrapping produced it
    and fixes the orientation of the figure-style text dump.
    """

    r0: int
    n0: int
    taps: tuple[np.ndarray, ...]
    source: str = FELSTROM

    def __post_init__(self):
        for t in self.taps:
            if t.shape != (self.r0, self.n0):
                raise MatrixError("tap dimensions disagree")

    @property
    def memory(self) -> int:
        """Syndrome former memory order m_s (number of delay taps)."""
        return len(self.taps)

    @property
    def constraint_length(self) -> int:
        """Syndrome former constraint length v_s = n0 * m_s."""
        return self.n0 * self.memory

    @property
    def rate(self) -> float:
        return (self.n0 - self.r0) / self.n0

    def stacked(self) -> np.ndarray:
        """Figure-orientation dump: the (m_s * r0) x n0 stack of taps.

        The circulant-of-blocks route draws the current-period tap first;
        the exponent route traditionally draws it last with rows reversed,
        which is the flipped tap stack.
        """
        stack = np.vstack(self.taps)
        if self.source == TANNER:
            return np.flipud(stack)
        return stack

    def metrics(self) -> dict:
        return {
            "r0": self.r0,
            "n0": self.n0,
            "R": self.rate,
            "m_s": self.memory,
            "v_s": self.constraint_length,
            "source": self.source,
        }


def unwrap(blocks) -> SyndromeFormer:
    """Build the syndrome former from circulant blocks H_0..H_{q-1}.

    The band matrix's first block column reads H_0, H_{q-1}, ..., H_1 top
    to bottom, so the delay-u tap is H_{(q-u) mod q}.
    """
    blocks = [np.asarray(b, dtype=np.uint8) for b in blocks]
    q = len(blocks)
    r0, n0 = blocks[0].shape
    taps = tuple(blocks[(q - u) % q].copy() for u in range(q))
    return SyndromeFormer(r0=r0, n0=n0, taps=taps, source=FELSTROM)


def unwrap_exponents(exp: ExponentMatrix) -> SyndromeFormer:
    """Unwrap an exponent matrix directly via its circulant blocks."""
    from .gf2 import expand

    H = expand(exp)
    blocks = to_circulant_of_blocks(H, exp.modulus, exp.r0, exp.n0)
    return unwrap(blocks)


def unwrap_tanner(exp: ExponentMatrix) -> SyndromeFormer:
    """Unwrap by reading exponents as time offsets.

    Each row is normalized by its minimum entry; entry e places a 1 at
    check row i, delay e, column j.  Memory is the largest normalized
    entry plus one.
    """
    arr = exp.to_array()
    if (arr < 0).any():
        raise MatrixError("exponent matrix with zero blocks cannot be offset-unwrapped")
    norm = arr - arr.min(axis=1, keepdims=True)
    memory = int(norm.max()) + 1
    taps = [np.zeros((exp.r0, exp.n0), dtype=np.uint8) for _ in range(memory)]
    for i in range(exp.r0):
        for j in range(exp.n0):
            taps[int(norm[i, j])][i, j] = 1
    return SyndromeFormer(r0=exp.r0, n0=exp.n0, taps=tuple(taps), source=TANNER)


ZERO_TERMINATED = "zero-terminated"
TAIL_BITING = "tail-biting"


@dataclass(eq=False)
class TerminatedCode:
    """Finite-length realization of a syndrome former over L periods."""

    sf: SyndromeFormer
    L: int
    mode: str
    H: SparseBitMatrix = field(repr=False)

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def n0(self) -> int:
        return self.sf.n0

    @cached_property
    def _rref(self) -> tuple[np.ndarray, list[int]]:
        return gf2_rref(self.H.to_dense())

    @cached_property
    def rank(self) -> int:
        return len(self._rref[1])

    @property
    def k(self) -> int:
        return self.n - self.rank

    @cached_property
    def info_positions(self) -> np.ndarray:
        """Systematic positions: the complement of the elimination pivots."""
        pivots = set(self._rref[1])
        return np.array([j for j in range(self.n) if j not in pivots], dtype=np.int64)


def terminate(sf: SyndromeFormer, L: int, mode: str = ZERO_TERMINATED) -> TerminatedCode:
    """Realize a syndrome former as a finite parity-check matrix.

    Zero termination keeps every check row touching the L transmitted
    periods ((L + m_s - 1) * r0 rows); tail-biting wraps the band over
    exactly L >= m_s periods.
    """
    m, r0, n0 = sf.memory, sf.r0, sf.n0
    if L < 1:
        raise MatrixError("L must be at least 1")
    if mode == TAIL_BITING and L < m:
        raise MatrixError(f"tail-biting needs L >= m_s = {m}, got {L}")
    if mode not in (ZERO_TERMINATED, TAIL_BITING):
        raise MatrixError(f"unknown termination mode {mode!r}")
    n_row_blocks = L if mode == TAIL_BITING else L + m - 1
    row_support: list[list[int]] = [[] for _ in range(n_row_blocks * r0)]
    tap_support = [
        [np.nonzero(t[l])[0] for l in range(r0)] for t in sf.taps
    ]
    for t in range(n_row_blocks):
        for u in range(m):
            j = t - u
            if mode == TAIL_BITING:
                j %= L
            elif not 0 <= j < L:
                continue
            base = j * n0
            for l in range(r0):
                row_support[t * r0 + l].extend(base + c for c in tap_support[u][l])
    H = SparseBitMatrix.from_row_support(n_row_blocks * r0, L * n0, row_support)
    if any(len(s) == 0 for s in H.col_support):
        raise MatrixError("terminated code has an unchecked (zero-weight) column")
    return TerminatedCode(sf=sf, L=L, mode=mode, H=H)


def dump_stacked(sf: SyndromeFormer) -> str:
    """Plain 0/1 text of the figure-orientation stack, one row per line."""
    return "\n".join(" ".join(str(int(v)) for v in row) for row in sf.stacked())

"""Binary matrix core: sparse adjacency matrices, circulant expansion,
GF(2) elimination, and Tanner-graph cycle checks.

Circulant convention used throughout: ``P^e`` is the q x q identity with
every row cyclically shifted right by ``e`` positions, i.e. row ``s`` has
its single 1 at column ``(s + e) mod q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

NULL = None  # marker for an all-zero circulant block in an exponent matrix


class MatrixError(ValueError):
    """Raised for malformed matrix inputs."""


@dataclass(frozen=True)
class ExponentMatrix:
    """Compact description of a block matrix of circulant permutations.

    ``entries[i][j]`` is the shift exponent of block (i, j), or ``None``
    for an all-zero block.
    """

    r0: int
    n0: int
    modulus: int
    entries: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise MatrixError(f"modulus must be positive, got {self.modulus}")
        if len(self.entries) != self.r0:
            raise MatrixError("entry grid does not match r0")
        for row in self.entries:
            if len(row) != self.n0:
                raise MatrixError("entry grid does not match n0")
            for e in row:
                if e is not None and not (0 <= e < self.modulus):
                    raise MatrixError(f"exponent {e} outside [0, {self.modulus})")

    @classmethod
    def from_rows(cls, rows, modulus: int) -> "ExponentMatrix":
        entries = tuple(tuple(int(e) if e is not None else None for e in row) for row in rows)
        return cls(r0=len(entries), n0=len(entries[0]), modulus=modulus, entries=entries)

    def to_array(self, null_value: int = -1) -> np.ndarray:
        """Dense int array with ``null_value`` standing in for zero blocks."""
        return np.array(
            [[null_value if e is None else e for e in row] for row in self.entries],
            dtype=np.int64,
        )

    def select_columns(self, cols) -> "ExponentMatrix":
        cols = [int(c) for c in cols]
        for c in cols:
            if not 0 <= c < self.n0:
                raise MatrixError(f"column block {c} outside [0, {self.n0})")
        rows = tuple(tuple(row[c] for c in cols) for row in self.entries)
        return ExponentMatrix(r0=self.r0, n0=len(cols), modulus=self.modulus, entries=rows)


@dataclass(frozen=True)
class SparseBitMatrix:
    """Binary matrix stored as sorted row and column adjacency lists.

    Immutable after construction; both orientations are kept so that
    message passing can walk either side in O(degree).
    """

    rows: int
    cols: int
    row_support: tuple[tuple[int, ...], ...]
    col_support: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.row_support) != self.rows or len(self.col_support) != self.cols:
            raise MatrixError("support lists do not match declared dimensions")
        for sup, limit in ((self.row_support, self.cols), (self.col_support, self.rows)):
            for lst in sup:
                if any(not 0 <= v < limit for v in lst):
                    raise MatrixError("support index out of range")
                if any(b <= a for a, b in zip(lst, lst[1:])):
                    raise MatrixError("support list not strictly sorted")
        if sum(len(r) for r in self.row_support) != sum(len(c) for c in self.col_support):
            raise MatrixError("row/column supports disagree on nonzero count")

    @classmethod
    def from_row_support(cls, rows: int, cols: int, row_support) -> "SparseBitMatrix":
        cols_acc: list[list[int]] = [[] for _ in range(cols)]
        row_sup = []
        for i, lst in enumerate(row_support):
            lst = sorted(int(j) for j in lst)
            row_sup.append(tuple(lst))
            for j in lst:
                cols_acc[j].append(i)
        col_sup = tuple(tuple(c) for c in cols_acc)
        return cls(rows=rows, cols=cols, row_support=tuple(row_sup), col_support=col_sup)

    @classmethod
    def from_dense(cls, M) -> "SparseBitMatrix":
        M = np.asarray(M)
        rows = [np.nonzero(M[i])[0].tolist() for i in range(M.shape[0])]
        return cls.from_row_support(M.shape[0], M.shape[1], rows)

    @classmethod
    def identity(cls, n: int) -> "SparseBitMatrix":
        return cls.from_row_support(n, n, [[i] for i in range(n)])

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.row_support)

    def to_dense(self) -> np.ndarray:
        M = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, lst in enumerate(self.row_support):
            M[i, list(lst)] = 1
        return M


def expand(exp: ExponentMatrix) -> SparseBitMatrix:
    """Expand an exponent matrix into its binary parity-check matrix.

    Block (i, j) becomes ``P^e`` for exponent ``e`` (1 at ``(s, (s+e) mod q)``
    for every s), or the q x q zero block when the entry is None.
    """
    q = exp.modulus
    row_support: list[list[int]] = [[] for _ in range(exp.r0 * q)]
    for i, row in enumerate(exp.entries):
        for j, e in enumerate(row):
            if e is None:
                continue
            for s in range(q):
                row_support[i * q + s].append(j * q + (s + e) % q)
    return SparseBitMatrix.from_row_support(exp.r0 * q, exp.n0 * q, row_support)


def _pack_rows(M: np.ndarray) -> np.ndarray:
    return np.packbits(np.asarray(M, dtype=np.uint8) & 1, axis=1)


def gf2_rref(M) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(2).

    Returns (R, pivot_cols) where R is dense uint8. Rows are bit-packed
    internally so this stays usable on tens of thousands of columns.
    """
    M = np.asarray(M, dtype=np.uint8)
    m, n = M.shape
    P = _pack_rows(M)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        byte, bit = divmod(c, 8)
        mask = np.uint8(128 >> bit)
        nz = np.nonzero(P[r:, byte] & mask)[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            P[[r, p]] = P[[p, r]]
        hit = np.nonzero(P[:, byte] & mask)[0]
        hit = hit[hit != r]
        if hit.size:
            P[hit] ^= P[r]
        pivots.append(c)
        r += 1
    R = np.unpackbits(P, axis=1, count=n)
    return R, pivots


def gf2_rank(M: SparseBitMatrix | np.ndarray) -> int:
    """GF(2) rank via Gaussian elimination."""
    dense = M.to_dense() if isinstance(M, SparseBitMatrix) else np.asarray(M, dtype=np.uint8)
    if dense.size == 0:
        return 0
    _, pivots = gf2_rref(dense)
    return len(pivots)


def gf2_nullspace(M) -> np.ndarray:
    """Basis of the right nullspace over GF(2), one vector per row."""
    dense = M.to_dense() if isinstance(M, SparseBitMatrix) else np.asarray(M, dtype=np.uint8)
    m, n = dense.shape
    R, pivots = gf2_rref(dense)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, p in enumerate(pivots):
            basis[t, p] = R[r, f]
    return basis


def has_length4_cycle(M: SparseBitMatrix) -> bool:
    """True iff some pair of rows shares at least two column positions."""
    seen: set[tuple[int, int]] = set()
    for sup in M.col_support:
        for a in range(len(sup)):
            for b in range(a + 1, len(sup)):
                pair = (sup[a], sup[b])
                if pair in seen:
                    return True
                seen.add(pair)
    return False


def girth(M: SparseBitMatrix, max_girth: int = 12) -> int | None:
    """Tanner-graph girth via per-check BFS, or None if above ``max_girth``.

    Checks are vertices [0, rows); variables are [rows, rows+cols).
    Search depth is capped, so cycles longer than ``max_girth`` are not
    reported.
    """
    best: int | None = None
    half = max_girth // 2
    n_check = M.rows
    # uniform vertex numbering: checks first, then variables
    adj = [[n_check + j for j in M.row_support[i]] for i in range(n_check)] + [
        list(M.col_support[j]) for j in range(M.cols)
    ]
    for root in range(n_check):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        depth = 0
        found: int | None = None
        while frontier and depth < half + 1 and found is None:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v == parent[u]:
                        continue
                    if v in dist:
                        cyc = dist[u] + dist[v] + 1
                        if cyc % 2 == 0 and (found is None or cyc < found):
                            found = cyc
                    else:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
            depth += 1
        if found is not None and (best is None or found < best):
            best = found
            if best == 4:
                return 4
    if best is not None and best <= max_girth:
        return best
    return None


def permute(M: SparseBitMatrix, row_order, col_order) -> SparseBitMatrix:
    """Reorder rows and columns: output (i, j) = input (row_order[i], col_order[j])."""
    row_order = [int(i) for i in row_order]
    col_order = [int(j) for j in col_order]
    if sorted(row_order) != list(range(M.rows)):
        raise MatrixError("row_order is not a permutation of the row indices")
    if sorted(col_order) != list(range(M.cols)):
        raise MatrixError("col_order is not a permutation of the column indices")
    col_pos = [0] * M.cols
    for new, old in enumerate(col_order):
        col_pos[old] = new
    row_support = [
        sorted(col_pos[j] for j in M.row_support[old]) for old in row_order
    ]
    return SparseBitMatrix.from_row_support(M.rows, M.cols, row_support)

"""Reader/writer for the standard alist sparse parity-check interchange format.

Layout: header line "cols rows", then "max_col_degree max_row_degree",
per-column degrees, per-row degrees, then one line per column and one per
row with 1-based indices, zero-padded to the maximum degree.
"""

from __future__ import annotations

from pathlib import Path

from .gf2 import SparseBitMatrix


def write_alist(path, M: SparseBitMatrix) -> None:
    col_deg = [len(s) for s in M.col_support]
    row_deg = [len(s) for s in M.row_support]
    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)
    lines = [
        f"{M.cols} {M.rows}",
        f"{max_col} {max_row}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    for sup in M.col_support:
        entries = [i + 1 for i in sup] + [0] * (max_col - len(sup))
        lines.append(" ".join(map(str, entries)))
    for sup in M.row_support:
        entries = [j + 1 for j in sup] + [0] * (max_row - len(sup))
        lines.append(" ".join(map(str, entries)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_alist(path) -> SparseBitMatrix:
    tokens = Path(path).read_text().split()
    it = iter(tokens)

    def take(k):
        return [int(next(it)) for _ in range(k)]

    cols, rows = take(2)
    take(2)  # max degrees, re-derivable
    col_deg = take(cols)
    row_deg = take(rows)
    col_support = []
    for j in range(cols):
        vals = take(max(col_deg, default=0))
        col_support.append([v - 1 for v in vals if v > 0])
    row_support = []
    for i in range(rows):
        vals = take(max(row_deg, default=0))
        row_support.append([v - 1 for v in vals if v > 0])
    M = SparseBitMatrix.from_row_support(rows, cols, row_support)
    # cross-check the redundant column lists
    expect = tuple(tuple(sorted(c)) for c in col_support)
    if expect != M.col_support:
        raise ValueError(f"{path}: row and column index lists disagree")
    return M

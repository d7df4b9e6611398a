"""Exponent-matrix constructions: array codes and Tanner-style codes.

An array code over a prime q with shift set D = {D_0 < D_1 < ... < D_{r0-1}}
has exponent entry (i, j) = j * D_i mod q.  A Tanner-style code over
modulus m with generators (a, b) of multiplicative orders (n0, r0) has
entry (i, j) = a^j * b^i mod m.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

from .gf2 import ExponentMatrix


class ConstructionError(ValueError):
    """Invalid code construction parameters."""


def is_prime(n: int) -> bool:
    """Deterministic trial division; parameters in scope are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def multiplicative_order(x: int, m: int) -> int:
    """Smallest t > 0 with x^t = 1 (mod m)."""
    x %= m
    if m < 2 or _gcd(x, m) != 1:
        raise ConstructionError(f"{x} is not invertible modulo {m}")
    t = 1
    acc = x
    while acc != 1:
        acc = acc * x % m
        t += 1
    return t


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class ArrayCodeSpec:
    q: int
    r0: int
    n0: int
    delta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(d) for d in self.delta))
        if not is_prime(self.q):
            raise ConstructionError(f"q = {self.q} is not prime")
        if not 0 < self.r0 < self.n0 <= self.q:
            raise ConstructionError(
                f"need 0 < r0 < n0 <= q, got r0={self.r0}, n0={self.n0}, q={self.q}"
            )
        if len(self.delta) != self.r0:
            raise ConstructionError("delta must contain exactly r0 shifts")
        if any(b <= a for a, b in zip(self.delta, self.delta[1:])):
            raise ConstructionError("delta must be strictly increasing")
        if any(not 0 <= d < self.q for d in self.delta):
            raise ConstructionError("delta entries must lie in [0, q)")

    @property
    def proper(self) -> bool:
        return self.delta == tuple(range(self.r0))

    @property
    def full_length(self) -> bool:
        return self.n0 == self.q


@dataclass(frozen=True)
class TannerCodeSpec:
    m: int
    a: int
    b: int
    r0: int
    n0: int

    def __post_init__(self):
        if self.m <= self.r0 * self.n0:
            raise ConstructionError(f"need m > r0*n0, got m={self.m}")
        if (self.m - 1) % self.r0 or (self.m - 1) % self.n0:
            raise ConstructionError("r0 and n0 must divide m - 1")
        oa = multiplicative_order(self.a, self.m)
        if oa != self.n0:
            raise ConstructionError(
                f"a = {self.a} has order {oa} mod {self.m}, expected n0 = {self.n0}"
            )
        ob = multiplicative_order(self.b, self.m)
        if ob != self.r0:
            raise ConstructionError(
                f"b = {self.b} has order {ob} mod {self.m}, expected r0 = {self.r0}"
            )


def build_array_exponents(spec: ArrayCodeSpec) -> ExponentMatrix:
    rows = [
        [(j * d) % spec.q for j in range(spec.n0)] for d in spec.delta
    ]
    return ExponentMatrix.from_rows(rows, modulus=spec.q)


def build_tanner_exponents(spec: TannerCodeSpec) -> ExponentMatrix:
    rows = [
        [pow(spec.a, j, spec.m) * pow(spec.b, i, spec.m) % spec.m for j in range(spec.n0)]
        for i in range(spec.r0)
    ]
    return ExponentMatrix.from_rows(rows, modulus=spec.m)


def shorten(exp: ExponentMatrix, keep_blocks) -> ExponentMatrix:
    """Keep the listed column blocks, in the given order.

    Distinct indices required; combined reorder-then-shorten is expressed
    by listing the surviving blocks in their new order.
    """
    keep = [int(c) for c in keep_blocks]
    if len(set(keep)) != len(keep):
        raise ConstructionError("keep_blocks contains duplicates")
    return exp.select_columns(keep)


def enumerate_delta_sets(q: int, r0: int, *, limit: int | None = None, rng=None):
    """Yield candidate shift sets for improper-code searches.

    Exhaustive in lexicographic order by default; with ``rng`` a stream of
    random distinct sorted sets instead.  No optimization objective is
    applied here; score candidates externally (e.g. by weight spectrum).
    """
    if rng is not None:
        count = 0
        while limit is None or count < limit:
            yield tuple(sorted(rng.choice(q, size=r0, replace=False).tolist()))
            count += 1
        return
    gen = itertools.combinations(range(q), r0)
    if limit is not None:
        gen = itertools.islice(gen, limit)
    yield from gen


@dataclass(frozen=True)
class CodeSpec:
    """Parsed JSON code-spec document (see FORMATS.md)."""

    kind: str
    r0: int
    n0: int
    modulus: int
    delta: tuple[int, ...] | None = None
    a: int | None = None
    b: int | None = None
    keep_blocks: tuple[int, ...] | None = None
    name: str = ""

    def exponent_matrix(self) -> ExponentMatrix:
        if self.kind == "array":
            base_n0 = self.q if self.keep_blocks is not None else self.n0
            exp = build_array_exponents(
                ArrayCodeSpec(q=self.q, r0=self.r0, n0=base_n0, delta=self.delta)
            )
        else:
            exp = build_tanner_exponents(
                TannerCodeSpec(m=self.modulus, a=self.a, b=self.b, r0=self.r0, n0=self.n0)
            )
        if self.keep_blocks is not None:
            exp = shorten(exp, self.keep_blocks)
        return exp

    @property
    def q(self) -> int:
        return self.modulus


def load_code_spec(source) -> CodeSpec:
    """Load a code-spec from a JSON file path, JSON string, or dict."""
    if isinstance(source, dict):
        doc = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            text = Path(text).read_text()
        doc = json.loads(text)
    kind = doc.get("kind")
    if kind not in ("array", "tanner"):
        raise ConstructionError(f"unknown code kind: {kind!r}")
    keep = doc.get("keep_blocks")
    common = dict(
        kind=kind,
        r0=int(doc["r0"]),
        n0=int(doc["n0"]),
        keep_blocks=tuple(int(c) for c in keep) if keep is not None else None,
        name=doc.get("name", ""),
    )
    if kind == "array":
        spec = CodeSpec(modulus=int(doc["q"]), delta=tuple(int(d) for d in doc["delta"]), **common)
    else:
        spec = CodeSpec(modulus=int(doc["m"]), a=int(doc["a"]), b=int(doc["b"]), **common)
    spec.exponent_matrix()  # validate eagerly
    return spec

"""Shared fixtures: the small rate-2/5 codes and the designed code table."""

import numpy as np
import pytest

from acldpc import (
    ArrayCodeSpec,
    build_array_exponents,
    terminate,
    unwrap_exponents,
)
from acldpc.unwrap import TAIL_BITING


def parse_grid(text: str) -> np.ndarray:
    """Parse a whitespace 0/1 grid into a uint8 array."""
    rows = [line.split() for line in text.strip().splitlines()]
    return np.array(rows, dtype=np.uint8)


# Small proper array codes used as exact fixtures throughout: a full-length
# code over q = 5 and a shortened one over q = 7, both r0 = 3, n0 = 5.
SMALL_Q5 = ArrayCodeSpec(q=5, r0=3, n0=5, delta=(0, 1, 2))
SMALL_Q7 = ArrayCodeSpec(q=7, r0=3, n0=5, delta=(0, 1, 2))

SMALL_Q5_EXPONENTS = [
    [0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4],
    [0, 2, 4, 1, 3],
]
SMALL_Q7_EXPONENTS = [
    [0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4],
    [0, 2, 4, 6, 1],
]

# Expected syndrome-former stacks (figure orientation) for both unwrapping
# routes applied to the two small codes.
STACK_Q5_BLOCK_ROUTE = """
1 1 1 1 1
1 0 0 0 0
1 0 0 0 0
0 0 0 0 0
0 0 0 0 1
0 0 1 0 0
0 0 0 0 0
0 0 0 1 0
0 0 0 0 1
0 0 0 0 0
0 0 1 0 0
0 1 0 0 0
0 0 0 0 0
0 1 0 0 0
0 0 0 1 0
"""

STACK_Q5_OFFSET_ROUTE = """
0 0 1 0 0
0 0 0 0 1
0 0 0 0 0
0 0 0 0 1
0 0 0 1 0
0 0 0 0 0
0 1 0 0 0
0 0 1 0 0
0 0 0 0 0
0 0 0 1 0
0 1 0 0 0
0 0 0 0 0
1 0 0 0 0
1 0 0 0 0
1 1 1 1 1
"""

STACK_Q7_BLOCK_ROUTE = """
1 1 1 1 1
1 0 0 0 0
1 0 0 0 0
0 0 0 0 0
0 0 0 0 0
0 0 0 1 0
0 0 0 0 0
0 0 0 0 0
0 0 0 0 0
0 0 0 0 0
0 0 0 0 1
0 0 1 0 0
0 0 0 0 0
0 0 0 1 0
0 0 0 0 0
0 0 0 0 0
0 0 1 0 0
0 1 0 0 0
0 0 0 0 0
0 1 0 0 0
0 0 0 0 1
"""

STACK_Q7_OFFSET_ROUTE = """
0 0 0 1 0
0 0 0 0 0
0 0 0 0 0
0 0 0 0 0
0 0 0 0 0
0 0 0 0 0
0 0 1 0 0
0 0 0 0 1
0 0 0 0 0
0 0 0 0 0
0 0 0 1 0
0 0 0 0 0
0 1 0 0 0
0 0 1 0 0
0 0 0 0 0
0 0 0 0 1
0 1 0 0 0
0 0 0 0 0
1 0 0 0 0
1 0 0 0 0
1 1 1 1 1
"""

# The designed shortened array codes under study, keyed by a descriptive
# label, with their published metrics for echo tests.
DESIGNED_CODES = {
    "r09-proper-q43": dict(q=43, r0=3, n0=30, delta=(0, 1, 2),
                           rate=0.9, w=3, v_s=1290, d=6),
    "r09-improper-q43": dict(q=43, r0=3, n0=30, delta=(0, 11, 37),
                             rate=0.9, w=3, v_s=1290, d=6),
    "r09-improper-q71": dict(q=71, r0=3, n0=30, delta=(0, 11, 37),
                             rate=0.9, w=3, v_s=2130, d=6),
    "r075-proper-q71": dict(q=71, r0=4, n0=16, delta=(0, 1, 2, 3),
                            rate=0.75, w=4, v_s=1136, d=10),
    "r075-improper-q71": dict(q=71, r0=4, n0=16, delta=(0, 11, 37, 70),
                              rate=0.75, w=4, v_s=1136, d=12),
}

# Benchmark exponent constructions over non-prime-power moduli (generator
# pairs and their required multiplicative orders).
REFERENCE_GENERATORS = {
    "r09-m151": dict(m=151, a=23, b=32, r0=3, n0=30),
    "r075-m97": dict(m=97, a=8, b=22, r0=4, n0=16),
}


@pytest.fixture(scope="session")
def small_exponents():
    return build_array_exponents(SMALL_Q5)


@pytest.fixture(scope="session")
def small_sf(small_exponents):
    return unwrap_exponents(small_exponents)


@pytest.fixture(scope="session")
def small_tailbiting(small_sf):
    """Tail-biting realization over L = 5 periods: n = 25, k = 12."""
    return terminate(small_sf, 5, TAIL_BITING)


def designed_spec(label: str) -> ArrayCodeSpec:
    p = DESIGNED_CODES[label]
    return ArrayCodeSpec(q=p["q"], r0=p["r0"], n0=p["n0"], delta=p["delta"])

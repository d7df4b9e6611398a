"""Array-based LDPC convolutional code toolkit.

Constructs quasi-cyclic LDPC block codes from exponent matrices, unwraps
them into regular time-invariant LDPC convolutional codes, and evaluates
the results with belief-propagation simulation, weight-spectrum
estimation, truncated union bounds, and density-evolution thresholds.
"""

from .alist import read_alist, write_alist
from .channel import (
    BerRecord,
    ChannelPoint,
    add_noise_and_llr,
    frame_rng,
    modulate,
    qfunc,
    read_ber_csv,
    run_ber_sweep,
    simulate_uncoded,
    write_ber_csv,
)
from .codec import (
    CodecError,
    DecodeResult,
    SumProductDecoder,
    decode_sp,
    encode,
    syndrome,
)
from .construction import (
    ArrayCodeSpec,
    CodeSpec,
    ConstructionError,
    TannerCodeSpec,
    build_array_exponents,
    build_tanner_exponents,
    enumerate_delta_sets,
    is_prime,
    load_code_spec,
    multiplicative_order,
    shorten,
)
from .density_evolution import (
    EnsembleSpec,
    discretized_de_threshold,
    ga_threshold,
    threshold_report,
)
from .gf2 import (
    ExponentMatrix,
    MatrixError,
    SparseBitMatrix,
    expand,
    gf2_nullspace,
    gf2_rank,
    gf2_rref,
    girth,
    has_length4_cycle,
    permute,
)
from .spectrum import (
    SpectrumEntry,
    WeightSpectrum,
    brute_force_spectrum,
    canonicalize_support,
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
    TANNER,
    ZERO_TERMINATED,
    SyndromeFormer,
    TerminatedCode,
    circulant_block_orders,
    dump_stacked,
    terminate,
    to_circulant_of_blocks,
    unwrap,
    unwrap_exponents,
    unwrap_tanner,
)

__version__ = "0.1.0"

"""Weight-spectrum estimation, canonicalization, and the union bound."""

import math

import numpy as np
import pytest

from acldpc import (
    SparseBitMatrix,
    SpectrumEntry,
    TerminatedCode,
    WeightSpectrum,
    brute_force_spectrum,
    canonicalize_support,
    compute_tub,
    error_impulse_search,
    estimate_spectrum_mc,
    qfunc,
    read_spectrum_json,
    write_spectrum_json,
)
from acldpc.spectrum import BASIS_BLOCK, write_tub_csv
from acldpc.unwrap import TAIL_BITING, ZERO_TERMINATED

# Exhaustive spectrum of the 5-period tail-biting realization of the small
# full-length code (n = 25, k = 12), frozen from the enumeration oracle.
TINY_SPECTRUM = [
    (6, 50, 144),
    (8, 225, 864),
    (10, 880, 4224),
    (12, 1225, 7056),
    (14, 1050, 7056),
    (16, 550, 4224),
    (18, 100, 864),
    (20, 15, 144),
]


class TestCanonicalize:
    def test_tail_biting_rotation_to_smallest(self):
        sup = (7, 12, 21)  # periods 1, 2, 4 with n0 = 5, L = 5
        canon = canonicalize_support(sup, 5, 5, TAIL_BITING)
        assert min(canon) < 5
        assert canonicalize_support(canon, 5, 5, TAIL_BITING) == canon

    def test_terminated_translation(self):
        sup = (10, 13, 21)
        canon = canonicalize_support(sup, 5, 6, ZERO_TERMINATED)
        assert canon == (0, 3, 11)

    def test_idempotent(self):
        for mode in (TAIL_BITING, ZERO_TERMINATED):
            sup = (5, 9, 14)
            once = canonicalize_support(sup, 5, 4, mode)
            assert canonicalize_support(once, 5, 4, mode) == once

    def test_rotations_collapse_to_same_class(self):
        base = (0, 3, 11)
        rotated = tuple(sorted((p + 2 * 5) % 25 for p in base))
        assert canonicalize_support(base, 5, 5, TAIL_BITING) == canonicalize_support(
            rotated, 5, 5, TAIL_BITING
        )

    def test_empty_support(self):
        assert canonicalize_support((), 5, 5, TAIL_BITING) == ()


class TestBruteForce:
    def test_tiny_code_full_table(self, small_tailbiting):
        ws = brute_force_spectrum(small_tailbiting)
        assert ws.exhaustive
        assert ws.basis == BASIS_BLOCK
        assert [(e.weight, e.multiplicity, e.input_weight) for e in ws.entries] == (
            TINY_SPECTRUM
        )
        assert ws.d_upper == 6

    def test_counts_cover_all_nonzero_codewords(self, small_tailbiting):
        ws = brute_force_spectrum(small_tailbiting)
        assert sum(e.multiplicity for e in ws.entries) == 2**small_tailbiting.k - 1

    def test_two_bit_toy_code(self):
        H = SparseBitMatrix.from_dense(np.array([[1, 1]], dtype=np.uint8))
        from acldpc.unwrap import SyndromeFormer

        sf = SyndromeFormer(r0=1, n0=2, taps=(np.array([[1, 1]], dtype=np.uint8),))
        tc = TerminatedCode(sf=sf, L=1, mode=ZERO_TERMINATED, H=H)
        ws = brute_force_spectrum(tc)
        assert [(e.weight, e.multiplicity) for e in ws.entries] == [(2, 1)]

    def test_large_dimension_rejected(self):
        H = SparseBitMatrix.from_dense(np.ones((1, 40), dtype=np.uint8))
        from acldpc.unwrap import SyndromeFormer

        sf = SyndromeFormer(r0=1, n0=40, taps=(np.ones((1, 40), dtype=np.uint8),))
        tc = TerminatedCode(sf=sf, L=1, mode=ZERO_TERMINATED, H=H)
        with pytest.raises(ValueError):
            brute_force_spectrum(tc)


class TestMonteCarloEstimate:
    def test_contained_in_exhaustive(self, small_tailbiting):
        mc = estimate_spectrum_mc(small_tailbiting, 2.5, frames=1500, seed=0)
        exact = {e.weight for e in brute_force_spectrum(small_tailbiting).entries}
        assert not mc.exhaustive
        for e in mc.entries:
            assert e.weight in exact

    def test_finds_minimum_weight(self, small_tailbiting):
        mc = estimate_spectrum_mc(small_tailbiting, 2.5, frames=1500, seed=0)
        assert mc.d_upper == 6

    def test_effectively_noiseless_input_yields_empty_spectrum(self, small_tailbiting):
        mc = estimate_spectrum_mc(small_tailbiting, 40.0, frames=50, seed=0)
        assert mc.entries == []

    def test_deterministic(self, small_tailbiting):
        a = estimate_spectrum_mc(small_tailbiting, 2.5, frames=400, seed=3)
        b = estimate_spectrum_mc(small_tailbiting, 2.5, frames=400, seed=3)
        assert a.to_dict() == b.to_dict()

    def test_deadline_aborts(self, small_tailbiting):
        import time

        with pytest.raises(TimeoutError):
            estimate_spectrum_mc(small_tailbiting, 2.5, frames=100000,
                                 deadline=time.monotonic() - 1.0)


class TestErrorImpulse:
    def test_impulse_on_codeword_support_recovers_it(self, small_tailbiting):
        tc = small_tailbiting
        ws = brute_force_spectrum(tc)
        assert ws.d_upper == 6
        found = error_impulse_search(tc, 1, seed=0)
        assert found.d_upper == 6

    def test_weight_two_probes_cover_minimum_weight_classes(self, small_tailbiting):
        tc = small_tailbiting
        found = error_impulse_search(tc, 2, seed=0)
        # every canonical minimum-weight class appears
        from acldpc.gf2 import gf2_nullspace

        basis = gf2_nullspace(tc.H)
        minimal = set()
        for mask in range(1, 1 << basis.shape[0]):
            w = np.zeros(tc.n, dtype=np.uint8)
            for b in range(basis.shape[0]):
                if mask >> b & 1:
                    w ^= basis[b]
            if w.sum() == 6:
                minimal.add(
                    canonicalize_support(np.nonzero(w)[0], tc.n0, tc.L, tc.mode)
                )
        assert found.multiplicity(6) == len(minimal)

    def test_deterministic(self, small_tailbiting):
        a = error_impulse_search(small_tailbiting, 1, seed=1)
        b = error_impulse_search(small_tailbiting, 1, seed=1)
        assert a.to_dict() == b.to_dict()


class TestTub:
    def test_single_entry_closed_form(self):
        ws = WeightSpectrum(basis=BASIS_BLOCK, exhaustive=True,
                            entries=[SpectrumEntry(4, 1, 1)])
        rate = 0.5
        # pick Eb/N0 so that 2 d R Eb/N0 = 1
        lin = 1.0 / (2 * 4 * rate)
        ebno_db = 10.0 * math.log10(lin)
        curve = compute_tub(ws, rate, [ebno_db], k=1)
        assert curve[0][1] == pytest.approx(float(qfunc(1.0)), rel=1e-12)

    def test_strictly_decreasing(self, small_tailbiting):
        ws = brute_force_spectrum(small_tailbiting)
        curve = compute_tub(ws, 0.4, np.arange(0.0, 6.0, 0.5), k=small_tailbiting.k)
        bounds = [b for _, b in curve]
        assert all(a > b for a, b in zip(bounds, bounds[1:]))

    def test_fer_mode_uses_multiplicities(self):
        ws = WeightSpectrum(basis=BASIS_BLOCK, exhaustive=True,
                            entries=[SpectrumEntry(4, 7, 14)])
        ber = compute_tub(ws, 0.5, [2.0], mode="ber", k=14)[0][1]
        fer = compute_tub(ws, 0.5, [2.0], mode="fer")[0][1]
        assert fer == pytest.approx(7 * ber)

    def test_empty_spectrum_rejected(self):
        ws = WeightSpectrum(basis=BASIS_BLOCK, exhaustive=True, entries=[])
        with pytest.raises(ValueError):
            compute_tub(ws, 0.5, [1.0], k=1)

    def test_ber_mode_requires_k(self):
        ws = WeightSpectrum(basis=BASIS_BLOCK, exhaustive=True,
                            entries=[SpectrumEntry(4, 1, 1)])
        with pytest.raises(ValueError):
            compute_tub(ws, 0.5, [1.0])


class TestSerialization:
    def test_json_round_trip(self, tmp_path, small_tailbiting):
        ws = brute_force_spectrum(small_tailbiting)
        path = tmp_path / "spectrum.json"
        write_spectrum_json(path, ws)
        back = read_spectrum_json(path)
        assert back.to_dict() == ws.to_dict()

    def test_tub_csv_header(self, tmp_path):
        path = tmp_path / "tub.csv"
        write_tub_csv(path, [(1.0, 0.5), (2.0, 0.25)])
        lines = path.read_text().splitlines()
        assert lines[0] == "ebno_db,bound"
        assert len(lines) == 3

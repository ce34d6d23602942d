"""Tests for the sparse Fock-state algebra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_terms_close, random_state
from noongen import (
    FockState,
    PRUNE_THRESHOLD,
    amplitude,
    apply_fsf,
    make_coherent_truncated,
    make_fock,
    norm_sq,
    restrict_total_photons,
    state_rows,
    tensor,
)


class TestMakeFock:
    def test_vacuum(self):
        state = make_fock(1, [0])
        assert_terms_close(state, {(0,): 1.0})
        assert norm_sq(state) == pytest.approx(1.0)
        assert state.normalized

    def test_single_term(self):
        state = make_fock(2, [4, 0])
        assert_terms_close(state, {(4, 0): 1.0})

    def test_multimode(self):
        state = make_fock(4, [0, 0, 0, 2])
        assert amplitude(state, (0, 0, 0, 2)) == 1.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="mode_count"):
            make_fock(3, [1, 0])

    def test_negative_occupation(self):
        with pytest.raises(ValueError, match="negative"):
            make_fock(2, [1, -1])


class TestCoherent:
    def test_vacuum_alpha(self):
        state = make_coherent_truncated(0.0, 5)
        assert_terms_close(state, {(0,): 1.0})

    def test_alpha_one_cutoff_two(self):
        state = make_coherent_truncated(1.0, 2)
        root = math.exp(-0.5)
        assert_terms_close(
            state,
            {(0,): root, (1,): root, (2,): root / math.sqrt(2)},
        )
        assert not state.normalized

    def test_norm_approaches_one(self):
        state = make_coherent_truncated(1.0, 20)
        assert abs(norm_sq(state) - 1.0) < 1e-12

    def test_norm_cutoff_two(self):
        state = make_coherent_truncated(1.0, 2)
        assert norm_sq(state) == pytest.approx(2.5 * math.exp(-1.0), rel=1e-12)

    def test_negative_cutoff(self):
        with pytest.raises(ValueError, match="cutoff"):
            make_coherent_truncated(1.0, -1)

    @given(
        re=st.floats(-1.5, 1.5),
        im=st.floats(-1.5, 1.5),
        cutoff=st.integers(2, 12),
    )
    @settings(max_examples=60, deadline=None)
    def test_amplitude_recurrence(self, re, im, cutoff):
        alpha = complex(re, im)
        state = make_coherent_truncated(alpha, cutoff)
        for n in range(cutoff):
            below = amplitude(state, (n,))
            above = amplitude(state, (n + 1,))
            if abs(below) > 1e-8:
                assert abs(above / below - alpha / math.sqrt(n + 1)) < 1e-12


class TestTensor:
    def test_vacuum_product(self):
        state = tensor(make_fock(1, [0]), make_fock(1, [0]))
        assert_terms_close(state, {(0, 0): 1.0})

    def test_single_terms(self):
        state = tensor(make_fock(1, [2]), make_fock(1, [1]))
        assert_terms_close(state, {(2, 1): 1.0})

    def test_distributes(self):
        plus = FockState(1, {(0,): 1 / math.sqrt(2), (1,): 1 / math.sqrt(2)}, normalized=True)
        state = tensor(plus, make_fock(1, [1]))
        assert_terms_close(
            state, {(0, 1): 1 / math.sqrt(2), (1, 1): 1 / math.sqrt(2)}
        )
        assert state.normalized

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_norm_multiplicative(self, seed):
        rng = np.random.default_rng(seed)
        a = random_state(rng, 2)
        b = random_state(rng, 1)
        left = norm_sq(tensor(a, b))
        right = norm_sq(a) * norm_sq(b)
        assert left == pytest.approx(right, rel=1e-12, abs=1e-15)


class TestAmplitude:
    def test_present(self):
        assert amplitude(make_fock(2, [4, 0]), (4, 0)) == 1.0

    def test_absent_is_exact_zero(self):
        value = amplitude(make_fock(2, [4, 0]), (0, 4))
        assert value == 0j
        assert isinstance(value, complex)

    def test_poisson_value(self):
        state = make_coherent_truncated(1.0, 4)
        assert amplitude(state, (2,)) == pytest.approx(
            math.exp(-0.5) / math.sqrt(2), rel=1e-12
        )

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="modes"):
            amplitude(make_fock(2, [1, 1]), (1, 1, 0))

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_total_for_valid_lengths(self, seed):
        rng = np.random.default_rng(seed)
        state = random_state(rng, 3)
        occ = tuple(int(n) for n in rng.integers(0, 9, 3))
        amplitude(state, occ)  # never raises for a valid-length query


class TestRestrict:
    def test_keeps_sector(self):
        state = FockState(2, {(4, 0): 0.5, (3, 0): 0.5})
        sector = restrict_total_photons(state, 4)
        assert_terms_close(sector, {(4, 0): 0.5})
        assert not sector.normalized

    def test_empty_sector(self):
        state = FockState(2, {(1, 0): 1.0})
        sector = restrict_total_photons(state, 5)
        assert len(sector) == 0
        assert norm_sq(sector) == 0.0

    def test_filtered_coherent_sector_is_noon(self):
        # Two filtered coherent modes keep per-mode occupations in {0, 3, 4, ...},
        # so the 4-photon sector holds exactly the two extremal terms.
        single = make_coherent_truncated(1.0, 4)
        state = tensor(single, single)
        for k in (1, 2):
            for mode in (0, 1):
                state = apply_fsf(state, mode, k).state
        sector = restrict_total_photons(state, 4)
        assert set(sector.terms) == {(4, 0), (0, 4)}

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_sectors_partition_norm(self, seed):
        rng = np.random.default_rng(seed)
        state = random_state(rng, 3)
        total = sum(
            norm_sq(restrict_total_photons(state, n)) for n in range(0, 13)
        )
        assert total == pytest.approx(norm_sq(state), rel=1e-12)


class TestStateInvariants:
    def test_prunes_tiny_amplitudes(self):
        state = FockState(1, {(0,): 1.0, (1,): PRUNE_THRESHOLD / 10})
        assert set(state.terms) == {(0,)}

    def test_normalized_flag_checked(self):
        with pytest.raises(ValueError, match="normalized"):
            FockState(1, {(0,): 0.5}, normalized=True)

    def test_rows_canonical_order(self):
        state = FockState(2, {(1, 0): 0.5j, (0, 1): 0.5, (0, 0): -0.5})
        rows = state_rows(state)
        assert [r[0] for r in rows] == [(0, 0), (0, 1), (1, 0)]
        assert rows[2] == ((1, 0), 0.0, 0.5)

    def test_zero_mode_count_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            FockState(0, {})

"""Closed-form block amplitudes against hand values and the RK4 oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import coupling_matrix
from twoatomcavity import _integrator, closed_form
from twoatomcavity.closed_form import (
    DegenerateParametersError,
    ModelParams,
    amplitudes,
    amplitudes_general,
    amplitudes_n0,
    amplitudes_n1,
    eigenfrequencies,
)


class TestModelParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            ModelParams(-0.1, 0.2)
        with pytest.raises(ValueError):
            ModelParams(0.5, -1.0)
        with pytest.raises(ValueError):
            ModelParams(0.5, 0.2, cutoff=3)

    def test_alpha(self):
        p = ModelParams(0.5, 0.49, phase=0.0)
        assert p.alpha == pytest.approx(0.7)
        p = ModelParams(0.5, 1.0, phase=math.pi / 2)
        assert p.alpha == pytest.approx(1j)

    def test_cutoff_defaults(self):
        assert ModelParams(0.5, 0.0).effective_cutoff() == 20
        assert ModelParams(0.5, 0.2).effective_cutoff() == 22
        assert ModelParams(0.5, 0.2, cutoff=30).effective_cutoff() == 30


class TestEigenfrequencies:
    def test_equal_couplings(self):
        e = eigenfrequencies(2, 1.0)
        assert e.beta == pytest.approx(6.0, abs=1e-12)
        assert e.lambda_plus == pytest.approx(math.sqrt(6.0), abs=1e-12)
        assert e.lambda_minus == pytest.approx(0.0, abs=1e-12)

    def test_single_atom_limit(self):
        # Spectrum {+-1, +-sqrt(2)}: beta = lambda_plus^2 - lambda_minus^2 = 1.
        e = eigenfrequencies(2, 0.0)
        assert e.lambda_plus == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert e.lambda_minus == pytest.approx(1.0, abs=1e-12)
        assert e.beta == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n,ratio", [(2, 0.5), (3, 0.3), (5, 0.8), (9, 1.0), (4, 0.0)])
    def test_matches_block_spectrum(self, n, ratio):
        e = eigenfrequencies(n, ratio)
        spectrum = np.sort(np.abs(np.linalg.eigvalsh(coupling_matrix(n, ratio))))
        expected = np.sort([e.lambda_minus, e.lambda_minus, e.lambda_plus, e.lambda_plus])
        assert np.max(np.abs(spectrum - expected)) < 1e-10
        assert e.beta == pytest.approx(e.lambda_plus**2 - e.lambda_minus**2, abs=1e-10)

    def test_rejects_low_blocks(self):
        with pytest.raises(ValueError):
            eigenfrequencies(1, 0.5)
        with pytest.raises(ValueError):
            eigenfrequencies(0, 0.5)


class TestLowBlocks:
    @pytest.mark.parametrize("t", [0.0, 7.3, 100.0])
    def test_block0_constant(self, t):
        b = amplitudes_n0(t)
        assert (b.c1, b.c2, b.c3, b.c4) == (0.0, 0.0, 0.0, 1.0)
        assert b.norm == pytest.approx(1.0, abs=0)

    def test_block1_start(self):
        b = amplitudes_n1(0.0, 0.5)
        assert abs(b.c4 - 1.0) < 1e-15 and abs(b.c2) < 1e-15 and abs(b.c3) < 1e-15

    def test_block1_half_period(self):
        # Omega = sqrt(2) at equal couplings, so t = pi/sqrt(2) flips c4.
        b = amplitudes_n1(math.pi / math.sqrt(2.0), 1.0)
        assert b.c4 == pytest.approx(-1.0, abs=1e-12)
        assert abs(b.c2) < 1e-12 and abs(b.c3) < 1e-12

    def test_block1_frozen_second_atom(self):
        b = amplitudes_n1(0.8, 0.0)
        assert b.c3 == 0.0
        assert abs(b.c2) ** 2 + abs(b.c4) ** 2 == pytest.approx(1.0, abs=1e-12)


class TestGeneralBlocks:
    def test_initial_condition(self):
        b = amplitudes_general(2, 0.5, 0.0)
        assert (b.c1, b.c2, b.c3) == (0.0, 0.0, 0.0)
        assert b.c4 == pytest.approx(1.0, abs=0)

    def test_against_integrator(self):
        b = amplitudes_general(3, 0.5, 1.7).as_array()
        ref = _integrator.propagate_single(3, 0.5, 1.7, step=1e-4)
        assert np.max(np.abs(b - ref)) < 1e-8

    def test_unit_norm(self):
        assert amplitudes_general(2, 0.3, 5.0).norm == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("ratio", [0.0, 1.0, 1.0 - 1e-9, 1e-9])
    def test_guard_band(self, ratio):
        with pytest.raises(DegenerateParametersError):
            amplitudes_general(2, ratio, 1.0)

    def test_rejects_low_blocks(self):
        with pytest.raises(ValueError):
            amplitudes_general(1, 0.5, 1.0)

    def test_time_reversal_moduli(self):
        for t in (0.7, 3.7, 12.1):
            fwd = closed_form.block_table(0.4, [t], 6)
            bwd = closed_form.block_table(0.4, [-t], 6)
            assert np.max(np.abs(np.abs(fwd) - np.abs(bwd))) < 1e-12

    @settings(deadline=None, max_examples=60)
    @given(
        n=st.integers(min_value=2, max_value=8),
        ratio=st.floats(min_value=0.05, max_value=0.95),
        t=st.floats(min_value=0.0, max_value=30.0),
    )
    def test_norm_and_sector_structure(self, n, ratio, t):
        b = amplitudes_general(n, ratio, t)
        assert b.norm == pytest.approx(1.0, abs=1e-10)
        # doubly/unexcited amplitudes stay real, singly-excited imaginary
        assert abs(b.c1.imag) < 1e-12 and abs(b.c4.imag) < 1e-12
        assert abs(b.c2.real) < 1e-12 and abs(b.c3.real) < 1e-12


class TestDispatch:
    def test_low_blocks(self):
        assert amplitudes(0, 0.7, 11.0).c4 == 1.0
        b = amplitudes(1, 0.5, 1.2)
        ref = amplitudes_n1(1.2, 0.5)
        assert abs(b.c4 - ref.c4) < 1e-15

    def test_fallback_at_equal_couplings(self):
        b = amplitudes(5, 1.0, 2.0).as_array()
        ref = _integrator.propagate_single(5, 1.0, 2.0, step=1e-4)
        assert np.max(np.abs(b - ref)) < 1e-6

    def test_fallback_single_atom_structure(self):
        # R=0 freezes atom 2: block 2 reduces to the one-atom Rabi pair
        # with frequency sqrt(2).
        b = amplitudes(2, 0.0, 1.0)
        assert abs(b.c1) < 1e-8 and abs(b.c3) < 1e-8
        assert b.c4 == pytest.approx(math.cos(math.sqrt(2.0)), abs=1e-8)
        assert b.c2 == pytest.approx(-1j * math.sin(math.sqrt(2.0)), abs=1e-8)

    def test_fallback_negative_time(self):
        fwd = amplitudes(3, 1.0, 2.5).as_array()
        bwd = amplitudes(3, 1.0, -2.5).as_array()
        assert np.max(np.abs(bwd - np.conj(fwd))) < 1e-12

    def test_single_atom_rabi_blocks(self):
        # R=0, n >= 2: (c2, c4) follow the one-atom solution at sqrt(n).
        for n in (2, 4, 7):
            for t in (0.9, 4.2):
                b = amplitudes(n, 0.0, t)
                assert b.c4 == pytest.approx(math.cos(math.sqrt(n) * t), abs=1e-8)
                assert b.c2 == pytest.approx(-1j * math.sin(math.sqrt(n) * t), abs=1e-8)


def test_block_table_matches_scalar_ops():
    ts = np.array([0.0, 0.9, 2.4])
    table = closed_form.block_table(0.6, ts, 5)
    for i, t in enumerate(ts):
        for n in range(6):
            row = amplitudes(n, 0.6, float(t)).as_array()
            assert np.max(np.abs(table[i, n] - row)) < 1e-12


def test_norm_grid_all_ratios():
    # Spans the guard band too (fallback path), per-block norm to 1e-9.
    ts = np.linspace(0.0, 50.0, 26)
    from twoatomcavity import fock_oracle
    for ratio in np.linspace(0.0, 1.0, 11):
        table = fock_oracle.amplitude_table(ratio, ts, 8)
        norms = np.sum(np.abs(table) ** 2, axis=2)
        assert np.max(np.abs(norms - 1.0)) < 1e-9

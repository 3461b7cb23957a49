"""Squeezing parameters, uncertainty floors and the series cross-check."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_variances, ladder_matrix
from twoatomcavity import fock_oracle, observables
from twoatomcavity.closed_form import ModelParams
from twoatomcavity.fock_oracle import MomentSet, build_state, moments
from twoatomcavity.observables import (
    ass_Q,
    ass_variances,
    quadrature_variances,
    record,
    series_coefficients,
    squeezing_S,
)


def coherent_moments(nbar):
    a = np.sqrt(nbar)
    return MomentSet(nbar, a, a * a, nbar * nbar, a**4)


class TestQuadratures:
    @pytest.mark.parametrize("nbar", [0.0, 0.2, 1.3])
    def test_coherent_is_minimum_uncertainty(self, nbar):
        v1, v2 = quadrature_variances(coherent_moments(nbar))
        assert v1 == pytest.approx(0.25, abs=1e-14)
        assert v2 == pytest.approx(0.25, abs=1e-14)
        s1, s2 = squeezing_S(coherent_moments(nbar))
        assert abs(s1) < 1e-13 and abs(s2) < 1e-13

    @pytest.mark.parametrize("nbar,ratio,t", [(0.2, 0.5, 2.0), (0.8, 0.5, 1.5)])
    def test_against_operator_matrices(self, nbar, ratio, t):
        st_ = build_state(ModelParams(ratio, nbar), t)
        m = moments(st_)
        bx1, bx2, by1, by2 = brute_variances(st_)
        v1, v2 = quadrature_variances(m)
        y1, y2 = ass_variances(m)
        assert v1 == pytest.approx(bx1, abs=1e-10)
        assert v2 == pytest.approx(bx2, abs=1e-10)
        assert y1 == pytest.approx(by1, abs=1e-10)
        assert y2 == pytest.approx(by2, abs=1e-10)

    def test_s_is_four_var_minus_one(self):
        m = moments(build_state(ModelParams(0.5, 0.7), 3.3))
        v1, v2 = quadrature_variances(m)
        s1, s2 = squeezing_S(m)
        assert s1 == 4.0 * v1 - 1.0
        assert s2 == 4.0 * v2 - 1.0


class TestAss:
    @pytest.mark.parametrize("nbar", [0.0, 0.3, 1.1])
    def test_coherent_saturates(self, nbar):
        y1, y2 = ass_variances(coherent_moments(nbar))
        assert y1 == pytest.approx(nbar + 0.5, abs=1e-13)
        assert y2 == pytest.approx(nbar + 0.5, abs=1e-13)
        q1, q2 = ass_Q(coherent_moments(nbar))
        assert abs(q1) < 1e-12 and abs(q2) < 1e-12

    def test_q_normalization_relation(self):
        m = moments(build_state(ModelParams(0.5, 0.8), 1.5))
        y1, y2 = ass_variances(m)
        q1, q2 = ass_Q(m)
        half = m.mean_n + 0.5
        assert q1 == (y1 - half) / half
        assert q2 == (y2 - half) / half

    def test_commutator_on_truncated_basis(self):
        dim, edge = 40, 4
        a = ladder_matrix(dim)
        y1 = 0.5 * (a @ a + a.T @ a.T)
        y2 = -0.5j * (a @ a - a.T @ a.T)
        comm = y1 @ y2 - y2 @ y1
        expected = 1j * (2.0 * np.diag(np.arange(dim, dtype=float)) + np.eye(dim))
        sl = slice(0, dim - edge)
        assert np.max(np.abs((comm - expected)[sl, sl])) < 1e-10


class TestRecord:
    def test_zero_time_is_neutral(self):
        r = record(0.0, moments(build_state(ModelParams(0.7, 0.9), 0.0)))
        assert max(abs(r.s1), abs(r.s2), abs(r.q1), abs(r.q2)) < 1e-10
        assert r.uncertainty_x == pytest.approx(1.0 / 16.0, abs=1e-12)

    def test_fields_consistent(self):
        m = moments(build_state(ModelParams(0.4, 0.5), 2.2))
        r = record(2.2, m)
        assert r.time == 2.2
        assert r.uncertainty_x == r.var_x1 * r.var_x2
        assert r.uncertainty_y == r.var_y1 * r.var_y2
        assert r.mean_n == m.mean_n

    @settings(deadline=None, max_examples=40)
    @given(
        nbar=st.floats(min_value=0.0, max_value=1.5),
        ratio=st.floats(min_value=0.0, max_value=1.0),
        t=st.floats(min_value=0.0, max_value=50.0),
    )
    def test_bounds_hold_everywhere(self, nbar, ratio, t):
        st_ = build_state(ModelParams(ratio, nbar), t)
        r = record(t, moments(st_))
        assert r.s1 >= -1.0 and r.s2 >= -1.0
        assert r.q1 >= -1.0 and r.q2 >= -1.0
        assert r.uncertainty_x >= 1.0 / 16.0 - 1e-9
        assert r.uncertainty_y >= (r.mean_n + 0.5) ** 2 - 1e-9


class TestSeries:
    def test_start_reproduces_coherent_values(self):
        s = series_coefficients(ModelParams(0.5, 0.4), 0.0)
        assert s.a0 == pytest.approx(0.4, abs=1e-12)
        assert s.a1 == pytest.approx(1.0, abs=1e-12)
        assert s.a2 == pytest.approx(1.0, abs=1e-12)
        assert s.a3 == pytest.approx(0.16, abs=1e-12)
        assert s.a4 == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("nbar,ratio,t", [
        (0.2, 0.5, 5.0), (1.0, 0.7, 12.0), (0.4, 1.0, 3.0), (0.8, 0.0, 7.7),
    ])
    def test_matches_direct_moments(self, nbar, ratio, t):
        p = ModelParams(ratio, nbar)
        m = moments(build_state(p, t))
        s = series_coefficients(p, t)
        al = p.alpha
        assert abs(s.a0 - m.mean_n) < 1e-8
        assert abs(al * s.a1 - m.m1) < 1e-8
        assert abs(al**2 * s.a2 - m.m2) < 1e-8
        assert abs(s.a3 - m.m22) < 1e-8
        assert abs(al**4 * s.a4 - m.m4) < 1e-8

    def test_a0_bounded_by_intensity(self):
        p = ModelParams(0.7, 1.0)
        s = series_coefficients(p, 12.0)
        assert 0.0 <= s.a0 <= 1.0

    def test_real_coefficients_at_zero_phase(self):
        s = series_coefficients(ModelParams(0.3, 0.5), 4.4)
        assert abs(s.a1.imag) < 1e-12
        assert abs(s.a2.imag) < 1e-12
        assert abs(s.a4.imag) < 1e-12

    def test_phase_does_not_change_series(self):
        flat = series_coefficients(ModelParams(0.5, 0.6, phase=0.0), 2.0)
        rot = series_coefficients(ModelParams(0.5, 0.6, phase=1.1), 2.0)
        assert rot.a0 == pytest.approx(flat.a0, abs=1e-12)
        assert rot.a1 == pytest.approx(flat.a1, abs=1e-12)
        assert rot.a4 == pytest.approx(flat.a4, abs=1e-12)

    def test_swapped_labels_break_duality(self):
        p = ModelParams(0.5, 0.4)
        m = moments(build_state(p, 5.0))
        s = series_coefficients(p, 5.0, _swap_odd=True)
        dev = max(abs(s.a0 - m.mean_n), abs(p.alpha * s.a1 - m.m1),
                  abs(p.alpha**2 * s.a2 - m.m2))
        assert dev > 1e-3

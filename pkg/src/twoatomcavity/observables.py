"""Quadrature and amplitude-squared squeezing diagnostics.

Everything here is a scalar function of the field moments.  The slowly
varying quadratures X1 = (a e^{iwt} + h.c.)/2 and X2 give normal squeezing
when a variance drops below the coherent-state value 1/4; the squared-field
components Y1 = (a^2 e^{2iwt} + h.c.)/2 and Y2 give amplitude-squared
squeezing when a variance drops below <n> + 1/2.  The normalizations use
the instantaneous mean photon number.

A second, sum-over-blocks route to the same moments (the series
coefficients a0..a4) is kept as a documented cross-check of the direct
state-vector path; the two must agree to 1e-8 everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock_oracle
from .closed_form import ModelParams
from .fock_oracle import MomentSet


@dataclass(frozen=True)
class SeriesCoefficients:
    """Sum-over-blocks moment coefficients.

    Relations to the direct moments: a0 = <a+a>, alpha*a1 = e^{iwt}<a>,
    alpha^2*a2 = e^{2iwt}<a^2>, a3 = <a+2a2>, alpha^4*a4 = e^{4iwt}<a^4>.
    """

    a0: float
    a1: complex
    a2: complex
    a3: float
    a4: complex


@dataclass(frozen=True)
class SqueezingRecord:
    """All squeezing diagnostics at one instant."""

    time: float
    s1: float
    s2: float
    q1: float
    q2: float
    var_x1: float
    var_x2: float
    var_y1: float
    var_y2: float
    mean_n: float
    uncertainty_x: float
    uncertainty_y: float


def quadrature_variances(m: MomentSet) -> tuple[float, float]:
    """(Delta X1)^2 and (Delta X2)^2; both equal 1/4 for a coherent state."""
    v1 = 0.25 * (1.0 + 2.0 * m.mean_n + 2.0 * m.m2.real - 4.0 * m.m1.real**2)
    v2 = 0.25 * (1.0 + 2.0 * m.mean_n - 2.0 * m.m2.real - 4.0 * m.m1.imag**2)
    return v1, v2


def squeezing_S(m: MomentSet) -> tuple[float, float]:
    """Normal squeezing parameters S_i = 4 (Delta X_i)^2 - 1; negative
    values mean squeezing, -1 is 100%."""
    v1, v2 = quadrature_variances(m)
    return 4.0 * v1 - 1.0, 4.0 * v2 - 1.0


def ass_variances(m: MomentSet) -> tuple[float, float]:
    """(Delta Y1)^2 and (Delta Y2)^2.

    Using a^2 a+2 = a+2 a^2 + 4 a+a + 2, the variances reduce to the scalar
    forms below; both equal <n> + 1/2 for a coherent state.
    """
    v1 = 0.5 * m.m4.real + 0.5 * m.m22 + m.mean_n + 0.5 - m.m2.real**2
    v2 = -0.5 * m.m4.real + 0.5 * m.m22 + m.mean_n + 0.5 - m.m2.imag**2
    return v1, v2


def ass_Q(m: MomentSet) -> tuple[float, float]:
    """Amplitude-squared squeezing parameters Q_i.

    Q_i = ((Delta Y_i)^2 - <n+1/2>) / <n+1/2> with the instantaneous mean
    photon number; negative values mean squeezing of the squared amplitude.
    """
    v1, v2 = ass_variances(m)
    half = m.mean_n + 0.5
    return (v1 - half) / half, (v2 - half) / half


def record(time: float, m: MomentSet) -> SqueezingRecord:
    """Bundle every diagnostic for one instant."""
    v1, v2 = quadrature_variances(m)
    y1, y2 = ass_variances(m)
    half = m.mean_n + 0.5
    return SqueezingRecord(
        time=float(time),
        s1=4.0 * v1 - 1.0,
        s2=4.0 * v2 - 1.0,
        q1=(y1 - half) / half,
        q2=(y2 - half) / half,
        var_x1=v1,
        var_x2=v2,
        var_y1=y1,
        var_y2=y2,
        mean_n=m.mean_n,
        uncertainty_x=v1 * v2,
        uncertainty_y=y1 * y2,
    )


def series_coefficients(params: ModelParams, t: float,
                        amplitude_source: str = "closed_form",
                        *, _swap_odd: bool = False) -> SeriesCoefficients:
    """Evaluate the sum-over-blocks coefficients a0..a4 at time t.

    Blocks up to cutoff+4 are evaluated so the quartic pairing n -> n+4 is
    complete for every weighted block.  The specific weight choices
    (depletion form of a0, the n(n-1) ground-sector weight in a3, the
    quartic sqrt pairings and the alpha^4 normalization of a4) are each
    validated against :func:`twoatomcavity.fock_oracle.moments`.
    """
    n_top = params.effective_cutoff()
    table = fock_oracle.amplitude_table(
        params.coupling_ratio, [t], n_top + 4, amplitude_source,
        _swap_odd=_swap_odd)[0]
    p = np.abs(fock_oracle.coherent_weights(params.nbar, params.phase, n_top + 4)) ** 2
    n = np.arange(n_top + 5, dtype=np.float64)
    c1, c2, c3, c4 = table[:, 0], table[:, 1], table[:, 2], table[:, 3]
    last = n_top + 1  # sums run over n = 0..n_top

    a0 = params.nbar - float(
        2.0 * np.sum(p[2:last] * np.abs(c1[2:last]) ** 2)
        + np.sum(p[1:last] * (np.abs(c2[1:last]) ** 2 + np.abs(c3[1:last]) ** 2))
    )

    def cross(c, k, lead, root):
        idx = np.arange(lead, last)
        return np.sum(p[idx] * np.conjugate(c[idx]) * c[idx + k] * root(n[idx]))

    a1 = (
        cross(c1, 1, 2, lambda v: np.sqrt((v - 1.0) / (v + 1.0)))
        + cross(c2, 1, 1, lambda v: np.sqrt(v / (v + 1.0)))
        + cross(c3, 1, 1, lambda v: np.sqrt(v / (v + 1.0)))
        + cross(c4, 1, 0, lambda v: np.ones_like(v))
    )
    a2 = (
        cross(c1, 2, 2, lambda v: np.sqrt((v - 1.0) * v / ((v + 1.0) * (v + 2.0))))
        + cross(c2, 2, 1, lambda v: np.sqrt(v / (v + 2.0)))
        + cross(c3, 2, 1, lambda v: np.sqrt(v / (v + 2.0)))
        + cross(c4, 2, 0, lambda v: np.ones_like(v))
    )
    a3 = float(
        np.sum(p[4:last] * (n[4:last] - 2.0) * (n[4:last] - 3.0) * np.abs(c1[4:last]) ** 2)
        + np.sum(p[3:last] * (n[3:last] - 1.0) * (n[3:last] - 2.0)
                 * (np.abs(c2[3:last]) ** 2 + np.abs(c3[3:last]) ** 2))
        + np.sum(p[2:last] * n[2:last] * (n[2:last] - 1.0) * np.abs(c4[2:last]) ** 2)
    )
    a4 = (
        cross(c1, 4, 2, lambda v: np.sqrt((v - 1.0) * v / ((v + 3.0) * (v + 4.0))))
        + cross(c2, 4, 1, lambda v: np.sqrt(v / (v + 4.0)))
        + cross(c3, 4, 1, lambda v: np.sqrt(v / (v + 4.0)))
        + cross(c4, 4, 0, lambda v: np.ones_like(v))
    )
    return SeriesCoefficients(a0, complex(a1), complex(a2), a3, complex(a4))

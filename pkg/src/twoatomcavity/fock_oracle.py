"""Truncated-Fock-space state assembly and direct field moments.

The full state is the coherent-weighted stack of excitation blocks.  Field
moments are evaluated by exact ladder sums over the atomic-sector photon
amplitudes rather than through any pre-derived series: <a^k> couples photon
number m to m+k inside each atomic sector with sqrt factors, and the free
phases exp(-i(n-1)wt) of the blocks cancel against the exp(ikwt) that
defines each slowly-varying moment, so the results do not depend on the
field frequency at all (checked by passing any omega explicitly).

This path is the ground truth the closed-form series expressions are
validated against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from . import _integrator, closed_form
from ._integrator import DEFAULT_STEP, RICHARDSON_TOL, StepSizeError
from .closed_form import AmplitudeBlock, ModelParams, default_cutoff

__all__ = [
    "CutoffError",
    "MomentSet",
    "StateVector",
    "StepSizeError",
    "amplitude_table",
    "build_state",
    "coherent_weights",
    "default_cutoff",
    "integrate_block",
    "moments",
    "poisson_tail",
]

#: Largest admissible Poisson weight beyond the truncation.
TAIL_LIMIT = 1e-12


class CutoffError(ValueError):
    """Fock truncation too small for the requested field intensity."""


def poisson_tail(cutoff: int, nbar: float) -> float:
    """Probability mass of the coherent photon distribution above `cutoff`."""
    return float(poisson.sf(cutoff, nbar))


def coherent_weights(nbar: float, phase: float, n_top: int) -> np.ndarray:
    """Amplitudes alpha^n exp(-|alpha|^2/2)/sqrt(n!) for n = 0..n_top."""
    n = np.arange(n_top + 1)
    if nbar == 0.0:
        w = np.zeros(n_top + 1, np.complex128)
        w[0] = 1.0
        return w
    log_mag = -0.5 * nbar + 0.5 * n * np.log(nbar) - 0.5 * gammaln(n + 1.0)
    return np.exp(log_mag) * np.exp(1j * phase * n)


@dataclass(frozen=True)
class MomentSet:
    """Slowly-varying field moments at one instant.

    m1, m2 and m4 carry the compensating phases exp(i k w t); mean_n and
    m22 are the diagonal moments <a+a> and <a+2 a2>.
    """

    mean_n: float
    m1: complex
    m2: complex
    m22: float
    m4: complex


@dataclass(frozen=True)
class StateVector:
    """Coherent-weighted block amplitudes of the joint system at one time."""

    params: ModelParams
    time: float
    amplitudes: np.ndarray  # (cutoff+1, 4) complex
    weights: np.ndarray  # (cutoff+1,) complex

    def block(self, n: int) -> AmplitudeBlock:
        return AmplitudeBlock(n, *self.amplitudes[n])

    @property
    def blocks(self) -> list[AmplitudeBlock]:
        return [self.block(n) for n in range(self.amplitudes.shape[0])]

    def probabilities(self) -> np.ndarray:
        """Poisson block weights p_n = |w_n|^2."""
        return np.abs(self.weights) ** 2

    def norm(self) -> float:
        return float(np.sum(self.probabilities() * np.sum(np.abs(self.amplitudes) ** 2, axis=1)))

    def atomic_excitation(self) -> float:
        """Expected number of excited atoms (0..2)."""
        a = np.abs(self.amplitudes) ** 2
        return float(np.sum(self.probabilities() * (2.0 * a[:, 0] + a[:, 1] + a[:, 2])))


def integrate_block(n: int, ratio: float, t_end: float, step: float = DEFAULT_STEP) -> AmplitudeBlock:
    """RK4 solution of one block from the ground-state start.

    Raises StepSizeError when the half-step re-run disagrees beyond
    ``RICHARDSON_TOL``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    c = _integrator.propagate_single(int(n), float(ratio), float(t_end), step)
    return AmplitudeBlock(int(n), *c)


def amplitude_table(ratio: float, times, n_top: int, source: str = "closed_form",
                    step: float = DEFAULT_STEP, *, _swap_odd: bool = False) -> np.ndarray:
    """Block amplitudes 0..n_top at the given sample times, shape (T, n_top+1, 4).

    source "closed_form" evaluates the analytic solution and silently
    substitutes the integrator inside the degeneracy guard band (equal or
    vanishing second coupling); "integrator" always integrates.
    """
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    if source == "integrator":
        return _integrator.propagate_blocks(n_top, ratio, times, step)
    if source != "closed_form":
        raise ValueError("source must be 'closed_form' or 'integrator'")
    try:
        return closed_form.block_table(ratio, times, n_top, swap_odd=_swap_odd)
    except closed_form.DegenerateParametersError:
        closed_form.log.debug(
            "ratio=%g inside guard band: integrating blocks 0..%d", ratio, n_top)
        return _integrator.propagate_blocks(n_top, ratio, times, step)


def build_state(params: ModelParams, t: float, amplitude_source: str = "closed_form") -> StateVector:
    """Assemble the full truncated state at time t.

    Raises CutoffError when the Poisson tail above the cutoff exceeds
    ``TAIL_LIMIT``.
    """
    n_top = params.effective_cutoff()
    tail = poisson_tail(n_top, params.nbar)
    if tail >= TAIL_LIMIT:
        raise CutoffError(
            f"cutoff {n_top} leaves a Poisson tail of {tail:.3e} for "
            f"nbar={params.nbar:g}; need tail < {TAIL_LIMIT:.0e}"
        )
    table = amplitude_table(params.coupling_ratio, [t], n_top, amplitude_source)
    weights = coherent_weights(params.nbar, params.phase, n_top)
    return StateVector(params, float(t), table[0], weights)


def _sector_fields(weights: np.ndarray, table: np.ndarray, times: np.ndarray,
                   omega: float) -> np.ndarray:
    """Photon amplitudes per atomic sector, shape (T, 4, n_top+1).

    Sector s at photon number m draws on block n = m + offset(s) with
    offsets (2, 1, 1, 0) for (++, +-, -+, --), carrying the block's free
    phase exp(-i(n-1) omega t).
    """
    nt, nb, _ = table.shape
    f = np.zeros((nt, 4, nb), np.complex128)
    f[:, 0, : nb - 2] = weights[2:] * table[:, 2:, 0]
    f[:, 1, : nb - 1] = weights[1:] * table[:, 1:, 1]
    f[:, 2, : nb - 1] = weights[1:] * table[:, 1:, 2]
    f[:, 3, :] = weights * table[:, :, 3]
    if omega != 0.0:
        m = np.arange(nb, dtype=np.float64)
        wt = omega * times[:, None]
        f[:, 0, :] *= np.exp(-1j * wt * (m + 1.0))
        f[:, 1, :] *= np.exp(-1j * wt * m)
        f[:, 2, :] *= np.exp(-1j * wt * m)
        f[:, 3, :] *= np.exp(-1j * wt * (m - 1.0))
    return f


def moment_arrays(weights: np.ndarray, table: np.ndarray, times,
                  omega: float = 0.0):
    """Vectorized moments over a whole time grid.

    Returns (mean_n, m1, m2, m22, m4) arrays of length len(times).
    """
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    f = _sector_fields(weights, table, times, omega)
    m = np.arange(f.shape[2], dtype=np.float64)
    prob = np.abs(f) ** 2
    mean_n = np.einsum("tsm,m->t", prob, m).real
    m22 = np.einsum("tsm,m->t", prob, m * (m - 1.0)).real

    r1 = np.sqrt(m[1:])
    r2 = np.sqrt(m[2:] * (m[2:] - 1.0))
    r4 = np.sqrt(m[4:] * (m[4:] - 1.0) * (m[4:] - 2.0) * (m[4:] - 3.0))
    fc = np.conjugate(f)
    m1 = np.einsum("tsm,m->t", fc[:, :, :-1] * f[:, :, 1:], r1)
    m2 = np.einsum("tsm,m->t", fc[:, :, :-2] * f[:, :, 2:], r2)
    m4 = np.einsum("tsm,m->t", fc[:, :, :-4] * f[:, :, 4:], r4)
    if omega != 0.0:
        wt = omega * times
        m1 = m1 * np.exp(1j * wt)
        m2 = m2 * np.exp(2j * wt)
        m4 = m4 * np.exp(4j * wt)
    return mean_n, m1, m2, m22, m4


def moments(state: StateVector, omega: float = 0.0) -> MomentSet:
    """Field moments of a state; independent of the omega used (the block
    phases cancel the compensating factors exactly)."""
    table = state.amplitudes[None, :, :]
    mean_n, m1, m2, m22, m4 = moment_arrays(
        state.weights, table, [state.time], omega)
    return MomentSet(float(mean_n[0]), complex(m1[0]), complex(m2[0]),
                     float(m22[0]), complex(m4[0]))

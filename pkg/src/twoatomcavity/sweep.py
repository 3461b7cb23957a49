"""Time-series evaluation, squeezing minima, delay times and parameter scans.

A squeezing curve is evaluated on a uniform grid and its features are then
refined off-grid: minima by golden-section search and threshold crossings
by bisection, both to 1e-6 in time.  Away from the degenerate coupling
ratios the closed form evaluates at arbitrary times directly; inside the
guard band the off-grid queries resume the RK4 integrator from the nearest
cached grid state, so refinement never re-integrates from zero.

Everything is pure and deterministic; scan points are independent work
items that may be evaluated concurrently, gathered in input order.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _integrator, closed_form, fock_oracle, observables
from .closed_form import ModelParams
from .observables import SqueezingRecord

#: Time resolution of refined minima and delay times.
REFINE_TOL = 1e-6

#: Default threshold a parameter must cross to count as squeezed.
DELAY_THRESHOLD = -1e-3

_FIELDS = {"S1": "s1", "S2": "s2", "Q1": "q1", "Q2": "q2"}

#: Default search windows for first-squeezing features.
DEFAULT_WINDOW_S = (0.0, 3.0)
DEFAULT_WINDOW_Q = (0.0, 4.0)
GRID_STEP = 1e-3


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of `steps` sample times from t_start to t_end."""

    t_start: float
    t_end: float
    steps: int

    def __post_init__(self):
        if self.t_start < 0:
            raise ValueError("t_start must be >= 0")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        if self.steps < 2:
            raise ValueError("steps must be at least 2")

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.steps)


@dataclass(frozen=True)
class ScanPoint:
    """First-squeezing features of one parameter-scan point."""

    value: float
    min_s1: float
    argmin_tau: float
    delay: float
    intervals: int


@dataclass(frozen=True)
class ScanResult:
    axis: str
    points: list[ScanPoint]


class Evaluator:
    """Squeezing diagnostics on a grid plus arbitrary-time queries.

    Evaluates all block amplitudes over the grid once.  ``value_at`` serves
    off-grid refinement queries: directly from the closed form when it is
    valid, otherwise by resuming the integrator from the nearest cached
    grid state at or before the query time.
    """

    def __init__(self, params: ModelParams, grid: TimeGrid):
        self.params = params
        self.grid = grid
        self.times = grid.times()
        n_top = params.effective_cutoff()
        tail = fock_oracle.poisson_tail(n_top, params.nbar)
        if tail >= fock_oracle.TAIL_LIMIT:
            raise fock_oracle.CutoffError(
                f"cutoff {n_top} leaves a Poisson tail of {tail:.3e} for "
                f"nbar={params.nbar:g}; need tail < {fock_oracle.TAIL_LIMIT:.0e}")
        self.n_top = n_top
        self.weights = fock_oracle.coherent_weights(params.nbar, params.phase, n_top)
        try:
            self._table = closed_form.block_table(
                params.coupling_ratio, self.times, n_top)
            self._degenerate = False
        except closed_form.DegenerateParametersError:
            self._table = _integrator.propagate_blocks(
                n_top, params.coupling_ratio, self.times)
            self._degenerate = True
        self._records: list[SqueezingRecord] | None = None

    def records(self) -> list[SqueezingRecord]:
        if self._records is None:
            mean_n, m1, m2, m22, m4 = fock_oracle.moment_arrays(
                self.weights, self._table, self.times)
            self._records = [
                observables.record(t, fock_oracle.MomentSet(
                    float(mean_n[i]), complex(m1[i]), complex(m2[i]),
                    float(m22[i]), complex(m4[i])))
                for i, t in enumerate(self.times)
            ]
        return self._records

    def values(self, which: str) -> np.ndarray:
        field = _FIELDS[which]
        return np.array([getattr(r, field) for r in self.records()])

    def _amplitudes_at(self, tau: float) -> np.ndarray:
        if not self._degenerate:
            return closed_form.block_table(
                self.params.coupling_ratio, [tau], self.n_top)[0]
        i = int(np.searchsorted(self.times, tau + 1e-15) - 1)
        i = max(i, 0)
        return _integrator.propagate_blocks(
            self.n_top, self.params.coupling_ratio, [tau],
            t0=self.times[i], start=self._table[i])[0]

    def value_at(self, tau: float, which: str) -> float:
        table = self._amplitudes_at(tau)[None]
        arr = fock_oracle.moment_arrays(self.weights, table, [tau])
        m = fock_oracle.MomentSet(
            float(arr[0][0]), complex(arr[1][0]), complex(arr[2][0]),
            float(arr[3][0]), complex(arr[4][0]))
        return getattr(observables.record(tau, m), _FIELDS[which])


def time_series(params: ModelParams, grid: TimeGrid) -> list[SqueezingRecord]:
    """One SqueezingRecord per grid time, ascending."""
    return Evaluator(params, grid).records()


def _default_window(which: str) -> TimeGrid:
    lo, hi = DEFAULT_WINDOW_Q if which.startswith("Q") else DEFAULT_WINDOW_S
    return TimeGrid(lo, hi, int(round((hi - lo) / GRID_STEP)) + 1)


def _golden_minimum(f, a, b, best):
    """Golden-section minimum of f on [a, b], refined to REFINE_TOL."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    best_t, best_v = best
    while b - a > REFINE_TOL:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if fc < best_v:
            best_t, best_v = c, fc
        if fd < best_v:
            best_t, best_v = d, fd
    return best_t, best_v


def _refined_minimum(ev: Evaluator, which: str) -> tuple[float, float]:
    vals = ev.values(which)
    i = int(np.argmin(vals))
    lo = ev.times[max(i - 1, 0)]
    hi = ev.times[min(i + 1, len(ev.times) - 1)]
    best = (float(ev.times[i]), float(vals[i]))
    if hi - lo < REFINE_TOL:
        return best
    return _golden_minimum(lambda t: ev.value_at(t, which), lo, hi, best)


def _refined_delay(ev: Evaluator, which: str, threshold: float) -> float:
    vals = ev.values(which)
    below = np.nonzero(vals < threshold)[0]
    if below.size == 0:
        return math.inf
    i = int(below[0])
    if i == 0:
        return float(ev.times[0])
    a, b = float(ev.times[i - 1]), float(ev.times[i])
    while b - a > REFINE_TOL:
        mid = 0.5 * (a + b)
        if ev.value_at(mid, which) < threshold:
            b = mid
        else:
            a = mid
    return b


def min_squeezing(params: ModelParams, window: TimeGrid, which: str = "S1"):
    """Grid minimum of a squeezing parameter, refined to 1e-6 in time.

    Returns (tau_star, value); the value is nonnegative when the window
    shows no squeezing at all.
    """
    if which not in _FIELDS:
        raise ValueError(f"which must be one of {sorted(_FIELDS)}")
    tau, val = _refined_minimum(Evaluator(params, window), which)
    return float(tau), float(val)


def delay_time(params: ModelParams, which: str = "S1",
               threshold: float = DELAY_THRESHOLD,
               window: TimeGrid | None = None) -> float:
    """First time the parameter drops below `threshold` (< 0).

    Returns math.inf when the window never squeezes below the threshold.
    The crossing is bisected to 1e-6 resolution.
    """
    if threshold >= 0:
        raise ValueError("threshold must be negative")
    if which not in _FIELDS:
        raise ValueError(f"which must be one of {sorted(_FIELDS)}")
    if window is None:
        window = _default_window(which)
    return _refined_delay(Evaluator(params, window), which, threshold)


def squeezing_intervals(values) -> int:
    """Number of maximal grid runs with value < 0."""
    neg = np.asarray(values) < 0.0
    if not neg.any():
        return 0
    starts = np.nonzero(neg & ~np.concatenate(([False], neg[:-1])))[0]
    return int(len(starts))


def _scan_point(params: ModelParams, value: float, window: TimeGrid,
                threshold: float) -> ScanPoint:
    ev = Evaluator(params, window)
    tau, mn = _refined_minimum(ev, "S1")
    delay = _refined_delay(ev, "S1", threshold)
    return ScanPoint(value, float(mn), float(tau), delay,
                     squeezing_intervals(ev.values("S1")))


def scan(template: ModelParams, axis: str, values, window: TimeGrid | None = None,
         threshold: float = DELAY_THRESHOLD, workers: int = 1) -> ScanResult:
    """First-squeezing features of S1 along a parameter axis.

    axis "R" varies the coupling ratio, "nbar" the field intensity (the
    automatic cutoff then follows nbar).  Results keep the input order
    regardless of `workers`.
    """
    if axis not in ("R", "nbar"):
        raise ValueError("axis must be 'R' or 'nbar'")
    values = [float(v) for v in values]
    if not values:
        raise ValueError("values must be a nonempty list")
    if window is None:
        window = _default_window("S1")
    field = "coupling_ratio" if axis == "R" else "nbar"
    jobs = [(dataclasses.replace(template, **{field: v}), v) for v in values]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(
                lambda job: _scan_point(job[0], job[1], window, threshold), jobs))
    else:
        points = [_scan_point(p, v, window, threshold) for p, v in jobs]
    return ScanResult(axis, points)

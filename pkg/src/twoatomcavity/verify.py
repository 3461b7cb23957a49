"""Cross-validation suite behind the `verify` CLI command.

Each check pits two independent routes against each other: the closed-form
amplitudes against the RK4 integrator, the sum-over-blocks series against
the direct state-vector moments, the scalar variance expressions against
dense operator matrices, and the degenerate-ratio limits against dedicated
reference implementations of the single-atom and identical-atom models.
The result is a machine-readable report; every check carries its measured
maximum deviation and tolerance.
"""

from __future__ import annotations

import numpy as np

from . import _integrator, closed_form, fock_oracle, observables, references, sweep
from .closed_form import ModelParams
from .sweep import TimeGrid

#: Weight choices in the series route that the series/moment duality check
#: validates (each one differs from a naive transcription of the block sums).
SERIES_FORM_NOTES = [
    "mean photon number via the depletion form nbar - sum of excited-sector weights",
    "squared-intensity series carries the weight n(n-1) on the ground-sector term",
    "fourth-moment series pairs block n with block n+4 in every atomic sector",
    "fourth-moment normalization is alpha^4",
    "singly-excited amplitude labeling fixed by the integrator (see amplitude_labeling)",
    "relative sign between the two sine terms of the singly-excited amplitudes is +",
]


def _check(name, max_dev, tol, **extra):
    entry = {"name": name, "max_deviation": float(max_dev), "tolerance": float(tol),
             "passed": bool(max_dev <= tol)}
    entry.update(extra)
    return entry


def check_closed_form_vs_integrator(fast=False, swap_odd=False):
    """Componentwise closed-form/RK4 agreement over the (n, R, tau) grid.

    Inside the guard band both routes are the integrator, so the comparison
    is trivially tight there; outside it is a genuine dual-route check.
    """
    n_top = 4 if fast else 8
    ratios = np.linspace(0.0, 1.0, 5 if fast else 11)
    times = np.linspace(0.0, 10.0 if fast else 50.0, 100 if fast else 500)
    step = 1e-3
    worst = 0.0
    for ratio in ratios:
        analytic = fock_oracle.amplitude_table(ratio, times, n_top,
                                               "closed_form", _swap_odd=swap_odd)
        numeric = fock_oracle.amplitude_table(ratio, times, n_top, "integrator", step)
        worst = max(worst, float(np.max(np.abs(analytic - numeric))))
    return _check("closed_form_vs_integrator", worst, 1e-6,
                  grid={"n_top": n_top, "ratios": len(ratios), "times": len(times)})


def check_amplitude_labeling(swap_odd=False):
    """The two singly-excited amplitudes against the integrator, both ways.

    Only one labeling of the pair solves the equations of motion; the
    swapped labeling conserves the norm yet deviates at O(1), which is why
    the check integrates instead of relying on normalization.
    """
    probes = [(3, 0.5, 1.7), (2, 0.3, 2.5), (6, 0.7, 4.0)]
    shipped = 0.0
    swapped = 0.0
    for n, ratio, t in probes:
        numeric = _integrator.propagate_single(n, ratio, t)
        here = closed_form._general_table(
            ratio, np.array([t]), n, swap_odd=swap_odd)[0, n - 2]
        other = closed_form._general_table(
            ratio, np.array([t]), n, swap_odd=not swap_odd)[0, n - 2]
        shipped = max(shipped, float(np.max(np.abs(here - numeric))))
        swapped = max(swapped, float(np.max(np.abs(other - numeric))))
    entry = _check("amplitude_labeling", shipped, 1e-6,
                   alternate_labeling_deviation=swapped)
    entry["passed"] = bool(entry["passed"] and swapped > 1e-3)
    return entry


def _random_grid(count, rng):
    nbar = rng.uniform(0.0, 1.5, count)
    ratio = rng.uniform(0.0, 1.0, count)
    tau = rng.uniform(0.0, 50.0, count)
    return nbar, ratio, tau


def check_series_vs_moments(fast=False, swap_odd=False):
    """Series coefficients must reproduce the direct moments everywhere."""
    rng = np.random.default_rng(20240811)
    count = 60 if fast else 1000
    nbar, ratio, tau = _random_grid(count, rng)
    worst = 0.0
    for k in range(count):
        p = ModelParams(ratio[k], nbar[k])
        state = fock_oracle.build_state(p, tau[k])
        m = fock_oracle.moments(state)
        s = observables.series_coefficients(p, tau[k], _swap_odd=swap_odd)
        al = p.alpha
        worst = max(worst, abs(s.a0 - m.mean_n), abs(al * s.a1 - m.m1),
                    abs(al**2 * s.a2 - m.m2), abs(s.a3 - m.m22),
                    abs(al**4 * s.a4 - m.m4))
    return _check("series_vs_moments", worst, 1e-8, points=count,
                  validated_forms=SERIES_FORM_NOTES)


def check_invariants(fast=False):
    """Norm, excitation conservation, uncertainty floors and zero-time
    neutrality over a seeded random parameter grid."""
    rng = np.random.default_rng(20240812)
    count = 100 if fast else 1000
    nbar, ratio, tau = _random_grid(count, rng)
    worst_norm = 0.0
    worst_exc = 0.0
    worst_x = 0.0
    worst_y = 0.0
    worst_floor = 0.0
    worst_zero = 0.0
    for k in range(count):
        p = ModelParams(ratio[k], nbar[k])
        state = fock_oracle.build_state(p, tau[k])
        m = fock_oracle.moments(state)
        r = observables.record(tau[k], m)
        worst_norm = max(worst_norm, abs(state.norm() - 1.0))
        worst_exc = max(worst_exc, abs(m.mean_n + state.atomic_excitation() - nbar[k]))
        worst_x = max(worst_x, 1.0 / 16.0 - r.uncertainty_x)
        worst_y = max(worst_y, (m.mean_n + 0.5) ** 2 - r.uncertainty_y)
        worst_floor = max(worst_floor, -(1.0 + r.s1), -(1.0 + r.s2),
                          -(1.0 + r.q1), -(1.0 + r.q2))
        r0 = observables.record(0.0, fock_oracle.moments(fock_oracle.build_state(p, 0.0)))
        worst_zero = max(worst_zero, abs(r0.s1), abs(r0.s2), abs(r0.q1), abs(r0.q2))
    dev = max(worst_norm, worst_exc, worst_x, worst_y, worst_floor)
    entry = _check("invariant_bounds", dev, 1e-9, points=count,
                   norm=worst_norm, excitation=worst_exc,
                   uncertainty_x=worst_x, uncertainty_y=worst_y,
                   parameter_floor=worst_floor, zero_time=worst_zero)
    entry["passed"] = bool(entry["passed"] and worst_zero <= 1e-10)
    return entry


def check_limit_reductions(fast=False):
    """R=0 and R=1 curves against the dedicated reference models."""
    times = np.linspace(0.0, 25.0, 101 if fast else 501)
    grid = TimeGrid(0.0, 25.0, len(times))
    worst = 0.0
    details = {}
    for nbar in (0.2, 0.8):
        for ratio, ref in ((0.0, references.single_atom_s1),
                           (1.0, references.identical_atoms_s1)):
            ev = sweep.Evaluator(ModelParams(ratio, nbar), grid)
            dev = float(np.max(np.abs(ev.values("S1") - ref(nbar, times))))
            details[f"nbar={nbar},R={ratio:g}"] = dev
            worst = max(worst, dev)
    return _check("limit_reductions", worst, 1e-8, curves=details)


def check_commutator(dim=40, edge=4):
    """[Y1, Y2] = i(2n+1) on the truncated basis away from the edge."""
    a = np.diag(np.sqrt(np.arange(1.0, dim)), 1)
    y1 = 0.5 * (a @ a + a.T @ a.T)
    y2 = -0.5j * (a @ a - a.T @ a.T)
    comm = y1 @ y2 - y2 @ y1
    expected = 1j * (2.0 * np.diag(np.arange(dim, dtype=float)) + np.eye(dim))
    interior = slice(0, dim - edge)
    dev = float(np.max(np.abs((comm - expected)[interior, interior])))
    return _check("commutator_matrix", dev, 1e-10, dimension=dim,
                  excluded_top_levels=edge)


def report_ass_endpoints(fast=False):
    """Informational: which endpoint of the Q1 scan is the deeper one.

    The nbar=0.4 amplitude-squared minima at the two limiting ratios are
    about -0.05 (R=0) and -0.017 (R=1): the squared-amplitude squeezing is
    deeper at vanishing second coupling.
    """
    window = TimeGrid(0.0, 4.0, 801 if fast else 4001)
    q0 = sweep.min_squeezing(ModelParams(0.0, 0.4), window, "Q1")
    q1 = sweep.min_squeezing(ModelParams(1.0, 0.4), window, "Q1")
    deeper = "R=0" if q0[1] < q1[1] else "R=1"
    return {
        "name": "ass_endpoint_assignment",
        "passed": True,
        "informational": True,
        "min_q1_at_R0": q0[1],
        "min_q1_at_R1": q1[1],
        "deeper_endpoint": deeper,
    }


def report_q_normalization(fast=False):
    """Informational: minimum Q1 under the instantaneous <n>+1/2
    normalization (shipped) versus a fixed initial nbar+1/2."""
    window = TimeGrid(0.0, 4.0, 801 if fast else 4001)
    p = ModelParams(0.5, 0.8)
    ev = sweep.Evaluator(p, window)
    recs = ev.records()
    inst = min(r.q1 for r in recs)
    fixed = min((r.var_y1 - (r.mean_n + 0.5)) / (p.nbar + 0.5) for r in recs)
    return {
        "name": "q_normalization_readings",
        "passed": True,
        "informational": True,
        "min_q1_instantaneous": float(inst),
        "min_q1_initial_nbar": float(fixed),
    }


def run_checks(fast: bool = False, swap_odd: bool = False) -> dict:
    """Run the whole suite; `swap_odd` deliberately mislabels the two
    singly-excited amplitudes to demonstrate that the checks catch it."""
    checks = [
        check_closed_form_vs_integrator(fast, swap_odd),
        check_amplitude_labeling(swap_odd),
        check_series_vs_moments(fast, swap_odd),
        check_invariants(fast),
        check_limit_reductions(fast),
        check_commutator(),
        report_ass_endpoints(fast),
        report_q_normalization(fast),
    ]
    return {
        "fast": bool(fast),
        "swap_odd_labels": bool(swap_odd),
        "checks": checks,
        "all_passed": bool(all(c["passed"] for c in checks)),
    }

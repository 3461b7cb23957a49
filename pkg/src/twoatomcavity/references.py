"""Independent reference curves for the two limiting coupling configurations.

A vanishing second coupling leaves a single resonant atom; equal couplings
give two identical atoms whose dynamics stays in the symmetric three-level
ladder.  Both standard models are implemented here from their own Rabi
solutions and their own ladder sums, sharing no code with the main solver,
so they can serve as ground truth for the R -> 0 and R -> 1 limits.

Times are dimensionless (units of 1/g); the field starts coherent with
zero phase and both atoms (or the single atom) start in the ground state.
"""

import math

import numpy as np
from scipy.special import gammaln


def _weights(nbar: float, n_top: int) -> np.ndarray:
    n = np.arange(n_top + 1)
    if nbar == 0.0:
        w = np.zeros(n_top + 1)
        w[0] = 1.0
        return w
    return np.exp(-0.5 * nbar + 0.5 * n * np.log(nbar) - 0.5 * gammaln(n + 1.0))


def _s1_from_sectors(fields: list[np.ndarray]) -> float:
    """S1 = 2<n> + 2 Re<a^2> - 4 (Re<a>)^2 from sector photon amplitudes."""
    mean_n = 0.0
    m1 = 0.0 + 0.0j
    m2 = 0.0 + 0.0j
    for f in fields:
        m = np.arange(f.size, dtype=np.float64)
        mean_n += float(np.sum(m * np.abs(f) ** 2))
        m1 += np.sum(np.conjugate(f[:-1]) * f[1:] * np.sqrt(m[1:]))
        m2 += np.sum(np.conjugate(f[:-2]) * f[2:] * np.sqrt(m[2:] * (m[2:] - 1.0)))
    return 2.0 * mean_n + 2.0 * m2.real - 4.0 * m1.real**2


def single_atom_s1(nbar: float, times, n_top: int | None = None) -> np.ndarray:
    """S1(t) for one ground-state atom and a coherent field.

    Block n oscillates at sqrt(n): the ground amplitude is cos(sqrt(n) t)
    and the excited one -i sin(sqrt(n) t).
    """
    if n_top is None:
        n_top = max(20, math.ceil(nbar + 12.0 * math.sqrt(nbar + 1.0) + 8.0))
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    w = _weights(nbar, n_top)
    root = np.sqrt(np.arange(n_top + 1, dtype=np.float64))
    out = np.empty(times.size)
    for i, t in enumerate(times):
        f_ground = w * np.cos(root * t)
        f_excited = -1j * w[1:] * np.sin(root[1:] * t)
        out[i] = _s1_from_sectors([f_ground.astype(complex), f_excited])
    return out


def identical_atoms_s1(nbar: float, times, n_top: int | None = None) -> np.ndarray:
    """S1(t) for two identical ground-state atoms and a coherent field.

    The symmetric ladder |gg,n>, |S,n-1>, |ee,n-2> has couplings sqrt(2n)
    and sqrt(2(n-1)); with the ground start the block oscillates at the
    single frequency Omega_n = sqrt(2(2n-1)):

        C_gg = ((n-1) + n cos(Omega_n t)) / (2n-1)
        C_S  = -i sqrt(2n) sin(Omega_n t) / Omega_n
        C_ee = sqrt(n(n-1)) (cos(Omega_n t) - 1) / (2n-1)
    """
    if n_top is None:
        n_top = max(20, math.ceil(nbar + 12.0 * math.sqrt(nbar + 1.0) + 8.0))
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    w = _weights(nbar, n_top)
    n = np.arange(n_top + 1, dtype=np.float64)
    omega = np.sqrt(np.maximum(2.0 * (2.0 * n - 1.0), 0.0))
    out = np.empty(times.size)
    for i, t in enumerate(times):
        cos_o = np.cos(omega * t)
        c_gg = np.ones(n_top + 1, complex)
        c_gg[1:] = ((n[1:] - 1.0) + n[1:] * cos_o[1:]) / (2.0 * n[1:] - 1.0)
        c_s = -1j * np.sqrt(2.0 * n[1:]) * np.sin(omega[1:] * t) / omega[1:]
        c_ee = (np.sqrt(n[2:] * (n[2:] - 1.0)) * (cos_o[2:] - 1.0)
                / (2.0 * n[2:] - 1.0)).astype(complex)
        f_gg = w * c_gg
        f_s = w[1:] * c_s
        f_ee = w[2:] * c_ee
        out[i] = _s1_from_sectors([f_gg, f_s, f_ee])
    return out

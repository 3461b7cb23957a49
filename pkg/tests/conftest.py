"""Shared brute-force oracles for the test suite.

These helpers rebuild everything from explicit dense matrices and raw
indexing, independently of the package's vectorized internals, so that
agreement between the two is meaningful.
"""

import numpy as np
import pytest


def coupling_matrix(n: int, ratio: float) -> np.ndarray:
    """Dense 4x4 block coupling matrix for n >= 2 (basis ++, +-, -+, --)."""
    s1 = np.sqrt(n - 1.0)
    s0 = np.sqrt(float(n))
    return np.array([
        [0.0, ratio * s1, s1, 0.0],
        [ratio * s1, 0.0, 0.0, s0],
        [s1, 0.0, 0.0, ratio * s0],
        [0.0, s0, ratio * s0, 0.0],
    ])


def ladder_matrix(dim: int) -> np.ndarray:
    """Annihilation operator on a dim-level Fock space."""
    return np.diag(np.sqrt(np.arange(1.0, dim)), 1)


def sector_photon_amplitudes(state) -> np.ndarray:
    """(4, cutoff+1) photon amplitudes per atomic sector, zero-frequency
    picture.  Sector s holds block n = m + offset with offsets (2,1,1,0)."""
    amps = state.amplitudes
    w = state.weights
    nb = amps.shape[0]
    f = np.zeros((4, nb), np.complex128)
    for m in range(nb - 2):
        f[0, m] = w[m + 2] * amps[m + 2, 0]
    for m in range(nb - 1):
        f[1, m] = w[m + 1] * amps[m + 1, 1]
        f[2, m] = w[m + 1] * amps[m + 1, 2]
    for m in range(nb):
        f[3, m] = w[m] * amps[m, 3]
    return f


def brute_expectation(state, operator: np.ndarray) -> complex:
    """<operator> on the flattened state, operator acting on the field."""
    f = sector_photon_amplitudes(state)
    return complex(sum(np.vdot(f[s], operator @ f[s]) for s in range(4)))


def brute_moments(state):
    """(mean_n, m1, m2, m22, m4) from explicit operator matrices."""
    dim = state.amplitudes.shape[0]
    a = ladder_matrix(dim)
    ad = a.conj().T
    return (
        brute_expectation(state, ad @ a).real,
        brute_expectation(state, a),
        brute_expectation(state, a @ a),
        brute_expectation(state, ad @ ad @ a @ a).real,
        brute_expectation(state, a @ a @ a @ a),
    )


def brute_variances(state):
    """((dX1)^2, (dX2)^2, (dY1)^2, (dY2)^2) from explicit X/Y matrices."""
    dim = state.amplitudes.shape[0]
    a = ladder_matrix(dim)
    ad = a.conj().T
    x1 = 0.5 * (a + ad)
    x2 = -0.5j * (a - ad)
    y1 = 0.5 * (a @ a + ad @ ad)
    y2 = -0.5j * (a @ a - ad @ ad)
    out = []
    for op in (x1, x2, y1, y2):
        mean = brute_expectation(state, op).real
        second = brute_expectation(state, op @ op).real
        out.append(second - mean**2)
    return tuple(out)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

"""Exact squeezing dynamics of two unequal-coupling atoms in a lossless cavity.

Two two-level atoms with coupling constants g1 and g2 = R*g1 interact
resonantly with one quantized cavity mode that starts in a coherent state;
both atoms start in the ground state.  The library evaluates the exact
per-excitation-block dynamics (closed form cross-checked by an RK4
integrator), the field moments on a truncated Fock basis, the quadrature
squeezing parameters S1/S2 and the amplitude-squared squeezing parameters
Q1/Q2, and drives time series and parameter scans for figure reproduction.
"""

from .closed_form import (
    AmplitudeBlock,
    DegenerateParametersError,
    Eigenfrequencies,
    ModelParams,
    amplitudes,
    amplitudes_general,
    amplitudes_n0,
    amplitudes_n1,
    default_cutoff,
    eigenfrequencies,
)
from .fock_oracle import (
    CutoffError,
    MomentSet,
    StateVector,
    StepSizeError,
    build_state,
    integrate_block,
    moments,
)
from .observables import (
    SeriesCoefficients,
    SqueezingRecord,
    ass_Q,
    ass_variances,
    quadrature_variances,
    record,
    series_coefficients,
    squeezing_S,
)
from .sweep import (
    ScanPoint,
    ScanResult,
    TimeGrid,
    delay_time,
    min_squeezing,
    scan,
    time_series,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeBlock",
    "CutoffError",
    "DegenerateParametersError",
    "Eigenfrequencies",
    "ModelParams",
    "MomentSet",
    "ScanPoint",
    "ScanResult",
    "SeriesCoefficients",
    "SqueezingRecord",
    "StateVector",
    "StepSizeError",
    "TimeGrid",
    "amplitudes",
    "amplitudes_general",
    "amplitudes_n0",
    "amplitudes_n1",
    "ass_Q",
    "ass_variances",
    "build_state",
    "default_cutoff",
    "delay_time",
    "eigenfrequencies",
    "integrate_block",
    "min_squeezing",
    "moments",
    "quadrature_variances",
    "record",
    "scan",
    "series_coefficients",
    "squeezing_S",
    "time_series",
    "__version__",
]

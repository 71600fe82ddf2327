"""Entanglement dynamics of two driven qubits in a common lossy cavity."""

from .model import (
    AmplitudePair,
    DressedQubit,
    InitialState,
    SystemParams,
    beta_coefficients,
    density_matrix,
    dress,
    initial_amplitudes,
)
from .similar import (
    SurvivalParams,
    amplitudes_J,
    amplitudes_similar,
    decay_time,
    stationary_amplitudes,
    survival_amplitude,
    survival_amplitude_J,
    survival_params,
)
from .dissimilar import (
    CubicCoeffs,
    amplitudes_dissimilar,
    cubic_coeffs,
    propagators,
    solve_cubic,
)
from .volterra import (
    KernelSpec,
    TimeSeries,
    kernel_spec,
    max_stable_dt,
    mode_grid,
    solve_dilated,
    solve_discrete_modes,
    solve_volterra,
    solve_volterra_direct,
)
from .entanglement import (
    concurrence,
    entanglement_dynamic,
    entanglement_stationary,
    generators,
    measure_pure,
    optimize_stationary,
)

__version__ = "0.1.0"

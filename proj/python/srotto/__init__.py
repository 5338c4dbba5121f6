"""Superradiant photonic quantum Otto engine simulator."""

import json as _json

from ._srotto import (
    ProtocolConfig,
    SrottoError,
    __version__,
    bose_occupation,
    displaced_thermal_state,
    effective_temperature,
    fidelity,
    fit_quadratic_scaling,
    fit_thermal_coherent_state,
    micromaser_intensity,
    otto_quantities,
    pulse_energy,
    run_ignition,
    thermal_field,
    work_from_photon_numbers,
)
from ._srotto import total_cost as _total_cost


def total_cost(pulse_energy, atoms, clusters, work_output=0.0):
    """Coherence cost report as a dict; cost_to_work_ratio is None when work_output <= 0."""
    return _json.loads(_total_cost(pulse_energy, atoms, clusters, work_output))


__all__ = [
    "ProtocolConfig",
    "SrottoError",
    "bose_occupation",
    "displaced_thermal_state",
    "effective_temperature",
    "fidelity",
    "fit_quadratic_scaling",
    "fit_thermal_coherent_state",
    "micromaser_intensity",
    "otto_quantities",
    "pulse_energy",
    "run_ignition",
    "thermal_field",
    "total_cost",
    "work_from_photon_numbers",
]

"""Shared fixtures: the reference scan artifacts are expensive (schedule
design + optimizer + density evolution), so they are built once per session."""
import numpy as np
import pytest

from isingsweep import model, sweep
from isingsweep.config import ExperimentConfig
from isingsweep.decoherence import DecoherenceParams, evolve_scan
from isingsweep.sweep import FidelityObjective


@pytest.fixture(scope="session")
def default_config():
    return ExperimentConfig()


@pytest.fixture(scope="session")
def continuous_default(default_config):
    s = default_config.sweep
    return sweep.design_constant_adiabaticity_sweep(
        default_config.g_x, s.g_start, s.g_end, s.total_time, resolution=s.resolution)


@pytest.fixture(scope="session")
def objective_default(default_config):
    return FidelityObjective(g_x=default_config.g_x, j_i=default_config.resolved_j_i,
                             hardware=default_config.hardware)


@pytest.fixture(scope="session")
def fit_default(continuous_default, objective_default, default_config):
    """(family, schedule, min_fidelity) of the reference 60-step fit."""
    with np.errstate(all="ignore"):
        return sweep.fit_sinh_schedule(continuous_default, default_config.sweep.steps,
                                       objective_default, seed=default_config.seed)


@pytest.fixture(scope="session")
def discrete60(fit_default):
    return fit_default[1]


@pytest.fixture(scope="session")
def rho0_default(default_config):
    psi = model.ground_state_ket(default_config.g_x, default_config.sweep.g_start)
    return np.outer(psi, psi.conj())


@pytest.fixture(scope="session")
def ideal_trajectory(rho0_default, discrete60, default_config):
    return evolve_scan(rho0_default, discrete60, default_config.hardware,
                       DecoherenceParams.disabled(), j_i=default_config.resolved_j_i)


@pytest.fixture(scope="session")
def decohered_trajectory(rho0_default, discrete60, default_config):
    return evolve_scan(rho0_default, discrete60, default_config.hardware,
                       default_config.decoherence, j_i=default_config.resolved_j_i)

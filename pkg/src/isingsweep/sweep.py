"""Design of the adiabatic control schedule g_z(t).

The sensitivity of the ground state to the control parameter is

    chi = | (xi_2 - xi_1)^2 / <psi_1| D |psi_2> |,   D = s_z^1 + s_z^2,

evaluated in the triplet sector; the adiabaticity condition reads
|dg_z/dt| << J_I^2 chi. Only the first excited state enters: it is the one
the ground state couples to through D. chi dips near the critical points
g_z = +-1 where the gap closes, so a constant-adiabaticity scan moves
slowest there.

Two schedule families are produced:

* the continuous constant-adiabaticity solution of dg_z/dt = c chi(g_z),
  obtained by quadrature of integral dg_z / chi (the ODE is solved in
  dimensionless time, so the J_I^2 prefactor is absorbed into c);
* a discretized scan from the hyperbolic-sine family
  g_z(t) = a sinh(b (t - t0)) + d sampled at uniform steps, with the two
  endpoint conditions pinning (a, d) and Nelder-Mead tuning (b, t0) to
  maximize the minimum pulse-level ground-state fidelity over the scan.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate, optimize

from . import model
from .errors import (DegenerateFormulationError, NonPositiveTimeError,
                     OptimizationDidNotImproveWarning)
from .model import ModelParams
from .pulse import (DEFAULT_COUPLING_FACTOR, HardwareParams, compile_step,
                    segment_unitary)

CHI_CAP = 1e6
CHI_ELEMENT_FLOOR = 1e-14

# <.|D|.> in the (|uu>, |Psi+>, |dd>) basis.
_D_TRIPLET = np.diag([2.0, 0.0, -2.0])


def chi(g_x: float, g_z: float) -> float:
    """Dimensionless adiabaticity sensitivity at one point of the sweep.

    Uses the closed-form triplet eigensystem, so g_x ~ 0 raises
    :class:`DegenerateFormulationError`. The value is capped at ``CHI_CAP``
    (and pinned there when the coupling matrix element underflows) to keep
    schedule design finite at the scan edges where the coupling vanishes.
    """
    es = model.triplet_eigensystem_analytic(g_x, g_z)
    gap = es.xi[1] - es.xi[0]
    element = abs(float(es.states[:, 0] @ _D_TRIPLET @ es.states[:, 1]))
    if element < CHI_ELEMENT_FLOOR:
        return CHI_CAP
    return min(gap * gap / element, CHI_CAP)


@dataclass(frozen=True)
class AdiabaticityProfile:
    """chi sampled along a g_z grid at fixed g_x."""

    g_x: float
    g_z: np.ndarray
    chi: np.ndarray


def adiabaticity_profile(g_x: float, g_z_grid) -> AdiabaticityProfile:
    grid = np.asarray(g_z_grid, dtype=float)
    values = np.array([chi(g_x, g) for g in grid])
    return AdiabaticityProfile(g_x=g_x, g_z=grid, chi=values)


@dataclass(frozen=True)
class SweepSchedule:
    """Ordered (time, g_z) knots of one scan at fixed g_x.

    ``mode`` is "continuous" (dense quadrature solution) or "discretized"
    (exactly steps + 1 knots at uniform time spacing).
    """

    times: np.ndarray
    g_z: np.ndarray
    g_x: float
    total_time: float
    mode: str
    steps: int | None = None
    note: str = ""

    def __post_init__(self):
        if len(self.times) != len(self.g_z):
            raise ValueError("times and g_z must have equal length")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("knot times must be strictly increasing")
        if self.mode == "discretized" and len(self.times) != (self.steps or 0) + 1:
            raise ValueError("discretized schedule needs steps + 1 knots")

    @property
    def knots(self) -> list[tuple[float, float]]:
        return list(zip(self.times.tolist(), self.g_z.tolist()))


def design_constant_adiabaticity_sweep(g_x: float, g_start: float, g_end: float,
                                       total_time: float, j_i: float | None = None,
                                       resolution: int = 2401) -> SweepSchedule:
    """Continuous schedule with constant (dg_z/dt) / chi.

    Time is accumulated by adaptive quadrature of 1 / chi between adjacent
    g_z samples and rescaled so the scan spans [g_start, g_end] in exactly
    ``total_time``. ``j_i`` is accepted for interface completeness only: the
    ODE is integrated in dimensionless time, so the J_I^2 factor of the
    adiabaticity condition is absorbed into the global rate constant.
    Descending scans are supported and mirror the ascending solution.
    """
    del j_i
    if total_time <= 0.0:
        raise NonPositiveTimeError(f"total_time must be positive, got {total_time}")
    if g_start == g_end:
        raise ValueError("degenerate scan: g_start == g_end")
    if resolution < 3:
        raise ValueError("resolution must be at least 3")

    grid = np.linspace(g_start, g_end, resolution)
    inv_chi = lambda g: 1.0 / chi(g_x, g)  # noqa: E731
    du = np.empty(resolution - 1)
    for i in range(resolution - 1):
        val, _ = integrate.quad(inv_chi, grid[i], grid[i + 1],
                                epsabs=1e-13, epsrel=1e-11, limit=200)
        du[i] = val
    u = np.concatenate([[0.0], np.cumsum(du)])
    times = total_time * (u / u[-1])
    times[0] = 0.0
    times[-1] = total_time
    return SweepSchedule(times=times, g_z=grid.copy(), g_x=g_x,
                         total_time=total_time, mode="continuous",
                         note="constant-adiabaticity")


def resample_uniform(continuous: SweepSchedule, steps: int) -> SweepSchedule:
    """Discretize a continuous schedule at uniform time steps (steps + 1 knots).

    Because the continuous schedule has constant (dg_z/dt)/chi, uniform time
    sampling is the uniform-in-integral(dg/chi) discretization.
    """
    if steps < 2:
        raise ValueError("need at least 2 steps")
    t = np.linspace(0.0, continuous.total_time, steps + 1)
    g = np.interp(t, continuous.times, continuous.g_z)
    g[0] = continuous.g_z[0]
    g[-1] = continuous.g_z[-1]
    return SweepSchedule(times=t, g_z=g, g_x=continuous.g_x,
                         total_time=continuous.total_time, mode="discretized",
                         steps=steps, note="uniform-adiabaticity")


@dataclass(frozen=True)
class SinhScheduleParams:
    """g_z(t) = a sinh(b (t - t0)) + d."""

    a: float
    b: float
    t0: float
    d: float

    def value(self, t):
        return self.a * np.sinh(self.b * (np.asarray(t) - self.t0)) + self.d


def _sinh_from_free(b: float, t0: float, g_start: float, g_end: float,
                    total_time: float) -> SinhScheduleParams:
    """Solve (a, d) so the sinh passes exactly through both endpoints."""
    s0 = math.sinh(b * (0.0 - t0))
    s1 = math.sinh(b * (total_time - t0))
    a = (g_end - g_start) / (s1 - s0)
    d = g_start - a * s0
    return SinhScheduleParams(a=a, b=b, t0=t0, d=d)


def sample_sinh(params: SinhScheduleParams, steps: int, total_time: float,
                g_x: float, g_start: float, g_end: float,
                note: str = "sinh-optimized") -> SweepSchedule:
    if steps < 2:
        raise ValueError("need at least 2 steps")
    t = np.linspace(0.0, total_time, steps + 1)
    g = params.value(t)
    g[0] = g_start   # exact endpoints (construction leaves ~1e-16 roundoff)
    g[-1] = g_end
    return SweepSchedule(times=t, g_z=g, g_x=g_x, total_time=total_time,
                         mode="discretized", steps=steps, note=note)


@dataclass(frozen=True)
class FidelityObjective:
    """Minimum instantaneous ground-state fidelity of a pulse-level scan.

    Decoherence off, so the scan is run on a state vector: segment unitaries
    from :mod:`pulse`, overlap against the closed-form instantaneous ground
    state after every step.
    """

    g_x: float
    j_i: float
    hardware: HardwareParams = field(default_factory=HardwareParams)

    def min_fidelity(self, schedule: SweepSchedule) -> float:
        psi = model.ground_state_ket(self.g_x, float(schedule.g_z[0]))
        worst = 1.0
        for m in range(1, len(schedule.times)):
            tau = float(schedule.times[m] - schedule.times[m - 1])
            g_m = float(schedule.g_z[m])
            seg = compile_step(ModelParams(g_x=self.g_x, g_z=g_m, j_i=self.j_i),
                               tau, self.hardware)
            psi = segment_unitary(seg, self.hardware) @ psi
            ground = model.ground_state_ket(self.g_x, g_m)
            f = abs(complex(ground.conj() @ psi)) ** 2
            worst = min(worst, f)
        return worst


def fit_sinh_schedule(continuous: SweepSchedule, steps: int,
                      objective: FidelityObjective, seed: int = 0,
                      maxiter: int = 120):
    """Fit the sinh family to maximize the scan's minimum fidelity.

    Returns ``(params, schedule, min_fidelity)``. ``params`` is None when the
    optimizer could not beat the uniform-in-quadrature baseline, in which
    case the baseline discretization is returned flagged (and a warning is
    emitted). Deterministic for a fixed seed: the seed only perturbs the
    initial simplex.
    """
    g_start = float(continuous.g_z[0])
    g_end = float(continuous.g_z[-1])
    total_time = continuous.total_time

    baseline = resample_uniform(continuous, steps)
    baseline_fid = objective.min_fidelity(baseline)

    x0 = _initial_sinh_guess(continuous)

    def cost(x):
        b, t0 = x
        if b <= 1e-9 or not (-total_time <= t0 <= 2.0 * total_time):
            return 2.0
        params = _sinh_from_free(b, t0, g_start, g_end, total_time)
        schedule = sample_sinh(params, steps, total_time, continuous.g_x,
                               g_start, g_end)
        return 1.0 - objective.min_fidelity(schedule)

    rng = np.random.default_rng(seed)
    simplex = np.array([
        x0,
        [x0[0] * 1.25, x0[1]],
        [x0[0], x0[1] + 0.06 * total_time],
    ])
    simplex[1:] *= 1.0 + 1e-3 * rng.standard_normal(simplex[1:].shape)

    result = optimize.minimize(cost, x0, method="Nelder-Mead",
                               options={"initial_simplex": simplex,
                                        "maxiter": maxiter,
                                        "xatol": 1e-6, "fatol": 1e-7})
    best_fid = 1.0 - float(result.fun)
    if best_fid < baseline_fid:
        warnings.warn("sinh optimization did not beat the uniform-adiabaticity "
                      "baseline; returning the baseline discretization",
                      OptimizationDidNotImproveWarning)
        return None, replace(baseline, note="uniform-adiabaticity fallback"), baseline_fid
    params = _sinh_from_free(result.x[0], result.x[1], g_start, g_end, total_time)
    schedule = sample_sinh(params, steps, total_time, continuous.g_x, g_start, g_end)
    return params, schedule, best_fid


def _initial_sinh_guess(continuous: SweepSchedule) -> np.ndarray:
    """Start the simplex at the sinh that roughly matches the continuous curve."""
    g_start = float(continuous.g_z[0])
    g_end = float(continuous.g_z[-1])
    total_time = continuous.total_time
    g_mid = 0.5 * (g_start + g_end)
    t0 = float(np.interp(g_mid, continuous.g_z, continuous.times)) \
        if g_end > g_start else \
        float(np.interp(g_mid, continuous.g_z[::-1], continuous.times[::-1]))
    # Central slope of the continuous curve sets the sinh curvature through
    # sinh(x)/x = |half range| / (slope * half duration).
    idx = int(np.searchsorted(continuous.times, t0))
    idx = min(max(idx, 1), len(continuous.times) - 2)
    slope = (continuous.g_z[idx + 1] - continuous.g_z[idx - 1]) / \
        (continuous.times[idx + 1] - continuous.times[idx - 1])
    half_dur = max(total_time - t0, t0)
    ratio = abs(g_end - g_mid) / max(abs(slope) * half_dur, 1e-12)
    if ratio <= 1.0 + 1e-9:
        x = 1e-3
    else:
        x = optimize.brentq(lambda y: math.sinh(y) / y - ratio, 1e-6, 60.0)
    return np.array([x / half_dur, t0])


def fit_discretized_scan(continuous: SweepSchedule, steps: int,
                         objective: FidelityObjective, seed: int = 0) -> SweepSchedule:
    """Sinh-family discretization of a continuous schedule (see fit_sinh_schedule)."""
    _, schedule, _ = fit_sinh_schedule(continuous, steps, objective, seed=seed)
    return schedule


def step_study(g_x: float, scan_range: tuple[float, float], step_counts,
               decoherence_params=None, *, total_time: float,
               hw: HardwareParams | None = None, j_i: float | None = None,
               family: SinhScheduleParams | None = None, seed: int = 0,
               fit_steps: int = 60) -> list[tuple[int, float]]:
    """Minimum scan fidelity vs number of steps at fixed g_z(t) shape.

    The functional dependence g_z vs t is fixed once (a sinh fit at
    ``fit_steps`` steps unless ``family`` is supplied) and only the number of
    uniform sampling steps changes. With decoherence off the curve rises to a
    plateau; with decoherence on the per-step overhead charge makes it roll
    over at an interior step count. Each per-step-count run is independent,
    so callers may distribute them across workers and merge by M.
    """
    hw = hw or HardwareParams()
    if j_i is None:
        j_i = DEFAULT_COUPLING_FACTOR * hw.j_12
    g_start, g_end = scan_range
    objective = FidelityObjective(g_x=g_x, j_i=j_i, hardware=hw)
    continuous = design_constant_adiabaticity_sweep(g_x, g_start, g_end, total_time)
    if family is None:
        family, _, _ = fit_sinh_schedule(continuous, fit_steps, objective, seed=seed)

    results = []
    for m in step_counts:
        if family is not None:
            schedule = sample_sinh(family, m, total_time, g_x, g_start, g_end)
        else:
            schedule = resample_uniform(continuous, m)
        if decoherence_params is None or not decoherence_params.enabled:
            fid = objective.min_fidelity(schedule)
        else:
            from .decoherence import evolve_scan  # local import, avoids cycle
            rho0 = np.outer(model.ground_state_ket(g_x, g_start),
                            model.ground_state_ket(g_x, g_start).conj())
            trajectory = evolve_scan(rho0, schedule, hw, decoherence_params, j_i=j_i)
            fid = trajectory.min_fidelity()
        results.append((int(m), float(fid)))
    return results

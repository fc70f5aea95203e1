"""Compilation of one effective-Hamiltonian step into an rf pulse segment.

A two-spin NMR system with static Hamiltonian

    H_nmr = (w_l1/2) s_z^1 + (w_l2/2) s_z^2 + (J12/4) s_z^1 s_z^2

and an on-resonance rf drive H_rf = (w_rf/2)(s_x^1 + s_x^2) can approximate
one step exp(-i H tau) of the target Ising evolution by the symmetrized
sequence

    (H_rf, tau_p/2) - (H_nmr, tau_prec) - (H_rf, tau_p/2)

provided the durations and the per-step Larmor offset satisfy the matching
relations

    tau_prec = (4 J_I / J12) tau
    tau_p    = (omega_x / w_rf) tau
    w_l1 = w_l2 = (tau / tau_prec) omega_z

with omega_x = 2 J_I g_x and omega_z = 2 J_I g_z. The symmetrized product is
exact to second order in tau (per-step error O(tau^3)); the frequency offset
is applied only during free precession, matching an rf Hamiltonian with no
s_z component (applying it during the pulses as well would be the other
modelling choice; it changes the segment at the same O(tau^3) order the
sequence already neglects).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NonPositiveTauError
from .model import ModelParams, build_hamiltonian

# Half-pulse flip angle above which the small-angle (average Hamiltonian)
# picture starts to degrade.
SMALL_ANGLE_LIMIT = 0.2

# j_i / j_12 choices. MATCHED (1/4) makes tau_prec = tau, the natural
# experimental budget. DEFAULT (5/16) is what the packaged scans use: with
# the reference scan (60 steps over 110 ms) it maximizes the measured
# pulse-level minimum fidelity, trading a little per-step splitting error
# for adiabaticity.
MATCHED_COUPLING_FACTOR = 0.25
DEFAULT_COUPLING_FACTOR = 0.3125

_SZ1 = linalg.kron(linalg.SIGMA_Z, linalg.ID2)
_SZ2 = linalg.kron(linalg.ID2, linalg.SIGMA_Z)
_SX_TOTAL = linalg.kron(linalg.SIGMA_X, linalg.ID2) + linalg.kron(linalg.ID2, linalg.SIGMA_X)
_SZSZ = linalg.kron(linalg.SIGMA_Z, linalg.SIGMA_Z)


@dataclass(frozen=True)
class HardwareParams:
    """Spectrometer parameters; defaults are the 13C/1H chloroform values."""

    j_12: float = 2.0 * math.pi * 214.94   # rad/s
    omega_rf: float = 2.0 * math.pi * 25e3  # rad/s

    def __post_init__(self):
        if self.j_12 <= 0.0 or self.omega_rf <= 0.0:
            raise ValueError("hardware frequencies must be positive")


@dataclass(frozen=True)
class PulseSegment:
    """Compiled per-step hardware parameters realizing one target step.

    All durations in seconds, frequencies in rad/s. ``g_x``, ``g_z``, ``j_i``
    snapshot the target the segment was compiled for.
    """

    tau: float
    tau_p: float
    tau_prec: float
    omega_l: float
    omega_rf: float
    g_x: float
    g_z: float
    j_i: float

    @property
    def small_angle_violated(self) -> bool:
        """True when each half pulse exceeds SMALL_ANGLE_LIMIT radians."""
        return self.omega_rf * self.tau_p / 2.0 > SMALL_ANGLE_LIMIT


def nmr_hamiltonian(omega_l1: float, omega_l2: float, j_12: float) -> np.ndarray:
    """Static two-spin Hamiltonian (rad/s), diagonal in the computational basis."""
    return 0.5 * omega_l1 * _SZ1 + 0.5 * omega_l2 * _SZ2 + 0.25 * j_12 * _SZSZ


def rf_hamiltonian(omega_rf: float) -> np.ndarray:
    """On-resonance rf drive of equal strength on both spins (rad/s)."""
    return 0.5 * omega_rf * _SX_TOTAL


def compile_step(target: ModelParams, tau: float, hw: HardwareParams) -> PulseSegment:
    """Compile one effective-Hamiltonian step of duration tau into a segment.

    Raises :class:`NonPositiveTauError` for tau <= 0. ``g_x = 0`` compiles to
    a pure free-precession segment (tau_p = 0).
    """
    if tau <= 0.0:
        raise NonPositiveTauError(f"step duration must be positive, got {tau}")
    tau_prec = (4.0 * target.j_i / hw.j_12) * tau
    tau_p = (target.omega_x / hw.omega_rf) * tau
    omega_l = (tau / tau_prec) * target.omega_z
    return PulseSegment(tau=tau, tau_p=tau_p, tau_prec=tau_prec, omega_l=omega_l,
                        omega_rf=hw.omega_rf, g_x=target.g_x, g_z=target.g_z,
                        j_i=target.j_i)


def segment_unitary(seg: PulseSegment, hw: HardwareParams) -> np.ndarray:
    """Exact 4x4 unitary of the symmetrized pulse-precession-pulse sequence."""
    prec = linalg.expm_hermitian_generator(
        nmr_hamiltonian(seg.omega_l, seg.omega_l, hw.j_12), seg.tau_prec)
    if seg.tau_p == 0.0:
        return prec
    half = linalg.expm_hermitian_generator(rf_hamiltonian(hw.omega_rf), seg.tau_p / 2.0)
    return half @ prec @ half


def ideal_step_unitary(seg: PulseSegment) -> np.ndarray:
    """Target-step unitary exp(-i H tau) the segment approximates."""
    target = ModelParams(g_x=seg.g_x, g_z=seg.g_z, j_i=seg.j_i)
    return linalg.expm_hermitian_generator(build_hamiltonian(target), seg.j_i * seg.tau)


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value, via the Hermitian eigensolver on a^dag a."""
    w, _ = linalg.hermitian_eigensystem(a.conj().T @ a)
    return math.sqrt(max(w[-1], 0.0))


def trotter_error(seg: PulseSegment, hw: HardwareParams) -> float:
    """Spectral-norm distance between the segment unitary and the ideal step.

    For the symmetrized sequence the error per step scales as tau^3, so
    halving tau (which scales tau_p and tau_prec with it) shrinks the error
    by roughly 8x.
    """
    return spectral_norm(segment_unitary(seg, hw) - ideal_step_unitary(seg))


SEGMENT_CSV_HEADER = ["step", "tau_s", "tau_p_s", "tau_prec_s", "omega_l_rad_s", "g_x", "g_z"]


def write_segment_csv(path, segments) -> None:
    """Dump compiled segments as CSV (documentation artifact, full precision)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SEGMENT_CSV_HEADER)
        for m, seg in enumerate(segments):
            writer.writerow([m] + [f"{x:.17g}" for x in
                                   (seg.tau, seg.tau_p, seg.tau_prec, seg.omega_l,
                                    seg.g_x, seg.g_z)])

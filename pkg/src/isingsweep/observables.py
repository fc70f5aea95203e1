"""Order parameters and state bookkeeping.

The NMR experiment never sees the full density operator: tomography
reconstructs the traceless deviation part, and all published quantities
(fidelity, concurrence, two-spin correlator) are computed from the deviation
renormalized to unit trace. The simulator mirrors that: states produced by
:func:`pseudo_pure` carry their polarization ``alpha`` so extraction is exact
algebra; plain density operators are used as-is, with a spectral fallback for
externally supplied matrices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg, model
from ._kernels import jacobi_eigh
from .errors import DegenerateDeviationError

_YY = linalg.kron(linalg.SIGMA_Y, linalg.SIGMA_Y)
_ZZ = linalg.kron(linalg.SIGMA_Z, linalg.SIGMA_Z)

# Channel arithmetic can leave eigenvalues this far below zero; they are
# clamped before any square root.
EIG_CLAMP = 1e-9


@dataclass(frozen=True)
class PseudoPureState:
    """Density operator (I/4 + alpha |psi><psi|) / (1 + alpha) with alpha tracked.

    Simulator-built states also carry the deviation part itself: dividing the
    stored rho by alpha ~ 1e-5 would amplify representation rounding of the
    I/4 component far above the extraction tolerance.
    """

    rho: np.ndarray
    alpha: float
    deviation: np.ndarray | None = None


def pseudo_pure(psi: np.ndarray, alpha: float) -> PseudoPureState:
    """Trace-renormalized pseudo-pure construction around a normalized ket."""
    psi = np.asarray(psi, dtype=np.complex128)
    if alpha <= 0.0:
        raise ValueError("polarization alpha must be positive")
    norm = float(np.sqrt(np.vdot(psi, psi).real))
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"ket norm {norm} differs from 1")
    projector = linalg.outer(psi)
    rho = (linalg.ID4 / 4.0 + alpha * projector) / (1.0 + alpha)
    return PseudoPureState(rho=rho, alpha=float(alpha), deviation=projector)


def extract_deviation(state) -> np.ndarray:
    """Unit-trace deviation part of a pseudo-pure or plain density operator.

    A :class:`PseudoPureState` either carries its deviation exactly or, with
    alpha known, yields it algebraically: ((1 + alpha) rho - I/4) / alpha.
    For a bare matrix the maximally mixed component is removed spectrally
    (subtract the smallest eigenvalue times the identity, renormalize to
    trace 1), which recovers the projector exactly on ideal pseudo-pure
    inputs. A fully mixed input has no deviation part and raises
    :class:`DegenerateDeviationError`.
    """
    if isinstance(state, PseudoPureState):
        if state.deviation is not None:
            return state.deviation
        return ((1.0 + state.alpha) * state.rho - linalg.ID4 / 4.0) / state.alpha
    rho = np.asarray(state, dtype=np.complex128)
    w, _ = jacobi_eigh(0.5 * (rho + rho.conj().T))
    dev = rho - w[0] * np.eye(rho.shape[0], dtype=np.complex128)
    tr = float(np.trace(dev).real)
    if tr < 1e-12:
        raise DegenerateDeviationError("state has no deviation part (fully mixed)")
    return dev / tr


def _as_operator(state) -> np.ndarray:
    if isinstance(state, PseudoPureState):
        return extract_deviation(state)
    return np.asarray(state, dtype=np.complex128)


def concurrence(state) -> float:
    """Wootters concurrence C = max(l1 - l2 - l3 - l4, 0) of a two-qubit state.

    The l_i are the decreasing square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), with the conjugation taken in the
    computational basis. Implemented through the Hermitian form
    sqrt(rho) rho_tilde sqrt(rho), whose spectrum is the same; tiny negative
    eigenvalues from channel arithmetic are clamped to zero.
    """
    rho = _as_operator(state)
    rho = 0.5 * (rho + rho.conj().T)
    w, v = jacobi_eigh(rho)
    w = np.maximum(w, 0.0)
    sqrt_rho = (v * np.sqrt(w)) @ v.conj().T
    rho_tilde = _YY @ rho.conj() @ _YY
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    mu, _ = jacobi_eigh(0.5 * (m + m.conj().T))
    mu = np.maximum(mu, 0.0)
    # Rank-deficient states (pure projectors) leave O(1e-16) eigenvalue noise
    # that the square root would amplify to O(1e-8); zero it relative to the
    # leading eigenvalue before taking roots.
    mu[mu < 1e-13 * mu[-1]] = 0.0
    lam = np.sqrt(mu)[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0))


def fidelity_vs_ground(state, g_x: float, g_z: float) -> float:
    """Overlap of the state (deviation part for pseudo-pure input) with the
    instantaneous ground state at (g_x, g_z)."""
    rho = _as_operator(state)
    psi = model.ground_state_ket(g_x, g_z)
    val = complex(psi.conj() @ rho @ psi)
    assert abs(val.imag) < 1e-9, "fidelity acquired an imaginary part"
    return float(min(max(val.real, 0.0), 1.0))


def zz_correlator(state) -> float:
    """Two-spin correlator <s_z^1 s_z^2> = Tr(rho s_z^1 s_z^2)."""
    rho = _as_operator(state)
    val = complex(np.trace(rho @ _ZZ))
    assert abs(val.imag) < 1e-12, "correlator acquired an imaginary part"
    return float(min(max(val.real, -1.0), 1.0))


@dataclass(frozen=True)
class TrajectoryRecord:
    """One per-step snapshot of an evolving scan."""

    step: int
    t: float
    g_z: float
    rho: np.ndarray
    fidelity: float
    concurrence: float
    zz: float


@dataclass(frozen=True)
class Trajectory:
    """Per-step record of a full scan: state plus the three order parameters."""

    g_x: float
    records: list[TrajectoryRecord]

    def min_fidelity(self) -> float:
        return min(r.fidelity for r in self.records)

    def final_fidelity(self) -> float:
        return self.records[-1].fidelity

    def peak_concurrence(self) -> float:
        return max(r.concurrence for r in self.records)

    def trace_defect(self) -> float:
        """Largest |Tr(rho) - 1| over the trajectory."""
        return max(abs(float(np.trace(r.rho).real) - 1.0) for r in self.records)

    def min_eigenvalue(self) -> float:
        """Smallest density-operator eigenvalue encountered."""
        worst = math.inf
        for r in self.records:
            w, _ = jacobi_eigh(0.5 * (r.rho + r.rho.conj().T))
            worst = min(worst, float(w[0]))
        return worst

"""Two-spin transverse-field Ising model.

In dimensionless form the Hamiltonian is

    H / J_I = g_z (s_z^1 + s_z^2) + g_x (s_x^1 + s_x^2) + s_z^1 s_z^2

with g_x = omega_x / (2 J_I) and g_z = omega_z / (2 J_I). The singlet
|Psi-> = (|ud> - |du>)/sqrt(2) is an exact eigenvector at eigenvalue -1 for
every parameter choice, so the physics lives in the triplet sector spanned by
(|uu>, |Psi+>, |dd>). This module provides the 4x4 Hamiltonian, the closed-form
triplet eigensystem (eigenvalues through the trigonometric cubic solution,
eigenvectors through the rational amplitude triple), and the ground-state
phase classification with critical points at g_z = +-1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .errors import DegenerateFormulationError

# Below this transverse field the closed-form eigenvector amplitudes are 0/0
# and the numeric eigensolver must be used instead.
GX_DEGENERATE = 1e-8

_SZ_TOTAL = linalg.kron(linalg.SIGMA_Z, linalg.ID2) + linalg.kron(linalg.ID2, linalg.SIGMA_Z)
_SX_TOTAL = linalg.kron(linalg.SIGMA_X, linalg.ID2) + linalg.kron(linalg.ID2, linalg.SIGMA_X)
_SZSZ = linalg.kron(linalg.SIGMA_Z, linalg.SIGMA_Z)


class PhaseLabel(Enum):
    """Ground-state character as a function of the longitudinal field."""

    FERRO_UP = "ferro-up"          # g_z < -1, ground state ~ |uu>
    ENTANGLED = "entangled"        # -1 < g_z < 1, ground state ~ |Psi+>
    FERRO_DOWN = "ferro-down"      # g_z > 1, ground state ~ |dd>
    CRITICAL = "critical"          # |g_z| = 1


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless fields and the coupling that sets the energy scale.

    Parameters
    ----------
    g_x : float
        Transverse field omega_x / (2 J_I). The model is intended for
        |g_x| << 1; larger values are accepted but flagged.
    g_z : float
        Longitudinal field omega_z / (2 J_I).
    j_i : float
        Spin-spin coupling J_I in rad/s, strictly positive.
    """

    g_x: float
    g_z: float
    j_i: float

    def __post_init__(self):
        if self.j_i <= 0.0:
            raise ValueError("coupling j_i must be positive")

    @property
    def strong_transverse_field(self) -> bool:
        """True when |g_x| > 0.5, outside the small-transverse-field regime."""
        return abs(self.g_x) > 0.5

    @property
    def omega_x(self) -> float:
        return 2.0 * self.j_i * self.g_x

    @property
    def omega_z(self) -> float:
        return 2.0 * self.j_i * self.g_z


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    """4x4 Hamiltonian in units of J_I, computational basis (|uu>,|ud>,|du>,|dd>)."""
    return params.g_z * _SZ_TOTAL + params.g_x * _SX_TOTAL + _SZSZ


def triplet_block(g_x: float, g_z: float) -> np.ndarray:
    """3x3 triplet-sector Hamiltonian (units of J_I) in the (|uu>,|Psi+>,|dd>) basis.

    Built by conjugating the full 4x4 Hamiltonian with the fixed symmetry
    basis change and reading the upper 3x3 block, so the 4x4 form stays the
    single source of truth.
    """
    h = build_hamiltonian(ModelParams(g_x=g_x, g_z=g_z, j_i=1.0))
    s = linalg.SYMMETRY_BASIS
    return (s.conj().T @ h @ s)[:3, :3]


@dataclass(frozen=True)
class TripletEigensystem:
    """Triplet-sector spectrum at one (g_x, g_z) point.

    Attributes
    ----------
    xi : ndarray, shape (3,)
        Dimensionless eigenvalue factors, ascending (xi[0] <= xi[1] <= xi[2]).
    energies : ndarray, shape (3,)
        j_i * xi in rad/s.
    states : ndarray, shape (3, 3)
        Orthonormal eigenvector columns in the (|uu>, |Psi+>, |dd>) basis,
        real entries, phase fixed as in :func:`linalg.hermitian_eigensystem`.
    r, theta : float
        Intermediates of the trigonometric cubic solution:
        r = 2 sqrt(3 (g_x^2 + g_z^2) + 1),
        theta = arccos(4 (18 g_z^2 - 9 g_x^2 - 2) / r^3) / 3.
    norm_sq : ndarray or None
        Closed-form normalization constants M_i (squared norms of the
        unnormalized amplitude triples); None when the eigenvectors came
        from the numeric fallback.
    """

    xi: np.ndarray
    energies: np.ndarray
    states: np.ndarray
    r: float
    theta: float
    norm_sq: np.ndarray | None


def _xi_closed_form(g_x: float, g_z: float) -> tuple[np.ndarray, float, float]:
    r = 2.0 * math.sqrt(3.0 * (g_x * g_x + g_z * g_z) + 1.0)
    # Floating-point drift in r**3 can push the argument past +-1 by ~1e-15.
    arg = 4.0 * (18.0 * g_z * g_z - 9.0 * g_x * g_x - 2.0) / r**3
    arg = min(1.0, max(-1.0, arg))
    theta = math.acos(arg) / 3.0
    xi1 = (1.0 - 2.0 * r * math.cos(theta - math.pi / 3.0)) / 3.0
    xi2 = (1.0 - 2.0 * r * math.cos(theta + math.pi / 3.0)) / 3.0
    xi3 = (2.0 * r * math.cos(theta) + 1.0) / 3.0
    return np.array([xi1, xi2, xi3]), r, theta


def triplet_eigensystem_analytic(g_x: float, g_z: float, j_i: float = 1.0,
                                 include_states: bool = True) -> TripletEigensystem:
    """Closed-form triplet eigensystem.

    Eigenvalues are the roots of the characteristic cubic in trigonometric
    form; they are valid for any g_x. The eigenvector amplitude triple

        ( (xi^2 + 2 (xi + 1) g_z - 1 - 2 g_x^2) / (2 g_x^2),
          (xi - 1 + 2 g_z) / (sqrt(2) g_x),
          1 )

    divides by g_x, so for |g_x| < 1e-8 requesting states raises
    :class:`DegenerateFormulationError` and the caller must use the numeric
    eigensolver (see :func:`triplet_eigensystem`).
    """
    xi, r, theta = _xi_closed_form(g_x, g_z)
    states = np.zeros((3, 3))
    norm_sq = None
    if include_states:
        if abs(g_x) < GX_DEGENERATE:
            raise DegenerateFormulationError(
                "closed-form eigenvectors are 0/0 at g_x ~ 0; use the numeric fallback")
        norm_sq = np.empty(3)
        for i, x in enumerate(xi):
            amp_uu = (x * x + 2.0 * (x + 1.0) * g_z - 1.0 - 2.0 * g_x * g_x) / (2.0 * g_x * g_x)
            amp_pp = (x - 1.0 + 2.0 * g_z) / (math.sqrt(2.0) * g_x)
            norm_sq[i] = amp_uu * amp_uu + amp_pp * amp_pp + 1.0
            vec = np.array([amp_uu, amp_pp, 1.0]) / math.sqrt(norm_sq[i])
            k = int(np.argmax(np.abs(vec)))
            if vec[k] < 0.0:
                vec = -vec
            states[:, i] = vec
    return TripletEigensystem(xi=xi, energies=j_i * xi, states=states,
                              r=r, theta=theta, norm_sq=norm_sq)


def triplet_eigensystem(g_x: float, g_z: float, j_i: float = 1.0) -> TripletEigensystem:
    """Triplet eigensystem with automatic numeric fallback at g_x ~ 0."""
    if abs(g_x) >= GX_DEGENERATE:
        return triplet_eigensystem_analytic(g_x, g_z, j_i)
    _, r, theta = _xi_closed_form(g_x, g_z)
    w, v = linalg.hermitian_eigensystem(triplet_block(g_x, g_z))
    return TripletEigensystem(xi=w, energies=j_i * w, states=v.real.copy(),
                              r=r, theta=theta, norm_sq=None)


def ground_state_ket(g_x: float, g_z: float) -> np.ndarray:
    """Ground state as a 4-component ket in the computational basis."""
    es = triplet_eigensystem(g_x, g_z)
    a, b, c = es.states[:, 0]
    inv = 1.0 / math.sqrt(2.0)
    return np.array([a, b * inv, b * inv, c], dtype=np.complex128)


def classify_phase(g_z: float, tol: float = 1e-9) -> PhaseLabel:
    """Ground-state phase from the longitudinal field alone (g_x << 1 regime)."""
    if abs(abs(g_z) - 1.0) < tol:
        return PhaseLabel.CRITICAL
    if g_z < -1.0:
        return PhaseLabel.FERRO_UP
    if g_z > 1.0:
        return PhaseLabel.FERRO_DOWN
    return PhaseLabel.ENTANGLED

"""Dense complex linear algebra on the 2-, 3- and 4-dimensional spin spaces.

Everything is a plain ``numpy.ndarray`` with complex128 entries: state
vectors are 1-D, operators 2-D. Conventions used throughout the package:

* qubit 1 is the LEFT Kronecker factor;
* the two-qubit computational basis is ordered (|uu>, |ud>, |du>, |dd>)
  with |u> = (1, 0) the spin-up state;
* eigensolver output is sorted ascending and each eigenvector's phase is
  fixed so its largest-magnitude component is real and positive.

The eigensolver is a hand-rolled cyclic Jacobi iteration (compiled kernel
with a pure-Python fallback, see ``_kernels``): at dimension <= 4 it is
effectively exact and keeps the hot loops free of general-purpose LAPACK
dispatch overhead.
"""
from __future__ import annotations

import numpy as np

from ._kernels import apply_kraus, expm_generator, jacobi_eigh
from .errors import NotHermitianError, NotTracePreservingError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
ID2 = np.eye(2, dtype=np.complex128)
ID4 = np.eye(4, dtype=np.complex128)

KET_UP = np.array([1, 0], dtype=np.complex128)
KET_DOWN = np.array([0, 1], dtype=np.complex128)
KET_UU = np.array([1, 0, 0, 0], dtype=np.complex128)
KET_UD = np.array([0, 1, 0, 0], dtype=np.complex128)
KET_DU = np.array([0, 0, 1, 0], dtype=np.complex128)
KET_DD = np.array([0, 0, 0, 1], dtype=np.complex128)
PSI_PLUS = np.array([0, 1, 1, 0], dtype=np.complex128) / np.sqrt(2.0)
PSI_MINUS = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2.0)

# Columns: |uu>, |Psi+>, |dd>, |Psi->. Conjugating a two-qubit operator with
# this matrix moves it to the symmetry-adapted basis; the upper 3x3 block is
# then the triplet sector.
SYMMETRY_BASIS = np.column_stack([KET_UU, PSI_PLUS, KET_DD, PSI_MINUS])

HERMITICITY_TOL = 1e-9


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def outer(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi|."""
    return np.outer(psi, psi.conj())


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with qubit 1 as the left factor of the result."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def hermiticity_defect(h: np.ndarray) -> float:
    """Largest entrywise deviation of h from its own adjoint."""
    return float(np.max(np.abs(h - h.conj().T)))


def _require_hermitian(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=np.complex128)
    defect = hermiticity_defect(h)
    if defect >= HERMITICITY_TOL:
        raise NotHermitianError(f"matrix deviates from Hermiticity by {defect:.3e}")
    return 0.5 * (h + h.conj().T)


def hermitian_eigensystem(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of Hermitian h.

    Raises :class:`NotHermitianError` when ``max |h - h^dag|`` is 1e-9 or
    larger; smaller defects are symmetrized away before solving.
    """
    return jacobi_eigh(_require_hermitian(h))


def expm_hermitian_generator(h: np.ndarray, t: float) -> np.ndarray:
    """Unitary exp(-i * h * t) for Hermitian h.

    ``t`` carries whatever units make ``h * t`` dimensionless (h in rad/s and
    t in seconds, or both dimensionless).
    """
    return expm_generator(_require_hermitian(h), float(t))


def apply_channel(rho: np.ndarray, kraus) -> np.ndarray:
    """Quantum channel rho -> sum_k K rho K^dag.

    The Kraus set must satisfy sum_k K^dag K = I within 1e-10, otherwise
    :class:`NotTracePreservingError` is raised. Hermiticity of the output is
    exact (symmetrized accumulation); the trace is preserved to rounding.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    ks = np.asarray(kraus, dtype=np.complex128)
    if ks.ndim == 2:
        ks = ks[None, :, :]
    ident = np.eye(rho.shape[0], dtype=np.complex128)
    completeness = sum(k.conj().T @ k for k in ks)
    defect = float(np.max(np.abs(completeness - ident)))
    if defect > 1e-10:
        raise NotTracePreservingError(f"Kraus completeness fails by {defect:.3e}")
    return apply_kraus(rho, ks)


def check_density_operator(rho: np.ndarray, *, herm_tol: float = 1e-12,
                           trace_tol: float = 1e-10, eig_floor: float = -1e-10) -> None:
    """Validate the density-operator invariants; raises ValueError on failure."""
    rho = np.asarray(rho)
    defect = hermiticity_defect(rho)
    if defect >= herm_tol:
        raise NotHermitianError(f"density operator not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density operator trace {tr} differs from 1")
    w, _ = jacobi_eigh(0.5 * (rho + rho.conj().T))
    if w[0] < eig_floor:
        raise ValueError(f"density operator has eigenvalue {w[0]:.3e} below {eig_floor}")

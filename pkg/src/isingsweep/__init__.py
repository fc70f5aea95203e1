"""Desk-scale simulator of a two-spin transverse-field Ising sweep.

Builds the model Hamiltonian, compiles each step of an adiabatic g_z scan
into an NMR pulse segment, evolves a density operator through the scan with
optional relaxation, and reports the order parameters (ground-state fidelity,
Wootters concurrence, two-spin correlator) used to locate the quantum
critical points at g_z = +-1.
"""
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]

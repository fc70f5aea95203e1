"""Kernel backend selection.

Imports the compiled Cython kernels when the extension is built, otherwise
falls back to the pure-Python implementation. Set ``ISINGSWEEP_FORCE_FALLBACK=1``
to force the fallback (used by the benchmark and backend-agreement tests).
"""
import os

from . import _fallback

if os.environ.get("ISINGSWEEP_FORCE_FALLBACK"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

jacobi_eigh = _impl.jacobi_eigh
expm_generator = _impl.expm_generator
apply_kraus = _impl.apply_kraus

__all__ = ["BACKEND", "jacobi_eigh", "expm_generator", "apply_kraus"]

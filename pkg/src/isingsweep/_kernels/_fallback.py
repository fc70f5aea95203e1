"""Pure-Python implementation of the hot numeric kernels.

`isingsweep._kernels._core` (Cython) implements the same algorithms with the
same operation order; this module is the fallback selected at import time when
the extension is not built. Matrices are dense complex128 and never larger
than 4x4, so plain loops are adequate here and exact agreement between the
two backends is easy to maintain.
"""
import math

import numpy as np

_MAX_SWEEPS = 40
_OFF_TOL = 1e-15


def jacobi_eigh(h):
    """Cyclic-Jacobi eigendecomposition of a small Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvector columns ``v``. Each column's phase is fixed so that its
    largest-magnitude component is real and positive. The input is assumed
    Hermitian; only the upper triangle and the real diagonal are read.
    """
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale = max(scale, abs(a[i, j]))
    threshold = _OFF_TOL * (scale + 1.0)

    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q, n)
    else:
        raise RuntimeError("Jacobi sweep did not converge")

    w = np.array([a[i, i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(n):
        _fix_phase(v, k, n)
    return w, v


def _rotate(a, v, p, q, n):
    """One Jacobi rotation zeroing a[p, q] (unitary congruence)."""
    apq = a[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = apq / mag
    alpha = a[p, p].real
    beta = a[q, q].real
    tau = (alpha - beta) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    s_ph = s * phase

    # A <- A J   (J differs from identity only in columns p, q)
    for i in range(n):
        aip = a[i, p]
        aiq = a[i, q]
        a[i, p] = c * aip + s_ph.conjugate() * aiq
        a[i, q] = -s_ph * aip + c * aiq
    # A <- J^dag A
    for j in range(n):
        apj = a[p, j]
        aqj = a[q, j]
        a[p, j] = c * apj + s_ph * aqj
        a[q, j] = -s_ph.conjugate() * apj + c * aqj
    # V <- V J
    for i in range(n):
        vip = v[i, p]
        viq = v[i, q]
        v[i, p] = c * vip + s_ph.conjugate() * viq
        v[i, q] = -s_ph * vip + c * viq
    a[p, q] = 0.0
    a[q, p] = 0.0


def _fix_phase(v, k, n):
    idx = 0
    best = abs(v[0, k])
    for i in range(1, n):
        m = abs(v[i, k])
        if m > best:
            best = m
            idx = i
    if best > 0.0:
        v[:, k] *= v[idx, k].conjugate() / best


def expm_generator(h, t):
    """exp(-i * h * t) for Hermitian h, via the Jacobi eigendecomposition."""
    w, v = jacobi_eigh(h)
    phases = np.exp(-1j * w * t)
    return (v * phases) @ v.conj().T


def apply_kraus(rho, kraus):
    """Operator sum ``sum_k K rho K^dag`` with Hermitian-symmetrized accumulation."""
    n = rho.shape[0]
    acc = np.zeros((n, n), dtype=np.complex128)
    for k in kraus:
        acc += k @ rho @ k.conj().T
    out = np.empty_like(acc)
    for i in range(n):
        out[i, i] = acc[i, i].real
        for j in range(i + 1, n):
            val = 0.5 * (acc[i, j] + acc[j, i].conjugate())
            out[i, j] = val
            out[j, i] = val.conjugate()
    return out

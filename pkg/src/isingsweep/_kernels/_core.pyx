# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot numeric kernels.

Mirrors ``_fallback.py`` operation for operation; see that module for the
algorithm notes. Matrices are dense complex128, dimension <= 4.
"""
from libc.math cimport sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF MAX_DIM = 4
DEF MAX_SWEEPS = 40
DEF OFF_TOL = 1e-15


cdef inline double _cabs(double complex z) noexcept:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef int _jacobi(double complex[:, ::1] a, double complex[:, ::1] v, int n) noexcept:
    cdef int i, j, p, q, sweep
    cdef double scale = 0.0, off, mag, alpha, beta, tau, t, c, s
    cdef double complex apq, phase, s_ph, s_ph_c, tmp_p, tmp_q

    for i in range(n):
        for j in range(n):
            if _cabs(a[i, j]) > scale:
                scale = _cabs(a[i, j])
    cdef double threshold = OFF_TOL * (scale + 1.0)

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                if _cabs(a[p, q]) > off:
                    off = _cabs(a[p, q])
        if off <= threshold:
            return 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = _cabs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                alpha = a[p, p].real
                beta = a[q, q].real
                tau = (alpha - beta) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                s_ph = s * phase
                s_ph_c = s_ph.conjugate()

                for i in range(n):
                    tmp_p = a[i, p]
                    tmp_q = a[i, q]
                    a[i, p] = c * tmp_p + s_ph_c * tmp_q
                    a[i, q] = -s_ph * tmp_p + c * tmp_q
                for j in range(n):
                    tmp_p = a[p, j]
                    tmp_q = a[q, j]
                    a[p, j] = c * tmp_p + s_ph * tmp_q
                    a[q, j] = -s_ph_c * tmp_p + c * tmp_q
                for i in range(n):
                    tmp_p = v[i, p]
                    tmp_q = v[i, q]
                    v[i, p] = c * tmp_p + s_ph_c * tmp_q
                    v[i, q] = -s_ph * tmp_p + c * tmp_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    return 1


def jacobi_eigh(h):
    """Cyclic-Jacobi eigendecomposition; see the fallback docstring."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(h, dtype=np.complex128, order="C")
    cdef int n = a.shape[0]
    if n > MAX_DIM:
        raise ValueError("kernel supports dimensions up to 4")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.eye(n, dtype=np.complex128)

    if _jacobi(a, v, n):
        raise RuntimeError("Jacobi sweep did not converge")

    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n, dtype=np.float64)
    cdef int i, k, idx
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = np.ascontiguousarray(v[:, order])

    cdef double best, m
    cdef double complex ph
    for k in range(n):
        idx = 0
        best = _cabs(v[0, k])
        for i in range(1, n):
            m = _cabs(v[i, k])
            if m > best:
                best = m
                idx = i
        if best > 0.0:
            ph = v[idx, k].conjugate() / best
            for i in range(n):
                v[i, k] = v[i, k] * ph
    return w, v


def expm_generator(h, double t):
    """exp(-i * h * t) for Hermitian h, via the Jacobi eigendecomposition."""
    w, v = jacobi_eigh(h)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] vv = v
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ww = w
    cdef int n = vv.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] u = np.zeros((n, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ph = np.exp(-1j * ww * t)
    cdef int i, j, k
    cdef double complex acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc = acc + vv[i, k] * ph[k] * vv[j, k].conjugate()
            u[i, j] = acc
    return u


def apply_kraus(rho, kraus):
    """Operator sum ``sum_k K rho K^dag`` with Hermitian-symmetrized accumulation."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] ks = np.ascontiguousarray(kraus, dtype=np.complex128)
    cdef int n = r.shape[0]
    cdef int nk = ks.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] acc = np.zeros((n, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] tmp = np.empty((n, n), dtype=np.complex128)
    cdef int m, i, j, k
    cdef double complex s

    for m in range(nk):
        # tmp = K rho
        for i in range(n):
            for j in range(n):
                s = 0.0
                for k in range(n):
                    s = s + ks[m, i, k] * r[k, j]
                tmp[i, j] = s
        # acc += tmp K^dag
        for i in range(n):
            for j in range(n):
                s = 0.0
                for k in range(n):
                    s = s + tmp[i, k] * ks[m, j, k].conjugate()
                acc[i, j] = acc[i, j] + s

    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((n, n), dtype=np.complex128)
    cdef double complex val
    for i in range(n):
        out[i, i] = acc[i, i].real
        for j in range(i + 1, n):
            val = 0.5 * (acc[i, j] + acc[j, i].conjugate())
            out[i, j] = val
            out[j, i] = val.conjugate()
    return out

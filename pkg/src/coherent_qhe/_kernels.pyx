# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels; see ``_fallback.py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def rk4_mean(double gain, double loss, double scale, double n0, double dt,
             Py_ssize_t n_steps, double cap):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] values = np.full(n_steps + 1, np.nan)
    cdef double[::1] v = values
    cdef double a = scale * gain
    cdef double b = scale * (gain - loss)
    cdef double n = n0, k1, k2, k3, k4
    cdef Py_ssize_t i
    v[0] = n
    for i in range(n_steps):
        k1 = a + b * n
        k2 = a + b * (n + 0.5 * dt * k1)
        k3 = a + b * (n + 0.5 * dt * k2)
        k4 = a + b * (n + dt * k3)
        n = n + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        v[i + 1] = n
        if not (n <= cap and n >= -cap):
            return values, i + 1
    return values, n_steps


cdef inline void _deriv(const double[::1] p, double[::1] out, Py_ssize_t m,
                        double gain, double loss, double scale) noexcept nogil:
    cdef Py_ssize_t n
    cdef double acc
    for n in range(m + 1):
        acc = -loss * n * p[n]
        if n < m:
            acc += -gain * (n + 1) * p[n] + loss * (n + 1) * p[n + 1]
        if n > 0:
            acc += gain * n * p[n - 1]
        out[n] = scale * acc


def rk4_chain(p0, double gain, double loss, double scale, double dt,
              Py_ssize_t n_sub, Py_ssize_t n_records):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] parr = np.array(p0, dtype=np.float64, copy=True)
    cdef double[::1] p = parr
    cdef Py_ssize_t m = p.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] means_a = np.empty(n_records + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] norms_a = np.empty(n_records + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tails_a = np.empty(n_records + 1)
    cdef double[::1] means = means_a, norms = norms_a, tails = tails_a
    cdef double[::1] k1 = np.empty(m + 1), k2 = np.empty(m + 1)
    cdef double[::1] k3 = np.empty(m + 1), k4 = np.empty(m + 1)
    cdef double[::1] tmp = np.empty(m + 1)
    cdef Py_ssize_t r, s, n
    cdef double h = 0.5 * dt, sixth = dt / 6.0, mu, nrm

    with nogil:
        mu = 0.0
        nrm = 0.0
        for n in range(m + 1):
            mu += n * p[n]
            nrm += p[n]
        means[0] = mu
        norms[0] = nrm
        tails[0] = p[m]
        for r in range(n_records):
            for s in range(n_sub):
                _deriv(p, k1, m, gain, loss, scale)
                for n in range(m + 1):
                    tmp[n] = p[n] + h * k1[n]
                _deriv(tmp, k2, m, gain, loss, scale)
                for n in range(m + 1):
                    tmp[n] = p[n] + h * k2[n]
                _deriv(tmp, k3, m, gain, loss, scale)
                for n in range(m + 1):
                    tmp[n] = p[n] + dt * k3[n]
                _deriv(tmp, k4, m, gain, loss, scale)
                for n in range(m + 1):
                    p[n] += sixth * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n])
            mu = 0.0
            nrm = 0.0
            for n in range(m + 1):
                mu += n * p[n]
                nrm += p[n]
            means[r + 1] = mu
            norms[r + 1] = nrm
            tails[r + 1] = p[m]
    return parr, means_a, norms_a, tails_a

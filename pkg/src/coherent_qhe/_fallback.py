"""Pure-Python/numpy versions of the RK4 kernels in ``_kernels.pyx``.

Signatures and results match the compiled module; only speed differs.
"""
import numpy as np


def rk4_mean(gain, loss, scale, n0, dt, n_steps, cap):
    """Integrate ``dn/dtau = scale * (gain*(n+1) - loss*n)`` with fixed-step RK4.

    Returns ``(values, n_done)``; integration stops early once ``|n|`` exceeds
    ``cap`` and ``values[n_done + 1:]`` is left as NaN.
    """
    values = np.full(n_steps + 1, np.nan)
    a = scale * gain
    b = scale * (gain - loss)
    n = float(n0)
    values[0] = n
    for i in range(n_steps):
        k1 = a + b * n
        k2 = a + b * (n + 0.5 * dt * k1)
        k3 = a + b * (n + 0.5 * dt * k2)
        k4 = a + b * (n + dt * k3)
        n = n + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        values[i + 1] = n
        if not abs(n) <= cap:
            return values, i + 1
    return values, n_steps


def chain_derivative(p, gain, loss, scale, out=None):
    """Right-hand side of the truncated birth-death master equation.

    Up-rate ``gain*(n+1)`` and down-rate ``loss*n``; the top level has no
    up-transition so total probability is conserved.
    """
    m = p.shape[0] - 1
    n = np.arange(m + 1, dtype=float)
    up = gain * (n + 1.0)
    up[m] = 0.0
    down = loss * n
    if out is None:
        out = np.empty_like(p)
    out[:] = -(up + down) * p
    out[1:] += up[:-1] * p[:-1]
    out[:-1] += down[1:] * p[1:]
    out *= scale
    return out


def rk4_chain(p0, gain, loss, scale, dt, n_sub, n_records):
    """Advance the chain ``n_records`` blocks of ``n_sub`` RK4 steps each.

    Returns ``(p, means, norms, tails)`` with one entry per block boundary,
    including the initial state.
    """
    p = np.array(p0, dtype=float, copy=True)
    m = p.shape[0] - 1
    levels = np.arange(m + 1, dtype=float)
    means = np.empty(n_records + 1)
    norms = np.empty(n_records + 1)
    tails = np.empty(n_records + 1)
    k1 = np.empty_like(p)
    k2 = np.empty_like(p)
    k3 = np.empty_like(p)
    k4 = np.empty_like(p)
    means[0] = levels @ p
    norms[0] = p.sum()
    tails[0] = p[m]
    for r in range(n_records):
        for _ in range(n_sub):
            chain_derivative(p, gain, loss, scale, k1)
            chain_derivative(p + 0.5 * dt * k1, gain, loss, scale, k2)
            chain_derivative(p + 0.5 * dt * k2, gain, loss, scale, k3)
            chain_derivative(p + dt * k3, gain, loss, scale, k4)
            p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        means[r + 1] = levels @ p
        norms[r + 1] = p.sum()
        tails[r + 1] = p[m]
    return p, means, norms, tails

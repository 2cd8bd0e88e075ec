"""Bessel-function helpers for the disk realization.

The Dirichlet Laplacian on the unit disk has eigenvalues -j_{n,k}^2, where
j_{n,k} is the k-th positive zero of J_n.  Zeros are located by a sign-change
scan and polished with Newton's method on J_n (derivative from the standard
recurrence), independent of any library zero tables.

For a spectral parameter lam off that set, the mode-n entry of the
Helmholtz Dirichlet-to-Neumann map has the closed form

    lam > 0:  sqrt(lam) * I_n'(sqrt(lam)) / I_n(sqrt(lam))
    lam < 0:  sqrt(-lam) * J_n'(sqrt(-lam)) / J_n(sqrt(-lam))
    lam = 0:  |n|

used here only as a reference diagonal for reports and cross-checks.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import special


def _jn(n, x):
    return special.jv(n, x)


def _jn_prime(n, x):
    if n == 0:
        return -special.jv(1, x)
    return 0.5 * (special.jv(n - 1, x) - special.jv(n + 1, x))


@lru_cache(maxsize=None)
def bessel_j_zeros(n, count):
    """First ``count`` positive zeros of J_n, bracketed then Newton-refined.

    Refinement runs to an increment below 1e-12; a bisection fallback keeps
    every iterate inside its bracket.
    """
    n = abs(int(n))
    zeros = []
    # J_n > 0 on (0, j_{n,1}); the first zero sits above n.
    x = max(float(n), 1e-3)
    step = 0.25
    f_prev = _jn(n, x)
    while len(zeros) < count:
        x_next = x + step
        f_next = _jn(n, x_next)
        if f_prev == 0.0:
            zeros.append(x)
        elif f_prev * f_next < 0.0:
            zeros.append(_refine_zero(n, x, x_next))
        x, f_prev = x_next, f_next
        if x > n + 4.0 * count + 100.0:
            raise RuntimeError(f"failed to bracket {count} zeros of J_{n}")
    return tuple(zeros[:count])


def _refine_zero(n, lo, hi):
    f_lo = _jn(n, lo)
    x = 0.5 * (lo + hi)
    for _ in range(100):
        f = _jn(n, x)
        if f == 0.0:
            return x
        if f_lo * f < 0.0:
            hi = x
        else:
            lo = x
        dx = f / _jn_prime(n, x)
        x_new = x - dx
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < 1e-12:
            return x_new
        x = x_new
    return x


def dirichlet_eigenvalues(n_max, k_max):
    """Eigenvalues -j_{n,k}^2 for |n| <= n_max, 1 <= k <= k_max (no repeats)."""
    vals = []
    for n in range(0, n_max + 1):
        vals.extend(-z * z for z in bessel_j_zeros(n, k_max))
    return np.array(sorted(vals, reverse=True))


def spectrum_distance(lam, n_max, k_max=20):
    """min over |n| <= n_max, k <= k_max of |lam + j_{n,k}^2|."""
    lam = complex(lam)
    best = np.inf
    for n in range(0, n_max + 1):
        for z in bessel_j_zeros(n, k_max):
            best = min(best, abs(lam + z * z))
    return float(best)


def helmholtz_dtn_diagonal(lam, N):
    """Reference DtN diagonal (modes -N..N) from Bessel quotients.

    Supports real lam away from the Dirichlet spectrum; lam = 0 gives |n|.
    """
    lam = complex(lam)
    if lam.imag != 0.0:
        raise ValueError("closed-form DtN diagonal implemented for real lambda only")
    s = lam.real
    out = np.empty(2 * N + 1, dtype=np.complex128)
    for n in range(-N, N + 1):
        m = abs(n)
        if s == 0.0:
            val = float(m)
        elif s > 0.0:
            x = np.sqrt(s)
            val = x * special.ivp(m, x) / special.iv(m, x)
        else:
            x = np.sqrt(-s)
            val = x * _jn_prime(m, x) / _jn(m, x)
        out[n + N] = val
    return out

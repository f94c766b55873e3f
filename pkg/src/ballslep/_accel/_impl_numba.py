"""Numba-jitted implementations of the hot kernels (same contracts as numpy)."""

import numpy as np
from numba import njit


@njit(cache=True)
def _jacobi_table_core(nmax, alpha, beta, x, out):
    npts = x.size
    for p in range(npts):
        out[0, p] = 1.0
    if nmax == 0:
        return
    ab = alpha + beta
    for p in range(npts):
        out[1, p] = (alpha + 1.0) + (ab + 2.0) * (x[p] - 1.0) / 2.0
    for n in range(2, nmax + 1):
        c1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0)
        c2 = (2.0 * n + ab - 1.0) * (alpha * alpha - beta * beta)
        c3 = (2.0 * n + ab - 1.0) * (2.0 * n + ab) * (2.0 * n + ab - 2.0)
        c4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + ab)
        for p in range(npts):
            out[n, p] = ((c2 + c3 * x[p]) * out[n - 1, p] - c4 * out[n - 2, p]) / c1


def jacobi_table(nmax, alpha, beta, x):
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.empty((nmax + 1, x.size))
    _jacobi_table_core(nmax, float(alpha), float(beta), np.ascontiguousarray(x), out)
    return out


@njit(cache=True)
def _assoc_legendre_core(jmax, u, out):
    npts = u.size
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for p in range(npts):
        out[0, p] = inv_sqrt2
    if jmax == 0:
        return
    for m in range(1, jmax + 1):
        c = np.sqrt((2.0 * m + 1.0) / (2.0 * m))
        r = m * (m + 1) // 2 + m
        rp = (m - 1) * m // 2 + (m - 1)
        for p in range(npts):
            s = np.sqrt(max(1.0 - u[p] * u[p], 0.0))
            out[r, p] = c * s * out[rp, p]
    for m in range(0, jmax):
        c = np.sqrt(2.0 * m + 3.0)
        r = (m + 1) * (m + 2) // 2 + m
        rp = m * (m + 1) // 2 + m
        for p in range(npts):
            out[r, p] = c * u[p] * out[rp, p]
        for j in range(m + 2, jmax + 1):
            a = np.sqrt((4.0 * j * j - 1.0) / (j * j - m * m))
            b = np.sqrt((4.0 * (j - 1.0) ** 2 - 1.0) / ((j - 1.0) ** 2 - m * m))
            r = j * (j + 1) // 2 + m
            r1 = (j - 1) * j // 2 + m
            r2 = (j - 2) * (j - 1) // 2 + m
            for p in range(npts):
                out[r, p] = a * (u[p] * out[r1, p] - out[r2, p] / b)


def assoc_legendre_table(jmax, u):
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    nrows = (jmax + 1) * (jmax + 2) // 2
    out = np.zeros((nrows, u.size))
    _assoc_legendre_core(jmax, np.ascontiguousarray(u), out)
    return out


@njit(cache=True)
def _gram_combine_3d(rad, pol, az, ridx, pidx, aidx, g):
    n = ridx.size
    for a in range(n):
        ra, pa, aa = ridx[a], pidx[a], aidx[a]
        for b in range(n):
            g[a, b] = rad[ra, ridx[b]] * pol[pa, pidx[b]] * az[aa, aidx[b]]


@njit(cache=True)
def _gram_combine_2d(rad, az, ridx, aidx, g):
    n = ridx.size
    for a in range(n):
        ra, aa = ridx[a], aidx[a]
        for b in range(n):
            g[a, b] = rad[ra, ridx[b]] * az[aa, aidx[b]]


def gram_combine(rad, pol, az, ridx, pidx, aidx):
    n = len(ridx)
    g = np.empty((n, n))
    ridx = np.ascontiguousarray(ridx, dtype=np.int64)
    aidx = np.ascontiguousarray(aidx, dtype=np.int64)
    if pol is None:
        _gram_combine_2d(np.ascontiguousarray(rad), np.ascontiguousarray(az), ridx, aidx, g)
    else:
        pidx = np.ascontiguousarray(pidx, dtype=np.int64)
        _gram_combine_3d(
            np.ascontiguousarray(rad), np.ascontiguousarray(pol), np.ascontiguousarray(az), ridx, pidx, aidx, g
        )
    return g

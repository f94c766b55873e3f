"""Pure-numpy implementations of the hot kernels."""

import numpy as np


def jacobi_table(nmax, alpha, beta, x):
    """Table of Jacobi polynomials P_i^{alpha,beta}(x), rows i = 0..nmax.

    Standard normalization P_i(1) = binom(i+alpha, i); three-term recurrence,
    stable for alpha, beta > -1.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.empty((nmax + 1, x.size))
    out[0] = 1.0
    if nmax == 0:
        return out
    ab = alpha + beta
    out[1] = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0
    for n in range(2, nmax + 1):
        c1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0)
        c2 = (2.0 * n + ab - 1.0) * (alpha * alpha - beta * beta)
        c3 = (2.0 * n + ab - 1.0) * (2.0 * n + ab) * (2.0 * n + ab - 2.0)
        c4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + ab)
        out[n] = ((c2 + c3 * x) * out[n - 1] - c4 * out[n - 2]) / c1
    return out


def assoc_legendre_table(jmax, u):
    """Orthonormal associated Legendre table, rows keyed by j*(j+1)/2 + m.

    Row (j, m) holds N_{jm} P_j^m(u) with int_{-1}^{1} (N P)^2 du = 1; no
    Condon-Shortley phase (sectoral values are nonnegative).
    """
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    nrows = (jmax + 1) * (jmax + 2) // 2
    out = np.zeros((nrows, u.size))
    s = np.sqrt(np.maximum(1.0 - u * u, 0.0))
    out[0] = 1.0 / np.sqrt(2.0)
    if jmax == 0:
        return out

    def rid(j, m):
        return j * (j + 1) // 2 + m

    for m in range(1, jmax + 1):
        out[rid(m, m)] = np.sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * out[rid(m - 1, m - 1)]
    for m in range(0, jmax):
        out[rid(m + 1, m)] = np.sqrt(2.0 * m + 3.0) * u * out[rid(m, m)]
        for j in range(m + 2, jmax + 1):
            a = np.sqrt((4.0 * j * j - 1.0) / (j * j - m * m))
            b = np.sqrt((4.0 * (j - 1.0) ** 2 - 1.0) / ((j - 1.0) ** 2 - m * m))
            out[rid(j, m)] = a * (u * out[rid(j - 1, m)] - out[rid(j - 2, m)] / b)
    return out


def gram_combine(rad, pol, az, ridx, pidx, aidx):
    """Combine 1-d pair tables into the dense Gram matrix.

    Entry (a, b) = rad[ridx_a, ridx_b] * pol[pidx_a, pidx_b] * az[aidx_a, aidx_b];
    ``pol`` may be None (2-d case, no polar factor).
    """
    g = rad[np.ix_(ridx, ridx)] * az[np.ix_(aidx, aidx)]
    if pol is not None:
        g *= pol[np.ix_(pidx, pidx)]
    return g

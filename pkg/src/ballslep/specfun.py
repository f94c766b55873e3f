"""Scalar special functions used by the kernel and basis evaluations.

All functions are pure and reentrant.  Jacobi polynomials use the classical
normalization P_n^{a,b}(1) = binom(n+a, n); orthonormal rescalings live in the
basis/kernel layers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._accel import jacobi_table


class ParameterError(ValueError):
    """Raised for arguments outside a function's supported range."""


def gamma_fn(z: float) -> float:
    """Gamma function for positive real argument."""
    return math.gamma(z)


def binom_real(z: float, k: int) -> float:
    """Binomial coefficient binom(z, k) for real z > k - 1, integer k >= 0."""
    if k < 0:
        raise ParameterError("binom_real requires k >= 0")
    if float(z).is_integer() and z >= 0:
        return float(math.comb(int(z), k)) if z >= k else 0.0
    return _binom_gamma(z, k)


def _binom_gamma(z, k):
    return math.gamma(z + 1.0) / (math.gamma(k + 1.0) * math.gamma(z - k + 1.0))


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi exponent pair (alpha, beta), both > -1."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise ParameterError(f"Jacobi parameters must exceed -1, got {self.alpha}, {self.beta}")


def jacobi_poly(n: int, p: JacobiParams, x: float) -> float:
    """Jacobi polynomial P_n^{alpha,beta}(x) by three-term recurrence.

    Evaluation outside [-1, 1] is permitted (used by the bound calculators);
    orthogonality statements only apply on the interval.
    """
    if n < 0:
        raise ParameterError("degree must be nonnegative")
    return float(jacobi_table(n, p.alpha, p.beta, np.array([float(x)]))[n, 0])


def jacobi_values(nmax: int, alpha: float, beta: float, x) -> np.ndarray:
    """Table P_i^{alpha,beta}(x) for i = 0..nmax over an array of points."""
    if alpha <= -1.0 or beta <= -1.0:
        raise ParameterError(f"Jacobi parameters must exceed -1, got {alpha}, {beta}")
    return jacobi_table(int(nmax), float(alpha), float(beta), np.asarray(x, dtype=np.float64))


def legendre_gegenbauer(j: int, d: int, t) -> float | np.ndarray:
    """Legendre polynomial P_j(t) for the (d-1)-sphere, normalized to P_j(1) = 1.

    Coincides with the classical Legendre polynomial for d = 3 and with the
    Chebyshev polynomial T_j for d = 2.
    """
    if d < 2:
        raise ParameterError("dimension must be at least 2")
    if j < 0:
        raise ParameterError("degree must be nonnegative")
    lam = (d - 3) / 2.0
    scalar = np.isscalar(t)
    vals = jacobi_values(j, lam, lam, np.atleast_1d(t))[j]
    vals = vals / binom_real(j + lam, j)
    return float(vals[0]) if scalar else vals


def chebyshev_T(n: int, x: float) -> float:
    """Chebyshev polynomial T_n(x); hyperbolic form for x > 1 (no overflow up to n ~ 200)."""
    if n < 0:
        raise ParameterError("degree must be nonnegative")
    if abs(x) <= 1.0:
        return math.cos(n * math.acos(x))
    sign = 1.0 if x > 0 else (-1.0) ** n
    ax = abs(x)
    # (ax + sqrt(ax^2-1))^n computed through n*log to keep intermediate powers finite
    t = n * math.log(ax + math.sqrt(ax * ax - 1.0))
    if t > 700.0:
        return sign * math.inf
    return sign * 0.5 * (math.exp(t) + math.exp(-t))


def log_chebyshev_T(n: int, x: float) -> float:
    """log T_n(x) for x >= 1; used by the eigenvalue-gap trend bounds."""
    if x < 1.0:
        raise ParameterError("log form requires x >= 1")
    t = n * math.log(x + math.sqrt(x * x - 1.0))
    # log(cosh t) with the e^{-2t} correction, safe for large t
    return t + math.log1p(math.exp(-2.0 * t)) - math.log(2.0)


_SERIES_ORDERS = {0.5, 1.0, 1.5}
_BESSEL_SWITCH = 30.0  # series/asymptotic switchover for integer orders


@dataclass(frozen=True)
class BesselOrder:
    """Supported order of J_nu; closed form exactly when 2*nu is an odd integer."""

    nu: float

    def __post_init__(self):
        if self.nu not in _SERIES_ORDERS:
            raise ParameterError(f"unsupported Bessel order {self.nu}; supported: {sorted(_SERIES_ORDERS)}")

    @property
    def representation(self) -> str:
        return "half-integer-closed-form" if (2.0 * self.nu) % 2 == 1 else "integer-series"


def _jstar_series(alpha, z):
    # J*_a(z) = 2^{-a} sum_k (-1)^k (z/2)^{2k} / (k! Gamma(k+a+1))
    q = 0.25 * z * z
    term = 1.0 / math.gamma(alpha + 1.0)
    total = term
    for k in range(1, 200):
        term *= -q / (k * (k + alpha))
        total += term
        if abs(term) < 1e-18 * abs(total) + 1e-300:
            break
    return total * 2.0 ** (-alpha)


def bessel_jstar(alpha: float, z: float) -> float:
    """J*_alpha(z) = z^{-alpha} J_alpha(z), with J*_alpha(0) = 2^{-alpha}/Gamma(alpha+1).

    Orders 1/2 and 3/2 use exact trigonometric closed forms; order 1 uses the
    power series for z <= 30 and the first-order large-argument asymptotic
    beyond (reference-curve accuracy only).
    """
    order = BesselOrder(float(alpha))
    z = float(z)
    if z < 0.0:
        raise ParameterError("argument must be nonnegative")
    if z < 0.6:
        return _jstar_series(order.nu, z)
    if order.nu == 0.5:
        return math.sqrt(2.0 / math.pi) * math.sin(z) / z
    if order.nu == 1.5:
        return math.sqrt(2.0 / math.pi) * (math.sin(z) - z * math.cos(z)) / z**3
    if z <= _BESSEL_SWITCH:
        return _jstar_series(order.nu, z)
    w = z - order.nu * math.pi / 2.0 - math.pi / 4.0
    amp = math.sqrt(2.0 / (math.pi * z))
    corr = (4.0 * order.nu**2 - 1.0) / (8.0 * z)
    return amp * (math.cos(w) - corr * math.sin(w)) / z**order.nu


def sinc(x: float) -> float:
    """sin(x)/x with the removable singularity filled in; even in x."""
    x = float(x)
    if abs(x) < 1e-6:
        return 1.0 - x * x / 6.0
    return math.sin(x) / x

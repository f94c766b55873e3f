"""Shannon-number predictions, polynomial-inequality bounds and scan drivers.

The scan drivers (ratio scans, spectral-shape scans, the optics comparison)
emit finite-bandwidth curves next to analytic reference curves and never
assert convergence; the underlying limits are open for connected bandwidth
sequences, so the outputs are research data, not pass/fail checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import EllSequence, FourierJacobi, PolyDegree, ShapeBand, SpectralShape, SumDegree, index_set
from .geometry import Domain, gauss_legendre, omega_mu, vol_sphere
from .kernels import SumForm, kernel_sum_diag, w0, w0_tilde
from .specfun import ParameterError, chebyshev_T, log_chebyshev_T


@dataclass(frozen=True)
class ShannonPrediction:
    """Asymptotic relative Shannon number int_D W dx for one bandlimit notion."""

    domain: Domain
    notion: str  # "poly" | "fj"
    value: float
    method: str  # "analytic" | "analytic-shell" | "quadrature"


def _angular_measure(domain: Domain) -> float:
    if domain.full_sphere:
        return vol_sphere(domain.dim)
    span = domain.phi2 - domain.phi1
    if domain.dim == 2:
        return span
    return (math.cos(domain.theta1) - math.cos(domain.theta2)) * span


def predicted_shannon(domain: Domain, notion: str, radial_order: int = 64) -> ShannonPrediction:
    """int_D W_0 dx (polynomial notion) or int_D W0~ dx (radial/spherical notion).

    The radial factor is integrated in s = arcsin(r), which removes the
    1/sqrt(1-r^2) endpoint singularity (and, for the tilde weight, cancels the
    r^{d-1} volume factor entirely, making the shell value closed-form).
    """
    d = domain.dim
    if notion not in ("poly", "fj"):
        raise ParameterError("notion must be 'poly' or 'fj'")
    ang = _angular_measure(domain)
    s1, s2 = math.asin(domain.r1), math.asin(domain.r2)
    if notion == "fj":
        value = 2.0 / (math.pi * vol_sphere(d)) * (s2 - s1) * ang
        method = "analytic-shell" if domain.full_sphere else "analytic"
        return ShannonPrediction(domain, notion, value, method)
    if domain.kind == "ball":
        return ShannonPrediction(domain, notion, 1.0, "analytic")
    s, w = gauss_legendre(radial_order, s1, s2)
    radial = float(w @ np.sin(s) ** (d - 1))
    value = omega_mu(0.0, d) * radial * ang
    return ShannonPrediction(domain, notion, value, "quadrature")


# ---------------------------------------------------------------------------
# polynomial inequality bounds


@dataclass(frozen=True)
class RemezBound:
    """Chebyshev growth factor controlling sup norms on a measurable subset."""

    n: int
    d: int
    ratio: float  # |E| / |Omega|
    argument: float
    value: float


def remez_sup_bound(n: int, d: int, ratio: float) -> RemezBound:
    """Sup-norm inflation factor T_n((1+q)/(1-q)) with q = (1 - ratio)^{1/d}.

    ``ratio`` is the measure fraction |E|/|Omega| of the subset; ratio = 1
    makes the factor exactly one, ratio -> 0 blows it up (flagged as inf).
    """
    if not 0.0 <= ratio <= 1.0:
        raise ParameterError("measure ratio must lie in [0, 1]")
    if ratio == 0.0:
        return RemezBound(n, d, ratio, math.inf, math.inf)
    q = (1.0 - ratio) ** (1.0 / d)
    if q >= 1.0:
        return RemezBound(n, d, ratio, math.inf, math.inf)
    arg = (1.0 + q) / (1.0 - q)
    return RemezBound(n, d, ratio, arg, chebyshev_T(n, arg))


def lambda1_lower_gap(n: int, d: int, e_measure: float) -> float:
    """Structural lower bound n^{-2d} T_n(arg)^{-2} on 1 - lambda_1 (constant C = 1).

    ``e_measure`` is the Lebesgue measure of the complement region; the bound
    carries an unknown multiplicative constant and is meant for trend checks
    (its log is asymptotically linear in n).
    """
    if n < 1:
        raise ParameterError("bandlimit must be positive")
    frac = omega_mu(0.5, d) * e_measure
    frac = min(max(frac, 0.0), 1.0)
    q = (1.0 - frac) ** (1.0 / d)
    if q <= 0.0:
        return float(n) ** (-2 * d)
    arg = (1.0 + q) / (1.0 - q)
    return math.exp(-2.0 * d * math.log(n) - 2.0 * log_chebyshev_T(n, arg))


# ---------------------------------------------------------------------------
# scan drivers


def kappa_scan(ell: EllSequence, d: int, kappa: float, m_list, radii) -> dict:
    """Normalized diagonal kernels for coupled bandlimits n = round(kappa m).

    Returns one curve per m plus the tilde-weight reference; all curves are
    data for the open coupled-limit question, no convergence is asserted.
    """
    if kappa <= 0.0:
        raise ParameterError("kappa must be positive")
    radii = np.asarray(radii, dtype=np.float64)
    curves = {}
    for m in m_list:
        n = max(int(round(kappa * m)), 0)
        iset = index_set(FourierJacobi(m, n), d)
        curves[m] = kernel_sum_diag(SumForm(iset, ell), radii) / len(iset)
    return {"radii": radii, "curves": curves, "reference": w0_tilde(radii, d), "kappa": kappa}


def omega_scan(shape: SpectralShape, ell: EllSequence, d: int, n_list, radii) -> dict:
    """Normalized diagonal kernels of shape-bandlimited spaces for several N."""
    shape.validate()
    radii = np.asarray(radii, dtype=np.float64)
    curves = {}
    dims = {}
    for n in n_list:
        iset = index_set(ShapeBand(shape, float(n)), d)
        dims[n] = len(iset)
        curves[n] = kernel_sum_diag(SumForm(iset, ell), radii) / len(iset)
    return {"radii": radii, "curves": curves, "dims": dims, "shape": shape.name}


def optics_compare(n: int, radii, d: int = 2) -> dict:
    """Normalized diagonal kernels of the 2i+j and i+j bandlimit families on the disc.

    Reports the crossing radius of the two curves (linear interpolation on the
    sign change) when one exists; the total-degree curve approaches the
    equilibrium weight 1/(2 pi sqrt(1-r^2)).
    """
    if d != 2:
        raise ParameterError("the optics comparison is a disc (d = 2) experiment")
    radii = np.asarray(radii, dtype=np.float64)
    ell = EllSequence("linear", 0.0)
    set_poly = index_set(PolyDegree(n), d)
    set_breve = index_set(SumDegree(n), d)
    k_poly = kernel_sum_diag(SumForm(set_poly, ell), radii) / len(set_poly)
    k_breve = kernel_sum_diag(SumForm(set_breve, ell), radii) / len(set_breve)
    diff = k_breve - k_poly
    crossing = None
    for a in range(len(radii) - 1):
        if diff[a] == 0.0:
            crossing = float(radii[a])
            break
        if diff[a] * diff[a + 1] < 0.0:
            t = diff[a] / (diff[a] - diff[a + 1])
            crossing = float(radii[a] + t * (radii[a + 1] - radii[a]))
            break
    return {
        "radii": radii,
        "k_poly": k_poly,
        "k_breve": k_breve,
        "reference": w0(radii, 2),
        "crossing": crossing,
        "dims": {"poly": len(set_poly), "breve": len(set_breve)},
    }


def nikolskii_fit_check(
    basis_matrix_fn,
    d: int = 3,
    p: float = 2.0,
    n_fit: int = 2,
    n_max: int = 8,
    samples: int = 40,
    seed: int = 7,
) -> dict:
    """Heuristic check of the sup-vs-L^p growth shape ||f||_inf <= C n^{2d/p} ||f||_p.

    Fits the constant at n = n_fit over random coefficient draws, then
    verifies the inequality with the fitted constant up to n_max on sampled
    grids.  Labeled heuristic: the true constant is existence-only.
    """
    rng = np.random.default_rng(seed)
    ell = EllSequence("linear", 0.0)

    def worst_quotient(n):
        iset = index_set(PolyDegree(n), d)
        bmat, wts = basis_matrix_fn(iset, ell)
        worst = 0.0
        for _ in range(samples):
            coef = rng.standard_normal(len(iset))
            vals = coef @ bmat
            sup = float(np.max(np.abs(vals)))
            lp = float((wts @ np.abs(vals) ** p) ** (1.0 / p))
            worst = max(worst, sup / (n ** (2.0 * d / p) * lp))
        return worst

    c_fit = worst_quotient(n_fit)
    results = {}
    ok = True
    for n in range(n_fit, n_max + 1):
        q = worst_quotient(n)
        results[n] = q
        if q > c_fit * (1.0 + 1e-9):
            ok = False
    return {"label": "heuristic", "p": p, "c_fit": c_fit, "quotients": results, "holds": ok}

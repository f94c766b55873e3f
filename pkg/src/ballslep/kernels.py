"""Reproducing kernels, Christoffel ratios and scaling-limit references.

Two kernel conventions coexist: the closed-form kernel is orthonormal with
respect to the Jacobi probability measure W_mu dx, while sum-form kernels are
built from unit-Lebesgue-norm basis functions.  For mu = 1/2 the two differ
exactly by the constant omega_{1/2}; all comparisons apply that factor
explicitly.  Limit diagnostics always return finite-bandwidth values next to
their analytic targets, never a convergence claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import basis as _basis
from .geometry import gauss_gegenbauer, gauss_jacobi, gauss_legendre, omega_mu, vol_sphere
from .specfun import ParameterError, bessel_jstar, binom_real, gamma_fn, jacobi_values, sinc


class DomainError(ValueError):
    """Raised when a diagnostic is evaluated where its limit does not exist."""


# ---------------------------------------------------------------------------
# limit weights


def w_mu(r, mu: float, d: int):
    """Jacobi weight omega_mu (1-r^2)^{mu-1/2} as a function of the radius."""
    r = np.asarray(r, dtype=np.float64)
    return omega_mu(mu, d) * (1.0 - r * r) ** (mu - 0.5)


def w0(r, d: int):
    """Equilibrium weight omega_0 / sqrt(1-r^2); finite for r < 1."""
    r = np.asarray(r, dtype=np.float64)
    return omega_mu(0.0, d) / np.sqrt(1.0 - r * r)


def w0_tilde(r, d: int):
    """Radial-spherical limit weight 2/(pi vol(S^{d-1}) r^{d-1} sqrt(1-r^2))."""
    r = np.asarray(r, dtype=np.float64)
    return 2.0 / (math.pi * vol_sphere(d)) / (r ** (d - 1) * np.sqrt(1.0 - r * r))


# ---------------------------------------------------------------------------
# kernel specifications


@dataclass(frozen=True)
class PolyClosedForm:
    """Closed-form degree-n kernel for the Jacobi weight W_mu on the ball."""

    mu: float
    n: int
    d: int

    def __post_init__(self):
        if self.mu < 0.0:
            raise ParameterError("mu must be nonnegative")

    @property
    def dim(self) -> int:
        return _basis.dim_poly(self.n, self.d)


@dataclass(frozen=True)
class SumForm:
    """Kernel of the span of an index set, summed in radially factorized form."""

    iset: _basis.IndexSet
    ell: _basis.EllSequence

    @property
    def dim(self) -> int:
        return len(self.iset)


@dataclass(frozen=True)
class HarmClosedForm:
    """Closed-form kernel of the spherical harmonics through degree n."""

    n: int
    d: int

    @property
    def dim(self) -> int:
        return _basis.dim_harm_sum(self.n, self.d)


# ---------------------------------------------------------------------------
# closed-form polynomial kernel


def kernel_poly_closed(mu: float, n: int, d: int, x, y, psi_order: int | None = None):
    """K_n^mu(x, y) for the W_mu-orthonormal polynomial space of degree <= n.

    mu > 0 evaluates the one-dimensional average of a Jacobi polynomial of the
    combined argument x.y + sqrt(1-|x|^2) sqrt(1-|y|^2) cos(psi) against the
    sine-power weight; mu = 0 uses the two-endpoint form.  ``y`` may be a
    single point or an (N, d) array.
    """
    if mu < 0.0:
        raise ParameterError("mu must be nonnegative")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    single = y.ndim == 1
    ypts = np.atleast_2d(y)
    rx2 = float(np.dot(x, x))
    ry2 = np.sum(ypts * ypts, axis=1)
    dot = ypts @ x
    cc = math.sqrt(max(1.0 - rx2, 0.0)) * np.sqrt(np.maximum(1.0 - ry2, 0.0))
    if mu == 0.0:
        pref = gamma_fn((d + 2) / 2.0) * gamma_fn(n + d) / (gamma_fn(d + 1.0) * gamma_fn(n + d / 2.0))
        tab_p = jacobi_values(n, d / 2.0, d / 2.0 - 1.0, np.clip(dot + cc, -1.0, 1.0))[n]
        tab_m = jacobi_values(n, d / 2.0, d / 2.0 - 1.0, np.clip(dot - cc, -1.0, 1.0))[n]
        vals = pref * (tab_p + tab_m)
        return float(vals[0]) if single else vals
    npts = psi_order if psi_order is not None else n + 10
    u, w = gauss_gegenbauer(npts, mu)
    wsum = w.sum()
    pref = (
        2.0
        * gamma_fn(mu + (d + 2) / 2.0)
        * gamma_fn(n + 2.0 * mu + d)
        / (gamma_fn(2.0 * mu + d + 1.0) * gamma_fn(n + mu + d / 2.0))
    )
    args = dot[:, None] + cc[:, None] * u[None, :]
    tab = jacobi_values(n, mu + d / 2.0, mu + d / 2.0 - 1.0, np.clip(args.ravel(), -1.0, 1.0))[n]
    avg = (tab.reshape(args.shape) @ w) / wsum
    vals = pref * avg
    return float(vals[0]) if single else vals


# ---------------------------------------------------------------------------
# sum-form kernels


def _legendre_row(jmax: int, d: int, t: float) -> np.ndarray:
    lam = (d - 3) / 2.0
    vals = jacobi_values(jmax, lam, lam, np.array([t]))[:, 0]
    norms = np.array([binom_real(j + lam, j) for j in range(jmax + 1)])
    return vals / norms


def _radial_group_products(iset, ell, d, ra, rb):
    """Per-degree sums sum_i rho_{i,l_j}(ra) rho_{i,l_j}(rb), keyed by j."""
    groups: dict[int, list[int]] = {}
    for i, j in iset.pairs:
        groups.setdefault(j, []).append(i)
    out = {}
    for j, ilist in groups.items():
        lj = ell.ell(j)
        beta = lj + (d - 2) / 2.0
        imax = max(ilist)
        pts = np.array([2.0 * ra * ra - 1.0, 2.0 * rb * rb - 1.0])
        tab = jacobi_values(imax, 0.0, beta, pts)
        gam2 = np.array([4.0 * i + 2.0 * lj + d for i in ilist])
        pa = tab[ilist, 0]
        pb = tab[ilist, 1]
        radp = (ra * rb) ** lj if (ra > 0 and rb > 0) else (1.0 if lj == 0 else 0.0)
        out[j] = float(np.sum(gam2 * pa * pb)) * radp
    return out


def kernel_sum(spec: SumForm, x, y) -> float:
    """Kernel of the index-set span at a pair of points.

    Uses the radial/spherical factorization with the addition theorem, so the
    cost scales with (#degrees x #radial indices), not with the full set size.
    """
    iset, ell = spec.iset, spec.ell
    d = iset.d
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    ra, rb = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if ra > 0 and rb > 0:
        t = float(np.dot(x, y) / (ra * rb))
        t = min(1.0, max(-1.0, t))
    else:
        t = 1.0
    rad = _radial_group_products(iset, ell, d, ra, rb)
    jmax = iset.jmax
    leg = _legendre_row(jmax, d, t)
    vol = vol_sphere(d)
    return float(sum(rad[j] * _basis.dim_harm(j, d) / vol * leg[j] for j in rad))


def kernel_sum_diag(spec: SumForm, radii) -> np.ndarray:
    """Diagonal K(x, x) along radii (rotation invariant for complete sets)."""
    iset, ell = spec.iset, spec.ell
    d = iset.d
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    groups: dict[int, list[int]] = {}
    for i, j in iset.pairs:
        groups.setdefault(j, []).append(i)
    vol = vol_sphere(d)
    out = np.zeros_like(radii)
    z = 2.0 * radii * radii - 1.0
    for j, ilist in groups.items():
        lj = ell.ell(j)
        beta = lj + (d - 2) / 2.0
        tab = jacobi_values(max(ilist), 0.0, beta, z)
        gam2 = np.array([4.0 * i + 2.0 * lj + d for i in ilist])
        s = (gam2[:, None] * tab[ilist] ** 2).sum(axis=0)
        with np.errstate(divide="ignore"):
            radp = np.where(radii > 0, radii ** (2.0 * lj), 1.0 if lj == 0 else 0.0)
        out += s * radp * _basis.dim_harm(j, d) / vol
    return out


def kernel_sum_bruteforce(spec: SumForm, x, y) -> float:
    """Direct sum of products of basis evaluations (slow oracle)."""
    return float(
        sum(
            _basis.zernike_eval(b, spec.ell, x, spec.iset.d) * _basis.zernike_eval(b, spec.ell, y, spec.iset.d)
            for b in spec.iset.indices
        )
    )


# ---------------------------------------------------------------------------
# spherical-harmonic kernel


def harm_kernel(n: int, d: int, t) -> float | np.ndarray:
    """Degree-n spherical harmonic kernel at inner product t, closed form.

    Equals sum_{j<=n} (dim H_j / vol(S^{d-1})) P_j(t); the closed form is a
    single Jacobi polynomial with parameters (1+lambda, lambda),
    lambda = (d-3)/2.
    """
    if n < 0:
        raise ParameterError("degree must be nonnegative")
    lam = (d - 3) / 2.0
    cdn = binom_real(n + d - 2.0, n) / binom_real(n + lam, n)
    scalar = np.isscalar(t)
    vals = jacobi_values(n, 1.0 + lam, lam, np.atleast_1d(t))[n]
    vals = cdn / vol_sphere(d) * vals
    return float(vals[0]) if scalar else vals


def harm_kernel_sum(n: int, d: int, t) -> float:
    """Legendre-sum oracle for harm_kernel."""
    scalar = np.isscalar(t)
    tarr = np.atleast_1d(t)
    leg = np.stack([_legendre_row(n, d, float(tt)) for tt in tarr], axis=1)
    dims = np.array([_basis.dim_harm(j, d) for j in range(n + 1)])
    vals = (dims[:, None] * leg).sum(axis=0) / vol_sphere(d)
    return float(vals[0]) if scalar else vals


def cap_mass(n: int, d: int, eps: float, npts: int = 400) -> float:
    """Share of the harmonic kernel's squared mass inside a polar cap.

    Computes int over {eta : 1 - xi.eta < eps} of |K(xi.eta)|^2 vol/N d omega,
    which tends to 1 with growing n.
    """
    if not 0.0 < eps < 2.0:
        raise ParameterError("cap parameter must lie in (0, 2)")
    lam = (d - 3) / 2.0
    a = 1.0 - eps
    if d == 3:
        t, w = gauss_legendre(npts, a, 1.0)
        fac = np.ones_like(t)
    else:
        s, w = gauss_jacobi(npts, lam, 0.0)
        h = eps / 2.0
        t = 1.0 - h * (1.0 - s)
        w = w * h ** (lam + 1.0)
        fac = (1.0 + t) ** lam
    k = harm_kernel(n, d, t)
    integral = float(np.sum(w * fac * k * k))
    return vol_sphere(d - 1) * integral * vol_sphere(d) / _basis.dim_harm_sum(n, d)


# ---------------------------------------------------------------------------
# Christoffel ratios and universality references


def christoffel_ratio(spec, x) -> float:
    """Normalized diagonal kernel K(x, x) / dim at an interior point."""
    x = np.asarray(x, dtype=np.float64)
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise DomainError("the Christoffel limit fails on the boundary |x| = 1")
    if isinstance(spec, PolyClosedForm):
        return kernel_poly_closed(spec.mu, spec.n, spec.d, x, x) / spec.dim
    if isinstance(spec, SumForm):
        return kernel_sum(spec, x, x) / spec.dim
    raise ParameterError(f"unsupported kernel spec {spec!r}")


def christoffel_target(spec, x) -> float:
    """Analytic limit of the Christoffel ratio for the given family."""
    x = np.asarray(x, dtype=np.float64)
    r = float(np.linalg.norm(x))
    if isinstance(spec, PolyClosedForm):
        return float(w0(r, spec.d) / w_mu(r, spec.mu, spec.d))
    if isinstance(spec, SumForm):
        if r == 0.0:
            raise DomainError("the radial-spherical limit weight diverges at the origin")
        return float(w0_tilde(r, spec.iset.d))
    raise ParameterError(f"unsupported kernel spec {spec!r}")


def universality_g(x, wvec, v) -> float:
    """Quadratic form |w-v|^2 + |x.(w-v)|^2 / (1-|x|^2) of the scaling limit."""
    x = np.asarray(x, dtype=np.float64)
    diff = np.asarray(wvec, dtype=np.float64) - np.asarray(v, dtype=np.float64)
    r2 = float(np.dot(x, x))
    if r2 >= 1.0:
        raise DomainError("scaling limit requires an interior point")
    return float(np.dot(diff, diff) + np.dot(x, diff) ** 2 / (1.0 - r2))


def universality_scan(spec, x, offsets, ell: _basis.EllSequence | None = None) -> list[dict]:
    """Near-diagonal kernel ratios next to their scaling-limit references.

    For a polynomial family the offsets are displacement vectors v and the
    reference is the normalized Bessel factor at sqrt(G(x, 0, v)).  For a
    radial/spherical family the offsets are (t, xi) pairs describing the
    radially shifted point (|x| + t/(m+1)) xi, with the sinc x harmonic-kernel
    reference.  Offsets whose shifted point leaves the ball are flagged and
    skipped.
    """
    x = np.asarray(x, dtype=np.float64)
    out = []
    if isinstance(spec, PolyClosedForm):
        kxx = kernel_poly_closed(spec.mu, spec.n, spec.d, x, x)
        j0 = bessel_jstar(spec.d / 2.0, 0.0)
        for v in offsets:
            v = np.asarray(v, dtype=np.float64)
            y = x + v / spec.n
            if float(np.linalg.norm(y)) > 1.0:
                out.append({"offset": v, "ratio": math.nan, "reference": math.nan, "skipped": True})
                continue
            ratio = kernel_poly_closed(spec.mu, spec.n, spec.d, x, y) / kxx
            ref = bessel_jstar(spec.d / 2.0, math.sqrt(universality_g(x, np.zeros_like(v), v))) / j0
            out.append({"offset": v, "ratio": ratio, "reference": ref, "skipped": False})
        return out
    if isinstance(spec, SumForm):
        if not isinstance(spec.iset.spec, _basis.FourierJacobi):
            raise ParameterError("radial/spherical scan requires a FourierJacobi index set")
        m = spec.iset.spec.m
        n = spec.iset.spec.n
        d = spec.iset.d
        r = float(np.linalg.norm(x))
        if r == 0.0:
            raise DomainError("scan point must be away from the origin")
        xi_x = x / r
        kxx = kernel_sum(spec, x, x)
        nsd = _basis.dim_harm_sum(n, d)
        for t, xi in offsets:
            xi = np.asarray(xi, dtype=np.float64)
            xi = xi / float(np.linalg.norm(xi))
            y = (r + t / (m + 1.0)) * xi
            if float(np.linalg.norm(y)) > 1.0 or float(np.linalg.norm(y)) < 0.0:
                out.append({"offset": (t, xi), "ratio": math.nan, "reference": math.nan, "skipped": True})
                continue
            ratio = kernel_sum(spec, x, y) / kxx
            ref = (
                sinc(2.0 * t / math.sqrt(1.0 - r * r))
                * vol_sphere(d)
                / nsd
                * float(harm_kernel(n, d, float(np.dot(xi_x, xi))))
            )
            out.append({"offset": (t, xi), "ratio": ratio, "reference": ref, "skipped": False})
        return out
    raise ParameterError(f"unsupported kernel spec {spec!r}")


# ---------------------------------------------------------------------------
# Bessel normalization constants


def e_d_constant(d: int) -> float:
    """Closed-form squared-mass constant vol(S^{d-1}) 2^{d-1} Gamma(d/2) Gamma(d/2+1)."""
    if d < 2:
        raise ParameterError("dimension must be at least 2")
    return vol_sphere(d) * 2.0 ** (d - 1) * gamma_fn(d / 2.0) * gamma_fn(d / 2.0 + 1.0)


def e_d_truncated(d: int, L: float, panels: int = 600, order: int = 8) -> float:
    """Numeric integral of |J*(|t|)/J*(0)|^2 over the radius-L ball (oracle)."""
    j0 = bessel_jstar(d / 2.0, 0.0)
    edges = np.linspace(0.0, L, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        t, w = gauss_legendre(order, a, b)
        vals = np.array([(bessel_jstar(d / 2.0, tt) / j0) ** 2 * tt ** (d - 1) for tt in t])
        total += float(w @ vals)
    return vol_sphere(d) * total

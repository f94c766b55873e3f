"""Domains in the unit ball and tensor-product quadrature over them.

Every supported region factorizes into a radial interval, a polar interval
(d = 3 only) and an azimuthal interval; rules are Gauss rules per factor with
the surface-measure weights folded into the factor weights.  Summation order
inside :func:`integrate` is fixed (azimuthal, then polar, then radial, each by
numpy's pairwise reduction) so results do not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .specfun import ParameterError, gamma_fn


def vol_sphere(d: int) -> float:
    """Surface volume of the unit (d-1)-sphere, 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2.0) / gamma_fn(d / 2.0)


def omega_mu(mu: float, d: int) -> float:
    """Normalization constant of the Jacobi weight (1-|x|^2)^{mu-1/2} on the ball."""
    return gamma_fn(mu + (d + 1) / 2.0) / (math.pi ** (d / 2.0) * gamma_fn(mu + 0.5))


@dataclass(frozen=True)
class WeightSpec:
    """Jacobi weight W_mu = omega_mu (1-|x|^2)^{mu-1/2}, unit mass on the ball."""

    mu: float

    def __post_init__(self):
        if self.mu < 0.0:
            raise ParameterError("weight index mu must be nonnegative")

    def normalization(self, d: int) -> float:
        return omega_mu(self.mu, d)


@dataclass(frozen=True)
class Domain:
    """Region of the unit ball: full ball, shell or axis-aligned tesseroid.

    Angles are absolute radians; the azimuthal interval may wrap past pi as
    long as its total span does not exceed 2 pi.  For d = 2 the tesseroid is
    the annular sector (r1, r2, phi1, phi2); theta bounds are ignored.
    """

    kind: str  # "ball" | "shell" | "tesseroid"
    dim: int = 3
    r1: float = 0.0
    r2: float = 1.0
    theta1: float = 0.0
    theta2: float = math.pi
    phi1: float = -math.pi
    phi2: float = math.pi

    def __post_init__(self):
        if self.kind not in ("ball", "shell", "tesseroid"):
            raise ParameterError(f"unknown domain kind {self.kind!r}")
        if self.dim not in (2, 3):
            raise ParameterError("domain dimension must be 2 or 3")
        if self.kind == "ball":
            object.__setattr__(self, "r1", 0.0)
            object.__setattr__(self, "r2", 1.0)
        if self.kind in ("ball", "shell"):
            object.__setattr__(self, "theta1", 0.0)
            object.__setattr__(self, "theta2", math.pi)
            object.__setattr__(self, "phi1", -math.pi)
            object.__setattr__(self, "phi2", math.pi)
        if not (0.0 <= self.r1 < self.r2 <= 1.0):
            raise ParameterError("radial bounds must satisfy 0 <= r1 < r2 <= 1")
        if self.dim == 3 and not (0.0 <= self.theta1 < self.theta2 <= math.pi):
            raise ParameterError("polar bounds must satisfy 0 <= theta1 < theta2 <= pi")
        if not (-math.pi <= self.phi1 < self.phi2 <= 3.0 * math.pi):
            raise ParameterError("azimuthal bounds must satisfy -pi <= phi1 < phi2 <= 3*pi")
        if self.phi2 - self.phi1 > 2.0 * math.pi + 1e-12:
            raise ParameterError("azimuthal span must not exceed 2*pi")

    @property
    def full_sphere(self) -> bool:
        full_phi = abs((self.phi2 - self.phi1) - 2.0 * math.pi) < 1e-14
        if self.dim == 2:
            return full_phi
        return full_phi and self.theta1 == 0.0 and abs(self.theta2 - math.pi) < 1e-14

    def contains(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized membership test for points of shape (n, dim)."""
        pts = np.atleast_2d(pts)
        r = np.sqrt(np.sum(pts * pts, axis=1))
        ok = (r >= self.r1) & (r <= self.r2)
        if self.full_sphere:
            return ok
        with np.errstate(invalid="ignore", divide="ignore"):
            if self.dim == 3:
                u = np.where(r > 0, pts[:, 2] / np.where(r > 0, r, 1.0), 1.0)
                theta = np.arccos(np.clip(u, -1.0, 1.0))
                ok &= (theta >= self.theta1) & (theta <= self.theta2)
            phi = np.arctan2(pts[:, 1], pts[:, 0])
        # account for wrap-around intervals reaching past pi
        in_phi = (phi >= self.phi1) & (phi <= self.phi2)
        in_phi |= (phi + 2.0 * math.pi >= self.phi1) & (phi + 2.0 * math.pi <= self.phi2)
        return ok & in_phi


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor-product rule over a domain; weights carry all measure factors.

    ``radial`` integrates against r^{d-1} (and the (1-r^2)^{mu-1/2} factor for
    weighted rules), ``polar`` lives in u = cos(theta) on [cos(theta2),
    cos(theta1)], ``azimuthal`` on [phi1, phi2].
    """

    domain: Domain
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    polar_nodes: np.ndarray | None
    polar_weights: np.ndarray | None
    azimuthal_nodes: np.ndarray
    azimuthal_weights: np.ndarray
    orders: dict = field(default_factory=dict)
    weight_mu: float | None = None


def gauss_legendre(npts: int, a: float, b: float):
    """Gauss-Legendre nodes/weights on [a, b]; exact through degree 2*npts - 1."""
    if npts < 1:
        raise ParameterError("node count must be positive")
    if not a < b:
        raise ParameterError("interval must satisfy a < b")
    x, w = roots_legendre(npts)
    half = 0.5 * (b - a)
    return half * (x + 1.0) + a, half * w


def gauss_jacobi(npts: int, alpha: float, beta: float):
    """Gauss-Jacobi nodes/weights on [-1, 1] for weight (1-z)^alpha (1+z)^beta."""
    if npts < 1:
        raise ParameterError("node count must be positive")
    if alpha <= -1.0 or beta <= -1.0:
        raise ParameterError("Jacobi weight exponents must exceed -1")
    return roots_jacobi(npts, alpha, beta)


def gauss_gegenbauer(npts: int, mu: float):
    """Substituted rule for int_0^pi f(cos psi) (sin psi)^{2 mu - 1} d psi.

    Returns u-nodes and weights with u = cos psi; the weights absorb the
    (1-u^2)^{mu-1} Jacobi factor, so only f(u) is evaluated.  Requires mu > 0
    (the mu = 0 kernel has a two-point closed form instead).
    """
    if mu <= 0.0:
        raise ParameterError("gauss_gegenbauer requires mu > 0")
    return gauss_jacobi(npts, mu - 1.0, mu - 1.0)


def radial_rule(npts: int, r1: float, r2: float, d: int, mu: float | None = None):
    """Nodes/weights for int_{r1}^{r2} f(r) r^{d-1} [(1-r^2)^{mu-1/2}] dr.

    Unweighted (mu None) and mu = 1/2 cases use Gauss-Legendre with the
    monomial factor folded in.  For other mu the rule works in z = 2 r^2 - 1
    so the (1-r^2)^{mu-1/2} endpoint factor is handled as a Jacobi weight
    (exactly when r2 = 1, smoothly otherwise).
    """
    if mu is None or mu == 0.5:
        r, w = gauss_legendre(npts, r1, r2)
        return r, w * r ** (d - 1)
    z1, z2 = 2.0 * r1 * r1 - 1.0, 2.0 * r2 * r2 - 1.0
    if abs(r2 - 1.0) < 1e-15:
        if r1 == 0.0:
            z, wz = gauss_jacobi(npts, mu - 0.5, (d - 2) / 2.0)
            w = wz * 0.25 * 2.0 ** (-(mu - 0.5) - (d - 2) / 2.0)
        else:
            # map [z1, 1] onto [-1, 1]; the (1-z)^{mu-1/2} factor stays a Jacobi weight
            t, wt = gauss_jacobi(npts, mu - 0.5, 0.0)
            h = 0.5 * (1.0 - z1)
            z = z1 + h * (t + 1.0)
            w = wt * (h / 4.0) * (h / 2.0) ** (mu - 0.5) * ((1.0 + z) / 2.0) ** ((d - 2) / 2.0)
        return np.sqrt((1.0 + z) / 2.0), w
    z, wz = gauss_legendre(npts, z1, z2)
    r = np.sqrt((1.0 + z) / 2.0)
    w = wz * 0.25 * ((1.0 - z) / 2.0) ** (mu - 0.5) * ((1.0 + z) / 2.0) ** ((d - 2) / 2.0)
    return r, w


def default_orders(domain: Domain, max_radial_degree: int, max_harmonic_degree: int) -> dict:
    """Factor orders making Gram entries exact (radial/polar) with margin.

    The azimuthal factor integrates trigonometric (not algebraic) polynomials,
    for which Gauss-Legendre needs roughly 0.7 * span * frequency nodes before
    its superexponential regime kicks in; the default triples the product
    frequency to sit deep inside that regime.
    """
    mmax = max_harmonic_degree
    nrad = max_radial_degree + domain.dim // 2 + 6
    npol = max(2 * max_harmonic_degree + 16, 48)
    naz = 3 * (2 * mmax + 2) + 12
    return {"radial": nrad, "polar": npol, "azimuthal": naz}


def build_rule(
    domain: Domain,
    weight: WeightSpec | None = None,
    radial_order: int = 48,
    polar_order: int = 48,
    azimuthal_order: int = 64,
) -> QuadratureRule:
    """Assemble the tensor-product rule for a domain and optional Jacobi weight."""
    d = domain.dim
    mu = weight.mu if weight is not None else None
    rn, rw = radial_rule(radial_order, domain.r1, domain.r2, d, mu)
    if weight is not None:
        rw = rw * weight.normalization(d)
    if d == 3:
        u2, u1 = math.cos(domain.theta2), math.cos(domain.theta1)
        pn, pw = gauss_legendre(polar_order, u2, u1)
    else:
        pn, pw = None, None
    an, aw = gauss_legendre(azimuthal_order, domain.phi1, domain.phi2)
    return QuadratureRule(
        domain=domain,
        radial_nodes=rn,
        radial_weights=rw,
        polar_nodes=pn,
        polar_weights=pw,
        azimuthal_nodes=an,
        azimuthal_weights=aw,
        orders={"radial": radial_order, "polar": polar_order if d == 3 else 0, "azimuthal": azimuthal_order},
        weight_mu=mu,
    )


def rule_points(rule: QuadratureRule):
    """Cartesian evaluation points (n, d) and combined weights of a rule."""
    d = rule.domain.dim
    r = rule.radial_nodes
    phi = rule.azimuthal_nodes
    if d == 2:
        rr, pp = np.meshgrid(r, phi, indexing="ij")
        pts = np.stack([(rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel()], axis=1)
        w = np.multiply.outer(rule.radial_weights, rule.azimuthal_weights)
        return pts, w
    u = rule.polar_nodes
    rr, uu, pp = np.meshgrid(r, u, phi, indexing="ij")
    s = np.sqrt(np.maximum(1.0 - uu * uu, 0.0))
    pts = np.stack(
        [(rr * s * np.cos(pp)).ravel(), (rr * s * np.sin(pp)).ravel(), (rr * uu).ravel()],
        axis=1,
    )
    w = np.multiply.outer(np.multiply.outer(rule.radial_weights, rule.polar_weights), rule.azimuthal_weights)
    return pts, w


def integrate(domain: Domain, weight: WeightSpec | None, f, rule: QuadratureRule) -> float:
    """Tensor-product integral of f over the domain.

    ``f`` maps an (n, d) array of points to an (n,) array of values.  The
    nested reduction runs azimuthal -> polar -> radial with numpy's pairwise
    summation per axis, so the value is independent of evaluation concurrency.
    """
    if rule.domain.dim != domain.dim:
        raise ParameterError("rule dimension does not match domain")
    mu = weight.mu if weight is not None else None
    if mu != rule.weight_mu:
        raise ParameterError("rule was built for a different weight")
    pts, w = rule_points(rule)
    vals = np.asarray(f(pts), dtype=np.float64).reshape(w.shape)
    partial = np.sum(vals * w, axis=-1)
    while partial.ndim > 0:
        partial = np.sum(partial, axis=-1)
    return float(partial)

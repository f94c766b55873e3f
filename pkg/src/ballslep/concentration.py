"""Gram-matrix assembly of the space-limited operator and its spectrum.

Entries <Z_a, Z_b> over a domain factorize into radial x polar x azimuthal
one-dimensional integrals; the assembly precomputes the three pair tables and
combines them per entry, so cost is dominated by three small matrix products
plus an O(dim^2) gather.  Polar products of associated Legendre functions with
odd combined azimuthal frequency carry a sqrt(1-u^2) factor, which a plain
Gauss-Legendre rule in u = cos(theta) cannot integrate exactly; those pairs
use a companion rule with the square-root factor treated as a Jacobi weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._accel import assoc_legendre_table, gram_combine, jacobi_table
from .basis import EllSequence, IndexSet, k_to_azimuth
from .geometry import Domain, QuadratureRule, build_rule, default_orders, gauss_jacobi, gauss_legendre, integrate
from .kernels import SumForm, kernel_sum_diag
from .specfun import ParameterError


class NumericalQualityError(RuntimeError):
    """Raised when Gram eigenvalues leave [0, 1] beyond tolerance (under-resolved quadrature)."""


EIG_TOL = 1e-8  # allowed excursion of operator eigenvalues outside [0, 1]


@dataclass(frozen=True)
class GramMatrix:
    """Dense symmetric matrix of pairwise domain inner products of basis functions."""

    iset: IndexSet
    ell: EllSequence
    domain: Domain
    matrix: np.ndarray
    orders: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted eigenvalues with the derived operator statistics.

    ``eigenvalues`` are descending and clamped into [0, 1] for operator input;
    ``raw`` keeps the unclamped solver output in the same order.
    """

    eigenvalues: np.ndarray
    raw: np.ndarray
    dim: int
    trace: float
    hs_sq: float

    @property
    def shannon_empirical(self) -> float:
        return self.trace / self.dim

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    def count(self, a: float, b: float) -> int:
        """N(a, b) = #{i : a < lambda_i <= b}."""
        lam = self.eigenvalues
        return int(np.sum((lam > a) & (lam <= b)))


# ---------------------------------------------------------------------------
# assembly


def _odd_polar_rule(npts: int, a: float, b: float):
    """Rule + weight values for integrands carrying a sqrt(1-u^2) factor on [a, b]."""
    alpha = 0.5 if b >= 1.0 - 1e-14 else 0.0
    beta = 0.5 if a <= -1.0 + 1e-14 else 0.0
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    if alpha == 0.0 and beta == 0.0:
        u, w = gauss_legendre(npts, a, b)
        return u, w, np.ones_like(u)
    s, w = gauss_jacobi(npts, alpha, beta)
    u = c + h * s
    w = w * h ** (1.0 + alpha + beta)
    wfun = (1.0 - u) ** alpha * (1.0 + u) ** beta
    return u, w, wfun


def _index_maps(iset: IndexSet, ell: EllSequence):
    """Factor ids per basis index: radial (i, ell_j), polar (j, m), azimuthal (m, variant)."""
    d = iset.d
    rad_ids, pol_ids, az_ids = {}, {}, {}
    ridx, pidx, aidx = [], [], []
    for b in iset.indices:
        lj = ell.ell(b.j)
        m, variant = k_to_azimuth(b.j, b.k, d)
        rk = (b.i, lj)
        pk = (b.j, m)
        ak = (m, variant)
        ridx.append(rad_ids.setdefault(rk, len(rad_ids)))
        pidx.append(pol_ids.setdefault(pk, len(pol_ids)))
        aidx.append(az_ids.setdefault(ak, len(az_ids)))
    return rad_ids, pol_ids, az_ids, np.array(ridx), np.array(pidx), np.array(aidx)


def _radial_values(rad_ids: dict, d: int, r: np.ndarray) -> np.ndarray:
    out = np.empty((len(rad_ids), r.size))
    z = 2.0 * r * r - 1.0
    by_ell: dict[float, list] = {}
    for (i, lj), rid in rad_ids.items():
        by_ell.setdefault(lj, []).append((i, rid))
    for lj, items in by_ell.items():
        imax = max(i for i, _ in items)
        tab = jacobi_table(imax, 0.0, lj + (d - 2) / 2.0, z)
        rp = r**lj
        for i, rid in items:
            gamma = math.sqrt(4.0 * i + 2.0 * lj + d)
            out[rid] = gamma * tab[i] * rp
    return out


def _azimuthal_values(az_ids: dict, phi: np.ndarray) -> np.ndarray:
    out = np.empty((len(az_ids), phi.size))
    for (m, variant), aid in az_ids.items():
        if m == 0:
            out[aid] = 1.0 / math.sqrt(2.0 * math.pi)
        elif variant == "cos":
            out[aid] = np.cos(m * phi) / math.sqrt(math.pi)
        else:
            out[aid] = np.sin(m * phi) / math.sqrt(math.pi)
    return out


def _pair(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    g = (values * weights[None, :]) @ values.T
    return 0.5 * (g + g.T)


def assemble_gram(
    domain: Domain,
    iset: IndexSet,
    ell: EllSequence,
    rule: QuadratureRule | None = None,
    orders: dict | None = None,
) -> GramMatrix:
    """Matrix of <Z_a, Z_b> over the domain in the index set's fixed order.

    ``rule`` supplies the factor orders (built from defaults when omitted);
    entries are exact up to rounding for integer radial exponent sequences.
    """
    d = iset.d
    if domain.dim != d:
        raise ParameterError("domain dimension does not match index set")
    ell.validate(iset.jmax, d)
    if orders is None:
        if rule is not None:
            orders = dict(rule.orders)
        else:
            max_rdeg = int(math.ceil(max(2 * b.i + max(ell.ell(b.j), 0.0) for b in iset.indices)))
            orders = default_orders(domain, max_rdeg, iset.jmax)
    rn, rw = (
        (rule.radial_nodes, rule.radial_weights)
        if rule is not None and rule.weight_mu is None
        else gauss_legendre(orders["radial"], domain.r1, domain.r2)
    )
    if rule is None or rule.weight_mu is not None:
        rw = rw * rn ** (d - 1)
    rad_ids, pol_ids, az_ids, ridx, pidx, aidx = _index_maps(iset, ell)
    rad_pair = _pair(_radial_values(rad_ids, d, rn), rw)

    if d == 3:
        u2, u1 = math.cos(domain.theta2), math.cos(domain.theta1)
        ue, we = gauss_legendre(orders["polar"], u2, u1)
        uo, wo, wfun = _odd_polar_rule(orders["polar"], u2, u1)
        jmax = iset.jmax
        tab_e = assoc_legendre_table(jmax, ue)
        tab_o = assoc_legendre_table(jmax, uo)
        rows = np.array([j * (j + 1) // 2 + m for (j, m) in pol_ids.keys()])
        theta_e = tab_e[rows]
        theta_o = tab_o[rows] / np.sqrt(wfun)[None, :]
        pair_e = _pair(theta_e, we)
        pair_o = _pair(theta_o, wo)
        ms = np.array([m for (_, m) in pol_ids.keys()])
        odd = (ms[:, None] + ms[None, :]) % 2 == 1
        pol_pair = np.where(odd, pair_o, pair_e)
    else:
        pol_pair = None

    an, aw = gauss_legendre(orders["azimuthal"], domain.phi1, domain.phi2)
    az_pair = _pair(_azimuthal_values(az_ids, an), aw)

    g = gram_combine(rad_pair, pol_pair, az_pair, ridx, pidx, aidx)
    g = 0.5 * (g + g.T)
    diag = np.diagonal(g)
    if diag.min() < -1e-10 or diag.max() > 1.0 + 1e-10:
        raise NumericalQualityError(
            f"Gram diagonal outside [0, 1] (min {diag.min():.3e}, max {diag.max():.3e}); "
            "refine the quadrature orders"
        )
    return GramMatrix(iset=iset, ell=ell, domain=domain, matrix=g, orders=dict(orders))


# ---------------------------------------------------------------------------
# eigensolve


def eigensolve_sym(g, want_vectors: bool = False):
    """Descending eigendecomposition of a symmetric matrix.

    Operator input (a GramMatrix) additionally enforces that eigenvalues stay
    inside [-1e-8, 1+1e-8]; violations abort rather than being clamped away,
    since they indicate an under-resolved quadrature.
    """
    operator = isinstance(g, GramMatrix)
    mat = g.matrix if operator else np.asarray(g, dtype=np.float64)
    if not np.all(np.isfinite(mat)):
        raise ParameterError("matrix contains non-finite entries")
    if mat.shape[0] != mat.shape[1] or not np.allclose(mat, mat.T, atol=1e-12):
        raise ParameterError("matrix must be symmetric")
    if want_vectors:
        lam, vec = np.linalg.eigh(mat)
        lam, vec = lam[::-1].copy(), vec[:, ::-1].copy()
    else:
        lam = np.linalg.eigvalsh(mat)[::-1].copy()
        vec = None
    if operator:
        if lam.min() < -EIG_TOL or lam.max() > 1.0 + EIG_TOL:
            raise NumericalQualityError(
                f"operator eigenvalues outside [0, 1] by more than {EIG_TOL:g} "
                f"(min {lam.min():.3e}, max {lam.max():.3e}); refine the quadrature orders"
            )
        eig = np.clip(lam, 0.0, 1.0)
    else:
        eig = lam.copy()
    report = SpectrumReport(
        eigenvalues=eig,
        raw=lam,
        dim=lam.size,
        trace=float(lam.sum()),
        hs_sq=float((lam * lam).sum()),
    )
    return (report, vec) if want_vectors else report


def jacobi_cyclic_eigenvalues(mat: np.ndarray, sweeps: int = 30, tol: float = 1e-12) -> np.ndarray:
    """Cyclic Jacobi rotation eigensolver; slow cross-check for dim <= 300."""
    a = np.array(mat, dtype=np.float64)
    n = a.shape[0]
    if n > 300:
        raise ParameterError("cyclic Jacobi oracle is restricted to dim <= 300")
    for _ in range(sweeps):
        off = math.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / a[p, q]
                t = np.sign(theta) / (abs(theta) + math.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))[::-1]


# ---------------------------------------------------------------------------
# statistics and identities


def spectrum_stats(report: SpectrumReport, eps: float = 0.05, tau: float = 0.5) -> dict:
    """Counts of mid-range and significant eigenvalues plus Shannon estimates."""
    if not 0.0 < eps < 0.5:
        raise ParameterError("eps must lie in (0, 1/2)")
    if not 0.0 < tau < 1.0:
        raise ParameterError("tau must lie in (0, 1)")
    n_mid = report.count(eps, 1.0 - eps)
    n_tau = report.count(tau, 1.0)
    return {
        "dim": report.dim,
        "trace": report.trace,
        "hs_sq": report.hs_sq,
        "eps": eps,
        "tau": tau,
        "count_mid": n_mid,
        "count_tau": n_tau,
        "rel_mid": n_mid / report.dim,
        "rel_tau": n_tau / report.dim,
        "shannon_empirical": report.shannon_empirical,
        "lambda1": report.lambda1,
    }


def verify_operator_identities(
    domain: Domain,
    iset: IndexSet,
    ell: EllSequence,
    rule: QuadratureRule | None = None,
) -> dict:
    """Residuals of the trace and Hilbert-Schmidt identities of the operator.

    The trace side compares the eigenvalue sum against the independently
    quadratured diagonal-kernel integral; the Hilbert-Schmidt side compares
    the eigenvalue square sum against the squared Frobenius norm of the Gram
    matrix (an exact algebraic identity for the double integral of |K|^2).
    """
    gram = assemble_gram(domain, iset, ell, rule=rule)
    report = eigensolve_sym(gram)
    spec = SumForm(iset, ell)
    q = build_rule(
        domain,
        None,
        radial_order=gram.orders["radial"],
        polar_order=max(gram.orders.get("polar", 0), 4),
        azimuthal_order=gram.orders["azimuthal"],
    )
    kernel_trace = integrate(domain, None, lambda pts: kernel_sum_diag(spec, np.linalg.norm(pts, axis=1)), q)
    frob_sq = float(np.sum(gram.matrix * gram.matrix))
    dim = gram.dim
    return {
        "dim": dim,
        "trace_eigen": report.trace,
        "trace_kernel": kernel_trace,
        "trace_residual": abs(report.trace - kernel_trace) / max(abs(kernel_trace), 1e-300),
        "hs_eigen": report.hs_sq,
        "hs_frobenius": frob_sq,
        "hs_residual": abs(report.hs_sq - frob_sq) / max(abs(frob_sq), 1e-300),
    }

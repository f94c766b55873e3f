"""Real spherical harmonics, ball basis functions and bandlimit index sets.

Basis functions are products of a Jacobi-polynomial radial factor and a real
spherical harmonic, normalized to unit Lebesgue norm on the unit ball.  Index
sets are materialized in a fixed (j, i, k) lexicographic order so downstream
matrices are reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._accel import assoc_legendre_table, jacobi_table
from .geometry import vol_sphere
from .specfun import ParameterError, jacobi_values


class ValidationError(ValueError):
    """Raised when an index-set specification fails validation."""


# ---------------------------------------------------------------------------
# dimensions and counting


def dim_harm(j: int, d: int) -> int:
    """Dimension of the degree-j spherical harmonic space on the (d-1)-sphere."""
    if d < 2:
        raise ParameterError("dimension must be at least 2")
    if j < 0:
        raise ParameterError("degree must be nonnegative")
    if j == 0:
        return 1
    if j == 1:
        return math.comb(d, 1)
    return math.comb(j + d - 1, j) - math.comb(j + d - 3, j - 2)


def dim_harm_sum(n: int, d: int) -> int:
    """Total harmonic dimension through degree n: binom(n+d-1,n) + binom(n+d-2,n-1)."""
    if n == 0:
        return 1
    return math.comb(n + d - 1, n) + math.comb(n + d - 2, n - 1)


def dim_poly(n: int, d: int) -> int:
    """Dimension of polynomials of total degree <= n in d variables."""
    return math.comb(n + d, d)


# ---------------------------------------------------------------------------
# radial exponent sequences


@dataclass(frozen=True)
class EllSequence:
    """Radial exponent sequence: constant c, linear j + c, or an explicit table."""

    kind: str  # "constant" | "linear" | "table"
    c: float = 0.0
    table: tuple = ()

    def ell(self, j: int) -> float:
        if self.kind == "constant":
            return self.c
        if self.kind == "linear":
            return j + self.c
        if j >= len(self.table):
            raise ParameterError(f"ell table has no entry for degree {j}")
        return float(self.table[j])

    def validate(self, jmax: int, d: int) -> None:
        """Check inf_j ell_j + (d-2)/2 > -1 over the degrees in use."""
        worst = min(self.ell(j) for j in range(jmax + 1))
        if worst + (d - 2) / 2.0 <= -1.0:
            raise ValidationError(f"ell sequence violates ell_j + (d-2)/2 > -1 (min ell = {worst}, d = {d})")


def zernike_ell() -> EllSequence:
    """The ell_j = j sequence (classical Zernike-type polynomials)."""
    return EllSequence("linear", 0.0)


# ---------------------------------------------------------------------------
# real spherical harmonics

# order-k layout: d=3: k=1 -> (m=0); k=2m -> (m, cos); k=2m+1 -> (m, sin).
#                 d=2: k=1 -> cos(j phi) (constant for j=0); k=2 -> sin(j phi).


def k_to_azimuth(j: int, k: int, d: int) -> tuple[int, str]:
    """Map the order index k to (azimuthal frequency, variant)."""
    nk = dim_harm(j, d)
    if not 1 <= k <= nk:
        raise ParameterError(f"order k={k} out of range 1..{nk} for degree {j}, d={d}")
    if d == 2:
        m = j
        return m, ("cos" if k == 1 else "sin")
    if k == 1:
        return 0, "cos"
    m = k // 2
    return m, ("cos" if k % 2 == 0 else "sin")


def _azimuth_value(m: int, variant: str, phi):
    if m == 0:
        return np.full_like(np.asarray(phi, dtype=np.float64), 1.0 / math.sqrt(2.0 * math.pi))
    f = np.cos(m * np.asarray(phi)) if variant == "cos" else np.sin(m * np.asarray(phi))
    return f / math.sqrt(math.pi)


def sph_harm_real(j: int, k: int, d: int, xi) -> float:
    """Real orthonormal spherical harmonic Y_{j,k} at a unit vector xi.

    d = 2 uses the cosine/sine circle basis; d = 3 uses orthonormal associated
    Legendre functions without the Condon-Shortley phase.
    """
    if d not in (2, 3):
        raise ParameterError("spherical harmonics implemented for d in {2, 3}")
    xi = np.asarray(xi, dtype=np.float64)
    if abs(np.dot(xi, xi) - 1.0) > 1e-10:
        raise ParameterError("xi must be a unit vector")
    m, variant = k_to_azimuth(j, k, d)
    phi = math.atan2(xi[1], xi[0])
    if d == 2:
        return float(_azimuth_value(m, variant, phi))
    u = xi[2]
    tab = assoc_legendre_table(j, np.array([u]))
    pbar = tab[j * (j + 1) // 2 + m, 0]
    return float(pbar * _azimuth_value(m, variant, phi))


# ---------------------------------------------------------------------------
# index sets


@dataclass(frozen=True)
class BasisIndex:
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class SpectralShape:
    """Simple low-pass region of the (radial, spherical) degree plane.

    Membership is closed (boundary points belong to the shape).  Built-in
    names: triangle, rectangle (with aspect kappa), quarterdisc,
    invertedquarterdisc; piecewise-linear shapes take explicit (x, y) vertices
    of a decreasing boundary polyline.
    """

    name: str
    kappa: float = 1.0
    points: tuple = ()

    def contains(self, x: float, y: float) -> bool:
        if x < 0 or y < 0:
            return False
        if self.name == "triangle":
            return x <= 0.5 and y <= 1.0 - 2.0 * x
        if self.name == "rectangle":
            return x <= 1.0 and y <= self.kappa
        if self.name == "quarterdisc":
            return x <= 1.0 and y <= 1.0 and x * x + y * y <= 1.0
        if self.name == "invertedquarterdisc":
            return x <= 1.0 and y <= 1.0 and (1.0 - x) ** 2 + (1.0 - y) ** 2 >= 1.0
        if self.name == "piecewiselinear":
            xs = [p[0] for p in self.points]
            ys = [p[1] for p in self.points]
            if x > xs[-1]:
                return False
            return y <= np.interp(x, xs, ys) + 1e-15
        raise ValidationError(f"unknown spectral shape {self.name!r}")

    def validate(self) -> None:
        """Probe the down-closure property on a 64 x 64 grid."""
        grid = np.linspace(0.0, 1.0, 64)
        for x0 in grid:
            for y0 in grid:
                if self.contains(x0, y0) and not (self.contains(x0, 0.0) and self.contains(0.0, y0)):
                    raise ValidationError(f"shape {self.name!r} is not simple low-pass at ({x0:.3f}, {y0:.3f})")
        if not self.contains(0.0, 0.0):
            raise ValidationError(f"shape {self.name!r} does not contain the origin")


@dataclass(frozen=True)
class PolyDegree:
    """Total polynomial degree bandlimit: indices with 2i + j <= n."""

    n: int


@dataclass(frozen=True)
class FourierJacobi:
    """Separate radial/spherical caps: i <= m and j <= n."""

    m: int
    n: int


@dataclass(frozen=True)
class ShapeBand:
    """Generalized bandlimit: (i/N, j/N) inside a simple low-pass shape."""

    shape: SpectralShape
    N: float


@dataclass(frozen=True)
class SumDegree:
    """Optics-style bandlimit: indices with i + j <= n."""

    n: int


@dataclass(frozen=True)
class IndexSet:
    """Materialized, deterministically ordered list of basis indices."""

    spec: object
    d: int
    indices: tuple[BasisIndex, ...]

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Distinct (i, j) pairs in order of first appearance."""
        seen, out = set(), []
        for b in self.indices:
            if (b.i, b.j) not in seen:
                seen.add((b.i, b.j))
                out.append((b.i, b.j))
        return out

    @property
    def jmax(self) -> int:
        return max(b.j for b in self.indices)

    @property
    def imax(self) -> int:
        return max(b.i for b in self.indices)


def _ij_pairs(spec, d) -> list[tuple[int, int]]:
    if isinstance(spec, PolyDegree):
        if spec.n < 0:
            raise ValidationError("degree must be nonnegative")
        return [(i, j) for j in range(spec.n + 1) for i in range((spec.n - j) // 2 + 1)]
    if isinstance(spec, FourierJacobi):
        if spec.m < 0 or spec.n < 0:
            raise ValidationError("bandlimits must be nonnegative")
        return [(i, j) for j in range(spec.n + 1) for i in range(spec.m + 1)]
    if isinstance(spec, SumDegree):
        if spec.n < 0:
            raise ValidationError("degree must be nonnegative")
        return [(i, j) for j in range(spec.n + 1) for i in range(spec.n - j + 1)]
    if isinstance(spec, ShapeBand):
        spec.shape.validate()
        if spec.N <= 0:
            raise ValidationError("bandwidth N must be positive")
        out = []
        jmax = int(math.floor(spec.N)) + 1
        imax = int(math.floor(spec.N)) + 1
        while spec.shape.contains(0.0, (jmax + 1) / spec.N):
            jmax += 1
        while spec.shape.contains((imax + 1) / spec.N, 0.0):
            imax += 1
        for j in range(jmax + 1):
            for i in range(imax + 1):
                if spec.shape.contains(i / spec.N, j / spec.N):
                    out.append((i, j))
        return out
    raise ValidationError(f"unknown index-set spec {spec!r}")


def index_set(spec, d: int) -> IndexSet:
    """Materialize the ordered index list for a bandlimit specification."""
    ij = sorted(_ij_pairs(spec, d), key=lambda p: (p[1], p[0]))
    idx = [BasisIndex(i, j, k) for (i, j) in ij for k in range(1, dim_harm(j, d) + 1)]
    return IndexSet(spec=spec, d=d, indices=tuple(idx))


# ---------------------------------------------------------------------------
# basis evaluation


def radial_value(i: int, ell_j: float, d: int, r) -> np.ndarray:
    """Radial factor gamma_{i ell} P_i^{0, ell+(d-2)/2}(2 r^2 - 1) r^ell."""
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    beta = ell_j + (d - 2) / 2.0
    if beta <= -1.0:
        raise ParameterError("radial exponent violates ell + (d-2)/2 > -1")
    gamma = math.sqrt(4.0 * i + 2.0 * ell_j + d)
    pvals = jacobi_values(i, 0.0, beta, 2.0 * r * r - 1.0)[i]
    with np.errstate(divide="ignore", invalid="ignore"):
        rp = np.where(r > 0, r, 1.0) ** ell_j
    rp = np.where(r > 0, rp, 1.0 if ell_j == 0 else 0.0)
    if ell_j < 0 and np.any(r == 0):
        raise ParameterError("negative radial exponent cannot be evaluated at the origin")
    return gamma * pvals * rp


def zernike_eval(idx: BasisIndex, ell: EllSequence, x, d: int | None = None) -> float:
    """Evaluate the unit-norm basis function Z_{i,j,k} at a point of the ball.

    At the origin the radial factor r^{ell_j} is taken as 0 for ell_j > 0 and
    1 for ell_j = 0 (with the polar axis direction standing in for xi).
    """
    x = np.asarray(x, dtype=np.float64)
    if d is None:
        d = x.size
    r = float(np.sqrt(np.dot(x, x)))
    if r > 1.0 + 1e-12:
        raise ParameterError("point lies outside the unit ball")
    ell_j = ell.ell(idx.j)
    if r == 0.0:
        if ell_j < 0:
            raise ParameterError("negative radial exponent cannot be evaluated at the origin")
        if ell_j > 0:
            return 0.0
        xi = np.zeros(d)
        xi[-1] = 1.0
    else:
        xi = x / r
    rad = float(radial_value(idx.i, ell_j, d, r)[0])
    return rad * sph_harm_real(idx.j, idx.k, d, xi)


def basis_matrix(iset: IndexSet, ell: EllSequence, pts: np.ndarray) -> np.ndarray:
    """Evaluation matrix B[a, p] = Z_a(pts[p]) over an (n, d) point array.

    Points at the origin use the polar-axis direction convention of
    :func:`zernike_eval`.
    """
    d = iset.d
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    r = np.sqrt(np.sum(pts * pts, axis=1))
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    phi = np.where(r > 0, phi, 0.0)
    if d == 3:
        with np.errstate(invalid="ignore"):
            u = np.where(r > 0, pts[:, 2] / np.where(r > 0, r, 1.0), 1.0)
        ptable = assoc_legendre_table(iset.jmax, np.clip(u, -1.0, 1.0))
    out = np.empty((len(iset), pts.shape[0]))
    rad_cache: dict[tuple[int, float], np.ndarray] = {}
    for row, b in enumerate(iset.indices):
        lj = ell.ell(b.j)
        key = (b.i, lj)
        if key not in rad_cache:
            rad_cache[key] = radial_value(b.i, lj, d, r)
        m, variant = k_to_azimuth(b.j, b.k, d)
        yval = _azimuth_value(m, variant, phi)
        if d == 3:
            yval = yval * ptable[b.j * (b.j + 1) // 2 + m]
        out[row] = rad_cache[key] * yval
    return out


# ---------------------------------------------------------------------------
# Noll indexing (2-d optics)


@lru_cache(maxsize=None)
def noll_map(j: int) -> tuple[int, int, str]:
    """Map a 1-based Noll index to (radial degree n, azimuthal frequency m, variant).

    The parity rule follows the source convention adopted here: even j takes
    the sine variant, odd j the cosine variant (the reverse of Noll's original
    table), and m = 0 always has the single "cos" variant.  The printed
    floor-formula for (n, m) is used in its arithmetically consistent form
    (the verbatim rendering collides at j in {2, 3, 4}); consistency is pinned
    by the bijectivity test over j = 1..300.
    """
    if j < 1:
        raise ParameterError("Noll index starts at 1")
    n = int(math.floor(math.sqrt(2.0 * j - 1.0) + 0.5)) - 1
    if n % 2 == 0:
        m = 2 * int(math.floor((2 * j + 1 - n * (n + 1)) / 4.0))
    else:
        m = 2 * int(math.floor((2 * (j + 1) - n * (n + 1)) / 4.0)) - 1
    if m == 0:
        variant = "cos"
    else:
        variant = "sin" if j % 2 == 0 else "cos"
    return n, m, variant


def noll_index_set(count: int) -> IndexSet:
    """First ``count`` Noll functions as ball indices (i, j, k) on the disc."""
    if count < 1:
        raise ValidationError("count must be positive")
    indices = []
    for jn in range(1, count + 1):
        n, m, variant = noll_map(jn)
        i = (n - m) // 2
        k = 1 if (m == 0 or variant == "cos") else 2
        indices.append(BasisIndex(i, m, k))
    return IndexSet(spec=("noll", count), d=2, indices=tuple(indices))

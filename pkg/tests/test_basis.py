import math

import numpy as np
import pytest

from ballslep import basis as bs
from ballslep import geometry as geo
from ballslep.specfun import ParameterError, legendre_gegenbauer


class TestCounting:
    def test_dim_harm_values(self):
        assert bs.dim_harm(4, 3) == 9
        assert bs.dim_harm(0, 2) == 1
        assert bs.dim_harm(3, 2) == 2
        assert bs.dim_harm(0, 3) == 1

    def test_dim_harm_sum_d3(self):
        for n in range(12):
            assert bs.dim_harm_sum(n, 3) == (n + 1) ** 2

    def test_counting_identity_exact(self):
        # sum over radial index of the harmonic dimensions below the degree cap
        for d in (2, 3):
            for n in range(21):
                total = sum(bs.dim_harm(j, d) for i in range(n // 2 + 1) for j in range(n - 2 * i + 1))
                assert total == math.comb(n + d, d)

    def test_poly_cardinality(self):
        for d in (2, 3):
            for n in (0, 2, 5, 8):
                assert len(bs.index_set(bs.PolyDegree(n), d)) == math.comb(n + d, d)

    def test_fj_cardinality(self):
        assert len(bs.index_set(bs.FourierJacobi(1, 1), 3)) == 8
        for m, n in ((0, 0), (3, 2), (4, 4)):
            assert len(bs.index_set(bs.FourierJacobi(m, n), 3)) == (m + 1) * bs.dim_harm_sum(n, 3)


class TestSphericalHarmonics:
    def test_constant_harmonic(self):
        xi = np.array([0.3, -0.1, 0.0])
        xi /= np.linalg.norm(xi)
        assert bs.sph_harm_real(0, 1, 3, np.array([0.0, 0.0, 1.0])) == pytest.approx(1.0 / math.sqrt(4 * math.pi))
        assert bs.sph_harm_real(0, 1, 3, xi) == pytest.approx(1.0 / math.sqrt(4 * math.pi))

    def test_circle_cosine_variant(self):
        assert bs.sph_harm_real(2, 1, 2, np.array([1.0, 0.0])) == pytest.approx(1.0 / math.sqrt(math.pi))

    def test_addition_theorem_diagonal(self):
        rng = np.random.default_rng(1)
        for d in (2, 3):
            xi = rng.normal(size=d)
            xi /= np.linalg.norm(xi)
            for j in (0, 2, 6):
                s = sum(bs.sph_harm_real(j, k, d, xi) ** 2 for k in range(1, bs.dim_harm(j, d) + 1))
                assert s == pytest.approx(bs.dim_harm(j, d) / geo.vol_sphere(d), rel=1e-11)

    def test_addition_theorem_pairs(self):
        rng = np.random.default_rng(2)
        for d in (2, 3):
            for j in range(16):
                for _ in range(4):
                    xi, eta = rng.normal(size=d), rng.normal(size=d)
                    xi /= np.linalg.norm(xi)
                    eta /= np.linalg.norm(eta)
                    s = sum(
                        bs.sph_harm_real(j, k, d, xi) * bs.sph_harm_real(j, k, d, eta)
                        for k in range(1, bs.dim_harm(j, d) + 1)
                    )
                    ref = bs.dim_harm(j, d) / geo.vol_sphere(d) * legendre_gegenbauer(j, d, float(xi @ eta))
                    assert abs(s - ref) < 1e-10

    def test_orthonormal_on_sphere(self):
        # quadrature over S^2 for degrees <= 4
        u, wu = geo.gauss_legendre(24, -1.0, 1.0)
        phi, wphi = geo.gauss_legendre(64, -math.pi, math.pi)
        pairs = [(j, k) for j in range(5) for k in range(1, 2 * j + 2)]
        vals = {}
        for j, k in pairs:
            m, variant = bs.k_to_azimuth(j, k, 3)
            grid = np.zeros((u.size, phi.size))
            for a, uu in enumerate(u):
                s = math.sqrt(1.0 - uu * uu)
                xis = np.stack([s * np.cos(phi), s * np.sin(phi), np.full_like(phi, uu)], axis=1)
                grid[a] = [bs.sph_harm_real(j, k, 3, xi) for xi in xis]
            vals[(j, k)] = grid
        for a, (j1, k1) in enumerate(pairs):
            for j2, k2 in pairs[a:]:
                inner = float(wu @ (vals[(j1, k1)] * vals[(j2, k2)]) @ wphi)
                want = 1.0 if (j1, k1) == (j2, k2) else 0.0
                assert inner == pytest.approx(want, abs=1e-10)

    def test_bad_inputs(self):
        with pytest.raises(ParameterError):
            bs.sph_harm_real(2, 9, 3, np.array([0.0, 0.0, 1.0]))
        with pytest.raises(ParameterError):
            bs.sph_harm_real(1, 1, 3, np.array([0.0, 0.0, 2.0]))


class TestZernikeEval:
    def test_constant_mode(self, zell):
        for x in (np.array([0.0, 0.0, 0.0]), np.array([0.3, 0.2, 0.1])):
            val = bs.zernike_eval(bs.BasisIndex(0, 0, 1), zell, x)
            assert val == pytest.approx(math.sqrt(3.0) / math.sqrt(4.0 * math.pi), rel=1e-13)

    def test_unit_norm_by_quadrature(self, zell):
        dom = geo.Domain("ball", 3)
        rule = geo.build_rule(dom, None, 24, 32, 32)
        idx = bs.BasisIndex(2, 1, 1)

        def f(pts):
            return np.array([bs.zernike_eval(idx, zell, p) ** 2 for p in pts])

        assert geo.integrate(dom, None, f, rule) == pytest.approx(1.0, rel=1e-11)

    def test_orthogonality_pair(self, zell):
        dom = geo.Domain("ball", 3)
        rule = geo.build_rule(dom, None, 24, 32, 32)
        a, b = bs.BasisIndex(1, 1, 1), bs.BasisIndex(0, 3, 1)

        def f(pts):
            return np.array([bs.zernike_eval(a, zell, p) * bs.zernike_eval(b, zell, p) for p in pts])

        assert geo.integrate(dom, None, f, rule) == pytest.approx(0.0, abs=1e-11)

    def test_origin_conventions(self):
        origin = np.zeros(3)
        lin = bs.zernike_ell()
        assert bs.zernike_eval(bs.BasisIndex(2, 3, 2), lin, origin) == 0.0
        neg = bs.EllSequence("linear", -1.0)
        with pytest.raises(ParameterError):
            bs.zernike_eval(bs.BasisIndex(0, 0, 1), neg, origin)
        assert math.isfinite(bs.zernike_eval(bs.BasisIndex(1, 0, 1), neg, np.array([0.5, 0.0, 0.0])))

    def test_outside_ball_rejected(self, zell):
        with pytest.raises(ParameterError):
            bs.zernike_eval(bs.BasisIndex(0, 0, 1), zell, np.array([1.2, 0.0, 0.0]))

    def test_basis_matrix_matches_pointwise(self, zell):
        iset = bs.index_set(bs.PolyDegree(4), 3)
        rng = np.random.default_rng(5)
        pts = rng.normal(size=(6, 3))
        pts *= (rng.uniform(0.05, 0.95, size=6) / np.linalg.norm(pts, axis=1))[:, None]
        mat = bs.basis_matrix(iset, zell, pts)
        for row, b in enumerate(iset.indices):
            for col, p in enumerate(pts):
                assert mat[row, col] == pytest.approx(bs.zernike_eval(b, zell, p), rel=1e-11, abs=1e-12)


class TestEllSequence:
    def test_kinds(self):
        assert bs.EllSequence("constant", 2.0).ell(5) == 2.0
        assert bs.EllSequence("linear", 1.0).ell(5) == 6.0
        assert bs.EllSequence("table", table=(0.0, 2.5)).ell(1) == 2.5

    def test_validation(self):
        bs.EllSequence("linear", -1.0).validate(4, 3)  # inf = -1 + 1/2 > -1
        with pytest.raises(bs.ValidationError):
            bs.EllSequence("linear", -1.0).validate(4, 2)
        with pytest.raises(bs.ValidationError):
            bs.EllSequence("constant", -2.0).validate(4, 3)


class TestIndexSets:
    def test_ordering_deterministic(self):
        iset = bs.index_set(bs.PolyDegree(5), 3)
        keys = [(b.j, b.i, b.k) for b in iset.indices]
        assert keys == sorted(keys)

    def test_triangle_shape_equals_poly(self):
        for n in (3, 6):
            a = bs.index_set(bs.ShapeBand(bs.SpectralShape("triangle"), float(n)), 3)
            b = bs.index_set(bs.PolyDegree(n), 3)
            assert a.indices == b.indices

    def test_rectangle_shape_equals_fj(self):
        m, kappa = 8, 0.5
        a = bs.index_set(bs.ShapeBand(bs.SpectralShape("rectangle", kappa=kappa), float(m)), 3)
        b = bs.index_set(bs.FourierJacobi(m, int(kappa * m)), 3)
        assert a.indices == b.indices

    def test_sum_degree_counts(self):
        iset = bs.index_set(bs.SumDegree(3), 2)
        # (i, j) with i + j <= 3; each j > 0 contributes 2 harmonics on the circle
        want = sum(bs.dim_harm(j, 2) * (3 - j + 1) for j in range(4))
        assert len(iset) == want

    def test_shape_validation_rejects_non_lowpass(self):
        bad = bs.SpectralShape("piecewiselinear", points=((0.0, 0.2), (0.5, 1.0), (1.0, 0.0)))
        with pytest.raises(bs.ValidationError):
            bs.index_set(bs.ShapeBand(bad, 8.0), 3)

    def test_quarterdisc_boundary_closed(self):
        shape = bs.SpectralShape("quarterdisc")
        assert shape.contains(0.6, 0.8)

    def test_span_of_monomials(self, zell):
        # projection of every monomial of total degree <= n onto the degree set
        dom = geo.Domain("ball", 3)
        rule = geo.build_rule(dom, None, 24, 32, 48)
        pts, w = geo.rule_points(rule)
        wflat = w.ravel()
        rng = np.random.default_rng(8)
        probe = rng.normal(size=(64, 3))
        probe *= (rng.uniform(0.05, 0.95, size=64) / np.linalg.norm(probe, axis=1))[:, None]
        for n in (2, 4):
            iset = bs.index_set(bs.PolyDegree(n), 3)
            bmat = bs.basis_matrix(iset, zell, pts)
            bprobe = bs.basis_matrix(iset, zell, probe)
            for a in range(n + 1):
                for b in range(n + 1 - a):
                    for c in range(n + 1 - a - b):
                        mono = pts[:, 0] ** a * pts[:, 1] ** b * pts[:, 2] ** c
                        coef = bmat @ (wflat * mono)
                        recon = coef @ bprobe
                        direct = probe[:, 0] ** a * probe[:, 1] ** b * probe[:, 2] ** c
                        assert np.max(np.abs(recon - direct)) < 1e-8


class TestNoll:
    def test_first_index(self):
        assert bs.noll_map(1) == (0, 0, "cos")

    def test_parity_rule(self):
        for j in range(2, 60):
            n, m, variant = bs.noll_map(j)
            if m != 0:
                assert variant == ("sin" if j % 2 == 0 else "cos")

    def test_bijective_up_to_300(self):
        seen = set()
        for j in range(1, 301):
            t = bs.noll_map(j)
            assert t not in seen
            seen.add(t)
        # coverage: degree block n carries n+1 distinct (m, variant) combinations
        for n in range(10):
            block = [t for t in seen if t[0] == n]
            assert len(block) == n + 1

    def test_prefixes_compatible_with_degree_sets(self):
        for n in range(9):
            count = (n + 1) * (n + 2) // 2
            iset = bs.noll_index_set(count)
            got = sorted((b.i, b.j, b.k) for b in iset.indices)
            want = sorted((b.i, b.j, b.k) for b in bs.index_set(bs.PolyDegree(n), 2).indices)
            assert got == want

    def test_invalid_index(self):
        with pytest.raises(ParameterError):
            bs.noll_map(0)

"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances are fixed here, not calibrated.
"""

import json
import math
import time

import numpy as np
import pytest

from ballslep import asymptotics as asym
from ballslep import basis as bs
from ballslep import cli
from ballslep import concentration as cc
from ballslep import geometry as geo
from ballslep import kernels as kr


def report(num, ok, detail):
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


@pytest.fixture(scope="module")
def d1_grams(d1, zell):
    out = {}
    for n in (4, 8, 10, 16):
        out[n] = cc.assemble_gram(d1, bs.index_set(bs.PolyDegree(n), 3), zell)
    return out


@pytest.fixture(scope="module")
def d2_grams(d2, zell):
    return {n: cc.assemble_gram(d2, bs.index_set(bs.PolyDegree(n), 3), zell) for n in (4, 16)}


def test_criterion_01_orthonormality(zell):
    t0 = time.perf_counter()
    dom = geo.Domain("ball", 3)
    errs = {}
    for label, spec in (("poly8", bs.PolyDegree(8)), ("fj44", bs.FourierJacobi(4, 4))):
        iset = bs.index_set(spec, 3)
        gram = cc.assemble_gram(dom, iset, zell)
        errs[label] = float(np.max(np.abs(gram.matrix - np.eye(len(iset)))))
    elapsed = time.perf_counter() - t0
    ok = all(e < 1e-10 for e in errs.values()) and elapsed < 10.0
    report(1, ok, f"max|G - I|: poly8 {errs['poly8']:.2e}, fj44 {errs['fj44']:.2e}; {elapsed:.1f}s")


def test_criterion_02_trace_hs_identities(d1, zell):
    t0 = time.perf_counter()
    res = cc.verify_operator_identities(d1, bs.index_set(bs.PolyDegree(10), 3), zell)
    elapsed = time.perf_counter() - t0
    ok = res["trace_residual"] < 1e-8 and res["hs_residual"] < 1e-8 and elapsed < 60.0
    report(2, ok, f"trace {res['trace_residual']:.2e}, hs {res['hs_residual']:.2e}; {elapsed:.1f}s")


def test_criterion_03_closed_form_oracle(zell):
    rng = np.random.default_rng(33)
    worst = 0.0
    for d in (2, 3):
        om = geo.omega_mu(0.5, d)
        for n in range(1, 11):
            spec = kr.SumForm(bs.index_set(bs.PolyDegree(n), d), zell)
            for _ in range(5):  # 50 pairs per dimension over the degree range
                x, y = rng.normal(size=(2, d))
                x *= rng.uniform(0.05, 0.95) / np.linalg.norm(x)
                y *= rng.uniform(0.05, 0.95) / np.linalg.norm(y)
                closed = kr.kernel_poly_closed(0.5, n, d, x, y)
                summed = kr.kernel_sum(spec, x, y) / om
                worst = max(worst, abs(closed - summed) / max(abs(summed), 1e-12))
    report(3, worst < 1e-8, f"max rel err {worst:.2e}")


def test_criterion_04_addition_theorem():
    rng = np.random.default_rng(4)
    worst = 0.0
    from ballslep.specfun import legendre_gegenbauer

    for d in (2, 3):
        for j in range(16):
            for _ in range(100 // 16 + 1):
                xi, eta = rng.normal(size=(2, d))
                xi /= np.linalg.norm(xi)
                eta /= np.linalg.norm(eta)
                s = sum(
                    bs.sph_harm_real(j, k, d, xi) * bs.sph_harm_real(j, k, d, eta)
                    for k in range(1, bs.dim_harm(j, d) + 1)
                )
                ref = bs.dim_harm(j, d) / geo.vol_sphere(d) * legendre_gegenbauer(j, d, float(xi @ eta))
                worst = max(worst, abs(s - ref))
    report(4, worst < 1e-10, f"max abs err {worst:.2e}")


def test_criterion_05_christoffel_convergence():
    t0 = time.perf_counter()
    x = np.array([0.5, 0.0, 0.0])
    target = kr.christoffel_target(kr.PolyClosedForm(0.5, 60, 3), x)
    err = {n: abs(kr.christoffel_ratio(kr.PolyClosedForm(0.5, n, 3), x) - target) / target for n in (20, 60)}
    elapsed = time.perf_counter() - t0
    ok = err[60] < 0.05 and err[60] < err[20] and elapsed < 5.0
    report(5, ok, f"rel err n=60 {err[60]:.2e} < n=20 {err[20]:.2e}; {elapsed:.1f}s")


def test_criterion_06_shannon_poly(d1, d2, d1_grams, d2_grams):
    oks, details = [], []
    for name, dom, grams in (("D1", d1, d1_grams), ("D2", d2, d2_grams)):
        target = asym.predicted_shannon(dom, "poly").value
        err = {n: abs(np.trace(grams[n].matrix) / grams[n].dim - target) for n in (4, 16)}
        oks.append(err[16] < 0.15 and err[16] < err[4])
        details.append(f"{name}: err16 {err[16]:.4f} < err4 {err[4]:.4f}")
    report(6, all(oks), "; ".join(details))


def test_criterion_07_shannon_fj(zell):
    t0 = time.perf_counter()
    dom = geo.Domain("shell", 3, r1=0.7, r2=0.9)
    target = 2.0 / math.pi * (math.asin(0.9) - math.asin(0.7))
    # cross-validate the closed form by independent radial quadrature
    rr, ww = geo.gauss_legendre(96, 0.7, 0.9)
    quad = geo.vol_sphere(3) * float(ww @ (rr**2 * kr.w0_tilde(rr, 3)))
    iset = bs.index_set(bs.FourierJacobi(30, 6), 3)
    gram = cc.assemble_gram(dom, iset, zell)
    emp = float(np.trace(gram.matrix)) / len(iset)
    elapsed = time.perf_counter() - t0
    ok = abs(emp - target) < 0.1 and abs(quad - target) < 1e-8 and elapsed < 60.0
    report(7, ok, f"|empirical - target| {abs(emp - target):.4f}, closed-vs-quad {abs(quad - target):.2e}; {elapsed:.1f}s")


def test_criterion_08_clustering(d1_grams):
    t0 = time.perf_counter()
    rel = {}
    for n in (8, 16):
        rep = cc.eigensolve_sym(d1_grams[n])
        rel[n] = rep.count(0.05, 0.95) / rep.dim
    elapsed = time.perf_counter() - t0
    ok = rel[16] < rel[8] and elapsed < 600.0
    report(8, ok, f"rel mid-count n=16 {rel[16]:.4f} < n=8 {rel[8]:.4f}; {elapsed:.1f}s")


def test_criterion_09_universality_trend():
    x = np.array([0.4, 0.0, 0.0])
    dirs = [np.eye(3)[i] for i in range(3)] + [
        np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0),
        np.ones(3) / math.sqrt(3.0),
    ]
    errs = {}
    for n in (20, 60):
        recs = kr.universality_scan(kr.PolyClosedForm(0.5, n, 3), x, dirs)
        errs[n] = [abs(r["ratio"] - r["reference"]) for r in recs]
    ok = all(e60 < e20 for e20, e60 in zip(errs[20], errs[60]))
    report(9, ok, f"per-direction err n=60 {max(errs[60]):.4f} vs n=20 {min(errs[20]):.4f} (5 directions)")


def test_criterion_10_e_d_identities():
    worst = max(
        abs(geo.omega_mu(0.0, d) / math.factorial(d) * kr.e_d_constant(d) - 1.0) for d in (2, 3, 4, 5)
    )
    num = kr.e_d_truncated(3, 200.0)
    rel = abs(num - kr.e_d_constant(3)) / kr.e_d_constant(3)
    ok = worst < 1e-12 and rel < 0.05
    report(10, ok, f"identity residual {worst:.2e}; truncated integral off by {rel:.3%}")


def test_criterion_11_remez_property(zell):
    n, d = 6, 3
    iset = bs.index_set(bs.PolyDegree(n), d)
    rule = geo.build_rule(geo.Domain("ball", 3), None, 24, 20, 40)
    pts, _ = geo.rule_points(rule)
    bmat = bs.basis_matrix(iset, zell, pts)
    on_e = np.linalg.norm(pts, axis=1) >= 0.5
    bound = asym.remez_sup_bound(n, d, 1.0 - 0.5**3).value
    rng = np.random.default_rng(42)
    violations = 0
    for _ in range(200):
        vals = rng.standard_normal(len(iset)) @ bmat
        if np.max(np.abs(vals)) > bound * np.max(np.abs(vals[on_e])):
            violations += 1
    report(11, violations == 0, f"{violations} violations over 200 random polynomials, factor {bound:.0f}")


def test_criterion_12_cap_concentration():
    mass = kr.cap_mass(40, 3, 0.3)
    report(12, mass >= 0.95, f"cap mass {mass:.4f} at degree 40")


def test_criterion_13_determinism(tmp_path):
    args = ["spectrum", "--preset", "fig2-poly-D1", "--set", 'basis.set="poly(10)"']
    assert cli.main([*args, "--out", str(tmp_path / "a")]) == 0
    assert cli.main([*args, "--threads", "4", "--out", str(tmp_path / "b")]) == 0
    csv_a = (tmp_path / "a" / "spectrum.csv").read_bytes()
    csv_b = (tmp_path / "b" / "spectrum.csv").read_bytes()
    sum_a = json.loads((tmp_path / "a" / "summary.json").read_text())
    sum_b = json.loads((tmp_path / "b" / "summary.json").read_text())
    ok = csv_a == csv_b and sum_a["config_hash"] == sum_b["config_hash"]
    report(13, ok, f"{len(csv_a)} CSV bytes identical across reruns and thread counts")


def test_criterion_14_counting_and_span(zell):
    exact = all(
        sum(bs.dim_harm(j, d) for i in range(n // 2 + 1) for j in range(n - 2 * i + 1)) == math.comb(n + d, d)
        for d in (2, 3)
        for n in range(21)
    )
    dom = geo.Domain("ball", 3)
    rule = geo.build_rule(dom, None, 24, 32, 48)
    pts, w = geo.rule_points(rule)
    wflat = w.ravel()
    rng = np.random.default_rng(14)
    probe = rng.normal(size=(50, 3))
    probe *= (rng.uniform(0.05, 0.95, size=50) / np.linalg.norm(probe, axis=1))[:, None]
    worst = 0.0
    for n in (2, 3, 4):
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
                    worst = max(worst, float(np.max(np.abs(recon - direct))))
    ok = exact and worst < 1e-8
    report(14, ok, f"counting identity exact; span residual {worst:.2e}")

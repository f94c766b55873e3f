"""Configuration-driven experiment runner with reproducible CSV/JSON output.

Configs are JSON with nested sections (domain / basis / numeric / scan-specific
/ output); precedence is command-line ``--set`` overrides > ``--config`` file >
preset defaults.  Unknown keys are rejected.  Numeric CSV fields use a fixed
17-significant-digit scientific format by default, so re-running an identical
config reproduces the files byte for byte.

Exit codes: 0 success, 2 validation error, 3 numerical-quality abort.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import importlib.metadata
import importlib.resources
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema
import numpy as np

from . import asymptotics as asym
from . import basis as bs
from . import concentration as cc
from . import geometry as geo
from . import kernels as kr
from .concentration import NumericalQualityError
from .specfun import ParameterError

SCHEMA_VERSION = "1"
MAX_POLY_DEGREE = 24
MAX_FJ_DIM = 4000

EXPERIMENTS = ("spectrum", "shannon", "kernel-scan", "conjecture", "optics", "bounds", "verify")


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""


# ---------------------------------------------------------------------------
# config handling

_DOMAIN_KEYS = {"kind", "dim", "r1", "r2", "theta1", "theta2", "phi1", "phi2"}

_DEFAULTS = {
    "spectrum": {
        "experiment": "spectrum",
        "domain": {"kind": "ball", "dim": 3, "r1": 0.0, "r2": 1.0, "theta1": 0.0, "theta2": 3.141592653589793, "phi1": -3.141592653589793, "phi2": 3.141592653589793},
        "basis": {"ell": "linear:0", "set": "poly(8)"},
        "numeric": {
            "radial_order": None,
            "polar_order": None,
            "azimuthal_order": None,
            "eigenvectors": False,
            "epsilons": [0.05, 0.1, 0.2],
            "tau": 0.5,
        },
        "sweep": {"n_list": []},
        "output": {"dir": "out", "float_format": "fixed17"},
    },
    "shannon": {
        "experiment": "shannon",
        "domain": {"kind": "ball", "dim": 3, "r1": 0.0, "r2": 1.0, "theta1": 0.0, "theta2": 3.141592653589793, "phi1": -3.141592653589793, "phi2": 3.141592653589793},
        "shannon": {"notion": "poly"},
        "output": {"dir": "out", "float_format": "fixed17"},
    },
    "kernel-scan": {
        "experiment": "kernel-scan",
        "scan": {
            "type": "christoffel",
            "family": "poly",
            "mu": 0.5,
            "dim": 3,
            "n": 40,
            "m": 40,
            "radii": [],
            "x_norm": 0.4,
            "offset_mag": 1.0,
        },
        "output": {"dir": "out", "float_format": "fixed17"},
    },
    "conjecture": {
        "experiment": "conjecture",
        "conjecture": {
            "mode": "kappa",
            "dim": 3,
            "ell": "linear:0",
            "kappa": 1.0,
            "m_list": [10, 20, 30],
            "n_list": [10, 20, 40],
            "shape": "quarterdisc",
            "radii": [],
        },
        "output": {"dir": "out", "float_format": "fixed17"},
    },
    "optics": {
        "experiment": "optics",
        "optics": {"n": 40, "radii": []},
        "output": {"dir": "out", "float_format": "fixed17"},
    },
    "bounds": {
        "experiment": "bounds",
        "bounds": {"dim": 3, "n_list": [2, 3, 4, 5, 6, 7, 8], "subset_ratio": 0.875, "nikolskii": True},
        "output": {"dir": "out", "float_format": "fixed17"},
    },
    "verify": {
        "experiment": "verify",
        "verify": {"poly_n": 8, "fj_m": 4, "fj_n": 4, "tolerance": 1e-10},
        "output": {"dir": "out", "float_format": "fixed17"},
    },
}


def _merge(base: dict, override: dict, path: str = "") -> dict:
    out = dict(base)
    for key, val in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config key {where!r}")
        if isinstance(base[key], dict):
            if not isinstance(val, dict):
                raise ConfigError(f"config key {where!r} must be a section")
            out[key] = _merge(base[key], val, where)
        else:
            out[key] = val
    return out


def default_config(kind: str) -> dict:
    if kind not in _DEFAULTS:
        raise ConfigError(f"unknown experiment kind {kind!r}; expected one of {EXPERIMENTS}")
    return json.loads(json.dumps(_DEFAULTS[kind]))


def _parse_override(text: str):
    if "=" not in text:
        raise ConfigError(f"--set expects key=value, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        val = json.loads(raw)
    except json.JSONDecodeError:
        val = raw
    node: dict = {}
    leaf = node
    parts = key.split(".")
    for part in parts[:-1]:
        leaf[part] = {}
        leaf = leaf[part]
    leaf[parts[-1]] = val
    return node


def resolve_config(kind: str, preset: str | None, config_file: str | None, overrides) -> dict:
    cfg = default_config(kind)
    if preset is not None:
        all_presets = presets()
        if preset not in all_presets:
            raise ConfigError(f"unknown preset {preset!r}; available: {', '.join(all_presets)}")
        pre = all_presets[preset]
        if pre["experiment"] != kind:
            raise ConfigError(f"preset {preset!r} belongs to experiment {pre['experiment']!r}, not {kind!r}")
        cfg = _merge(cfg, pre)
    if config_file is not None:
        try:
            loaded = json.loads(Path(config_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {config_file}: {exc}") from exc
        if loaded.get("experiment", kind) != kind:
            raise ConfigError("config file experiment kind does not match the command")
        cfg = _merge(cfg, loaded)
    for item in overrides or ():
        cfg = _merge(cfg, _parse_override(item))
    return cfg


def parse_domain(block: dict) -> geo.Domain:
    unknown = set(block) - _DOMAIN_KEYS
    if unknown:
        raise ConfigError(f"unknown domain keys {sorted(unknown)}")
    try:
        return geo.Domain(**block)
    except (ParameterError, TypeError) as exc:
        raise ConfigError(f"invalid domain: {exc}") from exc


def parse_ell(text: str) -> bs.EllSequence:
    kind, _, arg = text.partition(":")
    try:
        if kind == "linear":
            return bs.EllSequence("linear", float(arg or 0.0))
        if kind == "constant":
            return bs.EllSequence("constant", float(arg or 0.0))
        if kind == "table":
            return bs.EllSequence("table", table=tuple(float(v) for v in arg.split(",")))
    except ValueError as exc:
        raise ConfigError(f"invalid ell spec {text!r}: {exc}") from exc
    raise ConfigError(f"invalid ell spec {text!r}; expected linear:c, constant:c or table:v1,v2,...")


def parse_set(text: str, d: int):
    text = text.strip()
    if "(" not in text or not text.endswith(")"):
        raise ConfigError(f"invalid index-set spec {text!r}")
    name, payload = text[:-1].split("(", 1)
    args = [a.strip() for a in payload.split(",")] if payload else []
    try:
        if name == "poly":
            return bs.index_set(bs.PolyDegree(int(args[0])), d)
        if name == "fj":
            return bs.index_set(bs.FourierJacobi(int(args[0]), int(args[1])), d)
        if name == "sum":
            return bs.index_set(bs.SumDegree(int(args[0])), d)
        if name == "shape":
            shape_name, _, kappa = args[0].partition(":")
            shape = bs.SpectralShape(shape_name, float(kappa) if kappa else 1.0)
            return bs.index_set(bs.ShapeBand(shape, float(args[1])), d)
        if name == "noll":
            if d != 2:
                raise ConfigError("noll(count) sets are 2-d only")
            return bs.noll_index_set(int(args[0]))
    except (IndexError, ValueError, bs.ValidationError) as exc:
        raise ConfigError(f"invalid index-set spec {text!r}: {exc}") from exc
    raise ConfigError(f"unknown index-set family {name!r}")


def _guardrails(iset, force: bool) -> None:
    spec = iset.spec
    if isinstance(spec, bs.PolyDegree) and spec.n > MAX_POLY_DEGREE and not force:
        raise ConfigError(f"polynomial degree {spec.n} exceeds the guardrail {MAX_POLY_DEGREE}; pass --force to override")
    if isinstance(spec, bs.FourierJacobi) and len(iset) > MAX_FJ_DIM and not force:
        raise ConfigError(f"index-set dimension {len(iset)} exceeds the guardrail {MAX_FJ_DIM}; pass --force to override")


# ---------------------------------------------------------------------------
# output helpers


def _fmt(value, float_format: str) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.16e}" if float_format == "fixed17" else repr(value)
    return str(value)


def _write_csv(path: Path, header, rows, float_format: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v, float_format) for v in row])


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode("utf-8")).hexdigest()


def _library_version() -> str:
    try:
        return importlib.metadata.version("ballslep")
    except importlib.metadata.PackageNotFoundError:  # pragma: no cover
        return "unknown"


def load_schema() -> dict:
    text = importlib.resources.files("ballslep").joinpath("schema/summary.schema.json").read_text("utf-8")
    return json.loads(text)


class ResultBundle:
    """Paths and summary of one experiment run."""

    def __init__(self, out_dir: Path, experiment: str, cfg: dict):
        self.out_dir = out_dir
        self.experiment = experiment
        self.cfg = cfg
        self.csv_paths: list[Path] = []
        self.summary: dict = {}
        self._t0 = time.perf_counter()

    def add_csv(self, name: str, header, rows) -> Path:
        path = self.out_dir / name
        _write_csv(path, header, rows, self.cfg["output"]["float_format"])
        self.csv_paths.append(path)
        return path

    def finalize(self, results: dict) -> dict:
        results = dict(results)
        results["provenance"] = {
            "library_version": _library_version(),
            "csv_files": [p.name for p in self.csv_paths],
        }
        self.summary = {
            "schema_version": SCHEMA_VERSION,
            "experiment": self.experiment,
            "config_hash": config_hash(self.cfg),
            "results": results,
            "timing_ms": int(round((time.perf_counter() - self._t0) * 1000.0)),
        }
        jsonschema.validate(self.summary, load_schema())
        (self.out_dir / "summary.json").write_text(
            json.dumps(self.summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return self.summary


# ---------------------------------------------------------------------------
# experiment runners


def _radii(block_radii, default_n=45, lo=0.02, hi=0.98):
    if block_radii:
        return np.asarray([float(r) for r in block_radii])
    return np.linspace(lo, hi, default_n)


def _orders_from_numeric(numeric: dict) -> dict | None:
    keys = ("radial_order", "polar_order", "azimuthal_order")
    if all(numeric.get(k) is None for k in keys):
        return None
    base = {}
    for k in keys:
        if numeric.get(k) is not None:
            base[k.replace("_order", "")] = int(numeric[k])
    return base


def _run_spectrum(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    domain = parse_domain(cfg["domain"])
    ell = parse_ell(cfg["basis"]["ell"])
    d = domain.dim
    numeric = cfg["numeric"]
    epsilons = [float(e) for e in numeric["epsilons"]]
    tau = float(numeric["tau"])

    def orders_for(iset):
        override = _orders_from_numeric(numeric)
        max_rdeg = int(math.ceil(max(2 * b.i + max(ell.ell(b.j), 0.0) for b in iset.indices)))
        orders = geo.default_orders(domain, max_rdeg, iset.jmax)
        if override:
            orders.update(override)
        return orders

    def solve(iset):
        gram = cc.assemble_gram(domain, iset, ell, orders=orders_for(iset))
        return cc.eigensolve_sym(gram)

    iset = parse_set(cfg["basis"]["set"], d)
    _guardrails(iset, force)
    notion = "fj" if isinstance(iset.spec, bs.FourierJacobi) else "poly"
    if numeric["eigenvectors"]:
        gram = cc.assemble_gram(domain, iset, ell, orders=orders_for(iset))
        report, vectors = cc.eigensolve_sym(gram, want_vectors=True)
        rows = [
            (rank + 1, ci, float(vectors[ci, rank]))
            for rank in range(report.dim)
            for ci in range(report.dim)
        ]
        bundle.add_csv("eigenvectors.csv", ["rank", "coefficient_index", "value"], rows)
    else:
        report = solve(iset)
    shannon_asym = asym.predicted_shannon(domain, notion).value

    bundle.add_csv(
        "spectrum.csv",
        ["rank", "eigenvalue"],
        [(i + 1, float(v)) for i, v in enumerate(report.eigenvalues)],
    )

    n_list = [int(n) for n in cfg["sweep"]["n_list"]]
    if n_list:
        rows = []
        for n in n_list:
            sub = bs.index_set(bs.PolyDegree(n), d)
            _guardrails(sub, force)
            rep = solve(sub)
            for eps in epsilons:
                cnt = rep.count(eps, 1.0 - eps)
                rows.append((n, eps, cnt, cnt / rep.dim))
        bundle.add_csv("transwidth.csv", ["n", "epsilon", "count", "relative"], rows)

    counts = {f"mid_{eps:g}": report.count(eps, 1.0 - eps) for eps in epsilons}
    counts[f"tau_{tau:g}"] = report.count(tau, 1.0)
    return {
        "dim": report.dim,
        "trace": report.trace,
        "hs2": report.hs_sq,
        "shannon_empirical": report.shannon_empirical,
        "shannon_asymptotic": shannon_asym,
        "lambda1": report.lambda1,
        "counts": counts,
        "quadrature_orders": orders_for(iset),
    }


def _run_shannon(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    domain = parse_domain(cfg["domain"])
    notion = cfg["shannon"]["notion"]
    if notion not in ("poly", "fj"):
        raise ConfigError("shannon.notion must be 'poly' or 'fj'")
    pred = asym.predicted_shannon(domain, notion)
    bundle.add_csv("shannon.csv", ["notion", "value", "method"], [(notion, pred.value, pred.method)])
    return {"notion": notion, "value": pred.value, "method": pred.method}


def _run_kernel_scan(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    scan = cfg["scan"]
    d = int(scan["dim"])
    radii = _radii(scan["radii"])
    if scan["type"] == "weights":
        rows = [(float(r), float(kr.w0(r, d)), float(kr.w0_tilde(r, d))) for r in radii]
        bundle.add_csv("weights.csv", ["r", "w0", "w0_tilde"], rows)
        return {"dim": d, "points": len(rows)}
    if scan["type"] == "christoffel":
        if scan["family"] == "poly":
            spec = kr.PolyClosedForm(float(scan["mu"]), int(scan["n"]), d)
        else:
            iset = bs.index_set(bs.FourierJacobi(int(scan["m"]), int(scan["n"])), d)
            spec = kr.SumForm(iset, bs.zernike_ell())
        rows = []
        for r in radii:
            x = np.zeros(d)
            x[0] = r
            rows.append((float(r), kr.christoffel_ratio(spec, x), kr.christoffel_target(spec, x)))
        bundle.add_csv("kernel_scan.csv", ["r", "value", "target"], rows)
        return {"family": scan["family"], "points": len(rows)}
    if scan["type"] == "universality":
        # scan offset magnitudes along one fixed direction
        x = np.zeros(d)
        x[0] = float(scan["x_norm"])
        mag = float(scan["offset_mag"])
        direction = np.ones(d) / math.sqrt(d)
        mags = np.linspace(-mag, mag, 21)
        offsets = [m * direction for m in mags]
        spec = kr.PolyClosedForm(float(scan["mu"]), int(scan["n"]), d)
        recs = kr.universality_scan(spec, x, offsets)
        rows = [
            (float(m), r["ratio"], r["reference"])
            for m, r in zip(mags, recs)
            if not r["skipped"]
        ]
        bundle.add_csv("kernel_scan.csv", ["offset", "ratio", "reference"], rows)
        return {"family": "poly", "points": len(rows)}
    raise ConfigError(f"unknown scan type {scan['type']!r}")


def _run_conjecture(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    block = cfg["conjecture"]
    d = int(block["dim"])
    ell = parse_ell(block["ell"])
    radii = _radii(block["radii"], lo=0.05, hi=0.95)
    if block["mode"] == "kappa":
        m_list = [int(m) for m in block["m_list"]]
        kappa = float(block["kappa"])

        def one(m):
            return asym.kappa_scan(ell, d, kappa, [m], radii)["curves"][m]

        with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
            curves = list(pool.map(one, m_list))
        ref = kr.w0_tilde(radii, d)
        rows = []
        for m, curve in zip(m_list, curves):
            rows.extend((m, float(r), float(v), float(w)) for r, v, w in zip(radii, curve, ref))
        bundle.add_csv("kappa_scan.csv", ["m", "r", "value", "reference"], rows)
        return {"mode": "kappa", "kappa": kappa, "m_list": m_list}
    if block["mode"] == "omega":
        n_list = [float(n) for n in block["n_list"]]
        shape = bs.SpectralShape(block["shape"])
        out = asym.omega_scan(shape, ell, d, n_list, radii)
        rows = []
        for n in n_list:
            rows.extend((n, float(r), float(v)) for r, v in zip(radii, out["curves"][n]))
        bundle.add_csv("omega_scan.csv", ["N", "r", "value"], rows)
        return {"mode": "omega", "shape": shape.name, "dims": {str(k): v for k, v in out["dims"].items()}}
    raise ConfigError(f"unknown conjecture mode {block['mode']!r}")


def _run_optics(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    block = cfg["optics"]
    radii = _radii(block["radii"], default_n=120, lo=0.01, hi=0.995)
    out = asym.optics_compare(int(block["n"]), radii)
    rows = [
        (float(r), float(a), float(b), float(c))
        for r, a, b, c in zip(out["radii"], out["k_poly"], out["k_breve"], out["reference"])
    ]
    bundle.add_csv("optics.csv", ["r", "k_poly", "k_breve", "w0_reference"], rows)
    return {"n": int(block["n"]), "crossing": out["crossing"], "dims": out["dims"]}


def _run_bounds(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    block = cfg["bounds"]
    d = int(block["dim"])
    ratio = float(block["subset_ratio"])
    rows = []
    for n in block["n_list"]:
        n = int(n)
        rb = asym.remez_sup_bound(n, d, ratio)
        ball_vol = math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)
        gap = asym.lambda1_lower_gap(n, d, ratio * ball_vol)
        rows.append((n, rb.argument, rb.value, gap))
    bundle.add_csv("bounds.csv", ["n", "chebyshev_arg", "remez_factor", "gap_bound"], rows)
    results = {"dim": d, "subset_ratio": ratio}
    if block["nikolskii"]:
        nik = asym.nikolskii_fit_check(_grid_basis_matrix, d=d)
        results["nikolskii"] = {
            "label": nik["label"],
            "c_fit": nik["c_fit"],
            "holds": nik["holds"],
            "quotients": {str(k): v for k, v in nik["quotients"].items()},
        }
    return results


def _grid_basis_matrix(iset, ell):
    """Product-grid evaluation matrix and quadrature weights for norm sampling."""
    d = iset.d
    dom = geo.Domain("ball", d)
    rule = geo.build_rule(dom, None, radial_order=24, polar_order=24, azimuthal_order=32)
    pts, w = geo.rule_points(rule)
    return bs.basis_matrix(iset, ell, pts), w.ravel()


def _run_verify(cfg: dict, bundle: ResultBundle, force: bool, threads: int) -> dict:
    block = cfg["verify"]
    tol = float(block["tolerance"])
    d = 3
    ell = bs.zernike_ell()
    dom = geo.Domain("ball", d)
    residuals = {}
    iset = bs.index_set(bs.PolyDegree(int(block["poly_n"])), d)
    gram = cc.assemble_gram(dom, iset, ell)
    residuals["orthonormality_poly"] = float(np.max(np.abs(gram.matrix - np.eye(len(iset)))))
    isetfj = bs.index_set(bs.FourierJacobi(int(block["fj_m"]), int(block["fj_n"])), d)
    gramfj = cc.assemble_gram(dom, isetfj, ell)
    residuals["orthonormality_fj"] = float(np.max(np.abs(gramfj.matrix - np.eye(len(isetfj)))))
    ids = cc.verify_operator_identities(dom, iset, ell)
    residuals["trace_identity"] = ids["trace_residual"]
    residuals["hs_identity"] = ids["hs_residual"]
    residuals["e_d_identity"] = abs(geo.omega_mu(0.0, d) / math.factorial(d) * kr.e_d_constant(d) - 1.0)
    ok = all(v < tol for v in residuals.values())
    rows = [(k, v, "pass" if v < tol else "fail") for k, v in residuals.items()]
    bundle.add_csv("verify.csv", ["identity", "residual", "status"], rows)
    if not ok:
        raise NumericalQualityError(f"verify residuals exceed {tol:g}: {residuals}")
    return {"tolerance": tol, "residuals": residuals, "all_passed": ok}


_RUNNERS = {
    "spectrum": _run_spectrum,
    "shannon": _run_shannon,
    "kernel-scan": _run_kernel_scan,
    "conjecture": _run_conjecture,
    "optics": _run_optics,
    "bounds": _run_bounds,
    "verify": _run_verify,
}


def run(cfg: dict, out_dir: str | Path | None = None, force: bool = False, threads: int = 1) -> ResultBundle:
    """Execute one experiment config, writing CSVs and the JSON summary."""
    kind = cfg.get("experiment")
    if kind not in _RUNNERS:
        raise ConfigError(f"unknown experiment kind {kind!r}")
    cfg = _merge(default_config(kind), cfg)
    out = Path(out_dir) if out_dir is not None else Path(cfg["output"]["dir"])
    out.mkdir(parents=True, exist_ok=True)
    bundle = ResultBundle(out, kind, cfg)
    results = _RUNNERS[kind](cfg, bundle, force, threads)
    bundle.finalize(results)
    return bundle


# ---------------------------------------------------------------------------
# presets reproducing the reference experiments


def presets() -> dict[str, dict]:
    """Named experiment configurations; the listing order is stable."""
    d1 = {"kind": "tesseroid", "dim": 3, "r1": 0.1, "r2": 0.8, "theta1": 0.3 * math.pi, "theta2": 0.9 * math.pi,
          "phi1": -0.6 * math.pi, "phi2": 0.9 * math.pi}
    d2 = {"kind": "tesseroid", "dim": 3, "r1": 0.7, "r2": 0.9, "theta1": 0.3 * math.pi, "theta2": 0.9 * math.pi,
          "phi1": -0.6 * math.pi, "phi2": 0.9 * math.pi}
    out: dict[str, dict] = {}
    out["fig1-weights"] = {
        "experiment": "kernel-scan",
        "scan": {"type": "weights", "dim": 3, "radii": [round(0.02 + 0.02 * i, 2) for i in range(49)]},
    }
    for name, dom in (("D1", d1), ("D2", d2)):
        out[f"fig2-poly-{name}"] = {
            "experiment": "spectrum",
            "domain": dict(dom),
            "basis": {"set": "poly(16)"},
        }
        out[f"fig2-fj-{name}"] = {
            "experiment": "spectrum",
            "domain": dict(dom),
            "basis": {"set": "fj(10,5)"},
        }
    for name, dom in (("D1", d1), ("D2", d2)):
        out[f"fig3-transwidth-{name}"] = {
            "experiment": "spectrum",
            "domain": dict(dom),
            "basis": {"set": "poly(16)"},
            "sweep": {"n_list": [4, 6, 8, 10, 12, 14, 16]},
        }
    out["fig4-kappa"] = {
        "experiment": "conjecture",
        "conjecture": {"mode": "kappa", "dim": 3, "kappa": 1.0, "m_list": [10, 20, 30]},
    }
    out["fig5-omega"] = {
        "experiment": "conjecture",
        "conjecture": {"mode": "omega", "dim": 2, "shape": "quarterdisc", "n_list": [10, 20, 40]},
    }
    out["fig6-optics"] = {
        "experiment": "optics",
        "optics": {"n": 40},
    }
    return out


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ballslep",
        description="Spatiospectral concentration experiments on the unit ball",
    )
    parser.add_argument("kind", choices=list(EXPERIMENTS) + ["presets"], help="experiment kind, or 'presets' to list them")
    parser.add_argument("--preset", help="named preset configuration")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--out", help="output directory (default: config output.dir)")
    parser.add_argument("--threads", type=int, default=1, help="worker cap for scan parallelism")
    parser.add_argument("--force", action="store_true", help="override the problem-size guardrails")
    parser.add_argument("--set", dest="overrides", action="append", metavar="KEY=VALUE",
                        help="config override with dotted keys, e.g. --set sweep.n_list=[4,8]")
    args = parser.parse_args(argv)

    if args.kind == "presets":
        for name, cfg in presets().items():
            print(f"{name}\t{cfg['experiment']}")
        return 0

    try:
        cfg = resolve_config(args.kind, args.preset, args.config, args.overrides)
        if args.threads < 1:
            raise ConfigError("--threads must be at least 1")
        bundle = run(cfg, out_dir=args.out, force=args.force, threads=args.threads)
    except (ConfigError, ParameterError, bs.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalQualityError as exc:
        print(f"numerical-quality abort: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {', '.join(p.name for p in bundle.csv_paths)} and summary.json to {bundle.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

import json

import jsonschema
import pytest

from ballslep import cli


def run_cli(args, tmp_path, out="out"):
    return cli.main([*args, "--out", str(tmp_path / out)])


class TestPresets:
    def test_listing_stable(self):
        names = list(cli.presets())
        assert names == list(cli.presets())
        assert names == [
            "fig1-weights",
            "fig2-poly-D1",
            "fig2-fj-D1",
            "fig2-poly-D2",
            "fig2-fj-D2",
            "fig3-transwidth-D1",
            "fig3-transwidth-D2",
            "fig4-kappa",
            "fig5-omega",
            "fig6-optics",
        ]

    def test_round_trip(self):
        for cfg in cli.presets().values():
            assert json.loads(json.dumps(cfg)) == cfg

    def test_presets_resolve_against_defaults(self):
        for name, pre in cli.presets().items():
            cfg = cli.resolve_config(pre["experiment"], name, None, None)
            assert cfg["experiment"] == pre["experiment"]


class TestConfigResolution:
    def test_override_precedence(self, tmp_path):
        cfg_file = tmp_path / "c.json"
        cfg_file.write_text(json.dumps({"optics": {"n": 12}}), encoding="utf-8")
        cfg = cli.resolve_config("optics", None, str(cfg_file), ["optics.n=6"])
        assert cfg["optics"]["n"] == 6

    def test_unknown_key_rejected(self):
        with pytest.raises(cli.ConfigError):
            cli.resolve_config("optics", None, None, ["nosuch.key=1"])

    def test_preset_kind_mismatch(self):
        with pytest.raises(cli.ConfigError):
            cli.resolve_config("optics", "fig2-poly-D1", None, None)

    def test_set_parses_json_values(self):
        cfg = cli.resolve_config("spectrum", None, None, ['basis.set="poly(4)"', "sweep.n_list=[2,4]"])
        assert cfg["basis"]["set"] == "poly(4)"
        assert cfg["sweep"]["n_list"] == [2, 4]

    def test_index_set_spec_errors(self):
        with pytest.raises(cli.ConfigError):
            cli.parse_set("poly[4]", 3)
        with pytest.raises(cli.ConfigError):
            cli.parse_set("noll(10)", 3)
        with pytest.raises(cli.ConfigError):
            cli.parse_ell("quadratic:1")


class TestRuns:
    def test_spectrum_run_and_schema(self, tmp_path):
        rc = run_cli(["spectrum", "--preset", "fig2-poly-D1", "--set", 'basis.set="poly(5)"'], tmp_path)
        assert rc == 0
        out = tmp_path / "out"
        summary = json.loads((out / "summary.json").read_text())
        jsonschema.validate(summary, cli.load_schema())
        assert summary["experiment"] == "spectrum"
        assert summary["results"]["dim"] == 56
        lines = (out / "spectrum.csv").read_text().splitlines()
        assert lines[0] == "rank,eigenvalue"
        assert len(lines) == 57

    def test_determinism_across_threads(self, tmp_path):
        args = ["spectrum", "--preset", "fig2-poly-D1", "--set", 'basis.set="poly(5)"']
        assert run_cli(args, tmp_path, "a") == 0
        assert run_cli([*args, "--threads", "3"], tmp_path, "b") == 0
        csv_a = (tmp_path / "a" / "spectrum.csv").read_bytes()
        csv_b = (tmp_path / "b" / "spectrum.csv").read_bytes()
        assert csv_a == csv_b

    def test_transwidth_rows(self, tmp_path):
        rc = run_cli(
            ["spectrum", "--set", 'basis.set="poly(6)"', "--set", "sweep.n_list=[4,6]"],
            tmp_path,
        )
        assert rc == 0
        lines = (tmp_path / "out" / "transwidth.csv").read_text().splitlines()
        assert lines[0] == "n,epsilon,count,relative"
        assert len(lines) == 1 + 2 * 3  # two bandlimits, three epsilon values

    def test_verify_exit_zero(self, tmp_path):
        assert run_cli(["verify", "--set", "verify.poly_n=5"], tmp_path) == 0

    def test_quality_abort_exit_three(self, tmp_path):
        rc = run_cli(
            ["spectrum", "--preset", "fig2-poly-D1", "--set", 'basis.set="poly(8)"',
             "--set", "numeric.radial_order=3"],
            tmp_path,
        )
        assert rc == 3

    def test_guardrail_and_force(self, tmp_path):
        rc = run_cli(["spectrum", "--set", 'basis.set="poly(25)"'], tmp_path)
        assert rc == 2

    def test_validation_exit_two(self, tmp_path):
        args = ["spectrum", "--set", 'domain.kind="shell"', "--set", "domain.r1=0.9", "--set", "domain.r2=0.7"]
        assert run_cli(args, tmp_path) == 2
        assert run_cli(["spectrum", "--set", "nosuch=1"], tmp_path) == 2

    def test_writes_stay_in_outdir(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert cli.main(["optics", "--set", "optics.n=6", "--out", str(tmp_path / "only")]) == 0
        entries = sorted(p.name for p in tmp_path.iterdir())
        assert entries == ["only"]

    def test_fig1_and_fig4_outputs(self, tmp_path):
        assert run_cli(["kernel-scan", "--preset", "fig1-weights"], tmp_path, "w") == 0
        header = (tmp_path / "w" / "weights.csv").read_text().splitlines()[0]
        assert header == "r,w0,w0_tilde"
        assert run_cli(
            ["conjecture", "--preset", "fig4-kappa", "--set", "conjecture.m_list=[4,8]",
             "--set", "conjecture.radii=[0.3,0.6]"],
            tmp_path,
            "k",
        ) == 0
        lines = (tmp_path / "k" / "kappa_scan.csv").read_text().splitlines()
        assert lines[0] == "m,r,value,reference"
        assert len(lines) == 1 + 2 * 2

    def test_presets_command(self, capsys):
        assert cli.main(["presets"]) == 0
        out = capsys.readouterr().out
        assert "fig6-optics\toptics" in out

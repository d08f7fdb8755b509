import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

from fredkinsim import ConfigError, PRESETS, check_approx, load_config, run
from fredkinsim.cli import EXIT_CONFIG, EXIT_OK, main
from fredkinsim.config import parse_overrides


def _cheap_fig2(out_dir):
    return load_config(preset="fig2", overrides={"grid": {"samples": "31"}},
                       out_dir=str(out_dir))


class TestConfig:
    def test_preset_fig2_params(self):
        cfg = load_config(preset="fig2")
        p = cfg.sweep[0].params
        assert (p.omega_a, p.g, p.Omega_b, p.Omega_c, p.delta_b, p.delta_c) == \
            (0.1, 0.01, 100.0, 100.0, 2.0, 1.0)

    def test_empty_config_lists_required(self):
        with pytest.raises(ConfigError, match="omega_a"):
            load_config("[params]\ng = 0.01\n")

    def test_singular_inline_params_rejected(self):
        text = ("[params]\nomega_a = 0.1\ng = 0.01\nOmega_b = 1\nOmega_c = 1\n"
                "delta_b = 1.0\ndelta_c = 1.0\n[outputs]\nnegativity = true\n")
        with pytest.raises(ConfigError, match="singular"):
            load_config(text)

    def test_unknown_key_fails_closed(self):
        with pytest.raises(ConfigError, match="unknown key"):
            load_config("[params]\nbogus = 1\n", preset="fig2")
        with pytest.raises(ConfigError, match="unknown config section"):
            load_config("[mystery]\nx = 1\n", preset="fig2")

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            load_config(preset="fig99")

    def test_override_parsing(self):
        ov = parse_overrides(["grid.samples=11", "variants.exact_formulas=verbatim"])
        assert ov == {"grid": {"samples": "11"}, "variants": {"exact_formulas": "verbatim"}}
        with pytest.raises(ConfigError):
            parse_overrides(["nodotshere=3"])

    def test_override_application(self):
        cfg = load_config(preset="fig2",
                          overrides={"grid": {"samples": "11", "t_max": "3.5"},
                                     "params": {"g": "0.02"},
                                     "variants": {"exact_formulas": "verbatim"}})
        assert cfg.samples == 11
        assert cfg.t_max == 3.5
        assert cfg.sweep[0].params.g == 0.02
        assert cfg.exact_variant == "verbatim"

    def test_bad_values_rejected(self):
        with pytest.raises(ConfigError, match="boolean"):
            load_config("[outputs]\nnegativity = maybe\n", preset="fig2")
        with pytest.raises(ConfigError, match="integer"):
            load_config("[grid]\nsamples = 2.5\n", preset="fig2")
        with pytest.raises(ConfigError, match="must be one of"):
            load_config("[variants]\nexact_formulas = guess\n", preset="fig2")
        with pytest.raises(ConfigError, match="samples"):
            load_config(preset="fig2", overrides={"grid": {"samples": "1"}})

    def test_preset_registry(self):
        assert len(PRESETS) >= 8
        assert PRESETS["fig4"].sweep[0].params.Omega_b == 200.0
        assert PRESETS["fig7"].sweep[0].params.g == 0.02
        labels = [pt.label for pt in PRESETS["fig6"].sweep]
        assert len(labels) == 9 and len(set(labels)) == 9


class TestRunner:
    def test_run_negativity(self, tmp_path):
        cfg = _cheap_fig2(tmp_path)
        manifest = run(cfg)
        assert manifest.status == "complete"
        csv = tmp_path / "negativity.csv"
        lines = csv.read_text().splitlines()
        assert lines[0] == "t,N_plus,N_minus"
        assert len(lines) == 32
        # full double precision round-trips
        val = float(lines[5].split(",")[1])
        assert f"{val:.17g}" == lines[5].split(",")[1]

    def test_manifest_consistency(self, tmp_path):
        cfg = _cheap_fig2(tmp_path)
        manifest = run(cfg)
        data = json.loads((tmp_path / "manifest.json").read_text())
        assert data["schema_version"] == 1
        assert data["status"] == "complete"
        entry = data["outputs"][0]
        digest = hashlib.sha256((tmp_path / entry["path"]).read_bytes()).hexdigest()
        assert digest == entry["sha256"]
        fresh = check_approx(cfg.sweep[0].params)
        rec = data["approximation_check"]["base"]
        assert rec["r_b"] == fresh.r_b and rec["r_c"] == fresh.r_c
        assert rec["satisfied"] == fresh.satisfied

    def test_rerun_byte_identical(self, tmp_path):
        run(_cheap_fig2(tmp_path / "a"))
        run(_cheap_fig2(tmp_path / "b"))
        b1 = (tmp_path / "a" / "negativity.csv").read_bytes()
        b2 = (tmp_path / "b" / "negativity.csv").read_bytes()
        assert b1 == b2

    def test_probabilities_and_fidelities(self, tmp_path):
        cfg = load_config(preset="fig4",
                          overrides={"grid": {"samples": "21"}}, out_dir=str(tmp_path))
        run(cfg)
        rows = (tmp_path / "probabilities.csv").read_text().splitlines()
        assert rows[0] == "t,P_plus_exact,P_minus_exact,P_plus_approx,P_minus_approx"
        first = [float(x) for x in rows[1].split(",")]
        assert first[1] == 1.0 and first[2] == 0.0

        cfg5 = load_config(preset="fig5a",
                           overrides={"grid": {"samples": "15"}}, out_dir=str(tmp_path))
        run(cfg5)
        head = (tmp_path / "fidelity.csv").read_text().splitlines()[0]
        assert head.split(",")[:4] == ["t", "F_db1.5", "Fp_db1.5", "Fm_db1.5"]

    def test_wigner_files(self, tmp_path):
        cfg = load_config(preset="fig3",
                          overrides={"wigner": {"grid_points": "7", "line_points": "5",
                                                "times": "1.85"}},
                          out_dir=str(tmp_path))
        manifest = run(cfg)
        names = sorted(e["path"] for e in manifest.outputs)
        assert "wigner_plane_re_re_plus_t1.85.csv" in names
        assert "wigner_line_im_diag_minus_t1.85.csv" in names
        assert len(names) == 8
        text = (tmp_path / "wigner_plane_re_re_plus_t1.85.csv").read_text().splitlines()
        assert text[0].startswith("# plane=")
        assert "axis1,axis2,W" in text

    def test_open_run_small(self, tmp_path):
        cfg = load_config(
            preset="fig6", out_dir=str(tmp_path),
            overrides={"dims": {"dim_b": "8", "dim_c": "8"},
                       "grid": {"t_max": "0.6", "samples": "7"},
                       "integrator": {"dt": "0.002"}})
        from dataclasses import replace

        cfg = replace(cfg, sweep=cfg.sweep[:2])
        manifest = run(cfg)
        names = [e["path"] for e in manifest.outputs]
        assert names == ["open_ka0.01.csv", "open_ka0.05.csv"]
        rows = (tmp_path / "open_ka0.01.csv").read_text().splitlines()
        assert rows[0] == "t,f,f_plus,f_minus,P_plus,P_minus,N_plus,N_minus,trace_dev,min_eig"
        first = [float(x) for x in rows[1].split(",")]
        assert first[1] == pytest.approx(1.0, abs=1e-10)  # f(0) = 1
        assert np.isnan(first[3])                         # f_minus(0) undefined
        assert first[4] == pytest.approx(1.0, abs=1e-12)  # P_plus(0) = 1

    def test_transient_open_run(self, tmp_path):
        cfg = load_config(
            preset="fig6", out_dir=str(tmp_path),
            overrides={"dims": {"dim_b": "6", "dim_c": "6"},
                       "grid": {"t_max": "0.3", "samples": "4"},
                       "integrator": {"dt": "0.002"},
                       "variants": {"displacement": "transient"}})
        from dataclasses import replace

        cfg = replace(cfg, sweep=cfg.sweep[:1])
        manifest = run(cfg)
        assert manifest.status == "complete"


class TestCli:
    def test_run_and_exit_codes(self, tmp_path, capsys):
        rc = main(["run", "--preset", "fig2", "--out-dir", str(tmp_path),
                   "--override", "grid.samples=11"])
        assert rc == EXIT_OK
        assert (tmp_path / "negativity.csv").exists()

        assert main(["run", "--preset", "nope"]) == EXIT_CONFIG
        assert main(["run", "--override", "grid.samples=11"]) == EXIT_CONFIG
        capsys.readouterr()

    def test_presets_listing(self, capsys):
        assert main(["presets"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "fig4" in out and "Omega_b=200" in out
        assert "fig7" in out and "g=0.02" in out
        assert sum(1 for line in out.splitlines() if line.startswith("fig")) >= 8

    def test_check_command(self, capsys):
        assert main(["check", "--preset", "fig2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "r_b=50" in out and "satisfied" in out

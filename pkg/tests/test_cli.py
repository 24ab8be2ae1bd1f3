import csv
import json
from math import pi
from pathlib import Path

import numpy as np
import pytest

from momentum_interferometry.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, main
from momentum_interferometry.notch import q0_exact_reference
from momentum_interferometry.scenarios import (
    ConfigError,
    ScenarioConfig,
    expand_series,
    load_config,
    parse_phase,
    parse_sweep,
)

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_yaml(tmp_path, text, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_every_figure_has_a_config():
    names = {p.stem for p in CONFIGS.glob("*.yaml")}
    for fig in ("2a", "2b", "2c", "2d", "3a", "3b", "3c", "4a", "4b", "4c", "5",
                "6a", "6b", "6c", "6d", "7"):
        assert f"fig{fig}" in names
    for p in CONFIGS.glob("fig*.yaml"):
        expand_series(load_config(p))


def test_density_reference_zero_at_pi(tmp_path, capsys):
    cfg = write_yaml(tmp_path, "regime: reference\nphi: [0.8pi, pi]\nq: {min: -2, max: 2, count: 41}\n")
    assert main(["density", "--config", cfg, "--out", str(tmp_path)]) == EXIT_OK
    header, rows = read_csv(tmp_path / "cfg.csv")
    assert header[0] == "q [dimensionless]"
    assert all("[dimensionless]" in h for h in header)
    centre = rows[20]
    assert float(centre[0]) == 0.0
    assert float(centre[2]) < 1e-30
    assert (tmp_path / "cfg_plot.py").exists()
    assert "cfg.csv" in capsys.readouterr().out


def test_no_plot_flag(tmp_path):
    assert main(["density", "--regime", "reference", "--phi", "pi", "--out", str(tmp_path),
                 "--no-plot"]) == EXIT_OK
    assert (tmp_path / "reference.csv").exists()
    assert not list(tmp_path.glob("*_plot.py"))


def test_sweep_matches_zero_condition(tmp_path):
    assert main(["sweep", "--regime", "reference", "--sweep", "0.6pi:1.4pi:5",
                 "--out", str(tmp_path)]) == EXIT_OK
    header, rows = read_csv(tmp_path / "reference.csv")
    assert header[-1] == "status"
    assert header[0] == "phi [rad]"
    i_q0 = header.index("q0 [dimensionless]")
    for r in rows:
        assert r[-1] == "ok"
        assert abs(float(r[i_q0]) - q0_exact_reference(float(r[0]))) < 1e-6


def test_sweep_series_and_ordering(tmp_path):
    cfg = write_yaml(tmp_path, """\
regime: reference
phi: {start: 0.8pi, stop: 1.2pi, count: 3}
series:
  - label: ref
  - label: shifted
    regime: shifted
    y0: 0.3
""")
    assert main(["sweep", "--config", cfg, "--out", str(tmp_path), "--jobs", "2"]) == EXIT_OK
    h, ref = read_csv(tmp_path / "cfg_ref.csv")
    _, sh = read_csv(tmp_path / "cfg_shifted.csv")
    iv = h.index("visibility [1]")
    phis = [float(r[0]) for r in ref]
    assert phis == sorted(phis)
    for a, b in zip(ref, sh):
        assert float(b[iv]) <= float(a[iv]) + 1e-12


def test_unresolved_rows_are_flagged_not_dropped(tmp_path):
    assert main(["sweep", "--regime", "reference", "--sweep", "0:pi:3",
                 "--out", str(tmp_path), "--no-plot"]) == EXIT_OK
    header, rows = read_csv(tmp_path / "reference.csv")
    assert len(rows) == 3
    assert rows[0][-1] != "ok"
    assert rows[0][1] == ""
    assert rows[-1][-1] == "ok"


def test_output_is_deterministic(tmp_path):
    args = ["sweep", "--regime", "shifted", "--sweep", "0.9pi:1.1pi:3", "--no-plot"]
    cfg = write_yaml(tmp_path, "regime: shifted\ny0: 0.3\n")
    a, b = tmp_path / "a", tmp_path / "b"
    assert main([*args, "--config", cfg, "--out", str(a)]) == EXIT_OK
    assert main([*args, "--config", cfg, "--out", str(b), "--jobs", "3"]) == EXIT_OK
    assert (a / "cfg.csv").read_bytes() == (b / "cfg.csv").read_bytes()


def test_resolvance_json(tmp_path, capsys):
    code = main(["resolvance", "--config", str(CONFIGS / "resolvance.yaml"), "--out", str(tmp_path)])
    assert code == EXIT_OK
    report = json.loads((tmp_path / "resolvance.json").read_text())
    assert abs(report["resolvance [1]"] - 239) <= 2
    assert report["displacement [m]"] == pytest.approx(0.2 * report["notch_velocity [m/s]"], rel=1e-10)
    assert json.loads(capsys.readouterr().out) == report


def test_resolvance_from_laser_block(tmp_path, capsys):
    cfg = write_yaml(tmp_path, """\
lab:
  omega: 12566.370614359172
  t_flight: 0.2
  delta_s: 5.0e-6
  laser: {rabi: 2.0e6, detuning: -1.0e9, t_pulse: 3.1415926535897932e-3}
""")
    assert main(["resolvance", "--config", cfg]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["phi [rad]"] == pytest.approx(pi, rel=1e-11)
    assert abs(report["notch_velocity [m/s]"]) < 1e-12


@pytest.mark.parametrize("text, field", [
    ("phi: pi\n", "regime"),
    ("regime: reference\n", "phi"),
    ("regime: reference\nphi: pi\ng: 20\n", "g"),
    ("regime: shifted\nphi: pi\n", "y0"),
    ("regime: reference\nphi: {start: 0, stop: pi, count: 1}\n", "phi.count"),
    ("regime: manybody_tg\nphi: pi\nN: 30\n", "N"),
    ("regime: gpe\nphi: pi\ng: twenty\n", "g"),
    ("regime: thomas_fermi\nphi: pi\n", "g"),
    ("regime: reference\nphi: banana\n", "phi"),
    ("- just\n- a list\n", "config"),
])
def test_config_errors_name_the_field(tmp_path, capsys, text, field):
    cfg = write_yaml(tmp_path, text)
    assert main(["density", "--config", cfg, "--out", str(tmp_path)]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert err.startswith(f"config error: {field}")


def test_resolvance_without_lab_block(tmp_path):
    cfg = write_yaml(tmp_path, "phi: pi\n")
    assert main(["resolvance", "--config", cfg]) == EXIT_CONFIG
    cfg = write_yaml(tmp_path, "lab: {omega: 1.0, t_flight: 0.1, delta_s: 1e-6}\n")
    assert main(["resolvance", "--config", cfg]) == EXIT_CONFIG


def test_missing_file_and_bad_sweep(tmp_path):
    assert main(["density", "--config", str(tmp_path / "nope.yaml")]) == EXIT_CONFIG
    assert main(["sweep", "--regime", "reference", "--sweep", "1:2"]) == EXIT_CONFIG
    assert main(["density"]) == EXIT_CONFIG


def test_numerical_failure_exit_code(tmp_path, capsys):
    cfg = write_yaml(tmp_path, "regime: gpe\ng: 20\nphi: pi\ngrid: {half_width: 6, n_points: 256}\n")
    assert main(["density", "--config", cfg, "--out", str(tmp_path)]) == EXIT_NUMERICAL
    assert "GridTooNarrow" in capsys.readouterr().err


def test_selftest_subset(tmp_path):
    assert main(["selftest", "--only", "1,14", "--out", str(tmp_path)]) == EXIT_OK
    header, rows = read_csv(tmp_path / "selftest.csv")
    assert [r[0] for r in rows] == ["1", "14"]
    assert all(r[-1] == "pass" for r in rows)
    assert main(["selftest", "--only", "x", "--out", str(tmp_path)]) == EXIT_CONFIG


def test_phase_parsing():
    assert parse_phase("pi") == pi
    assert parse_phase("1.2pi") == pytest.approx(1.2 * pi)
    assert parse_phase("-0.5*pi") == pytest.approx(-0.5 * pi)
    assert parse_phase(2) == 2.0
    assert parse_phase("0.25") == 0.25
    with pytest.raises(ConfigError):
        parse_phase(True)
    assert parse_sweep("0.5pi:1.5pi:41") == {"start": "0.5pi", "stop": "1.5pi", "count": 41}
    with pytest.raises(ConfigError):
        parse_sweep("0:1:x")


def test_scenario_config_sweep_values():
    sc = ScenarioConfig.from_mapping({"regime": "reference",
                                      "phi": {"start": "0.5pi", "stop": "1.5pi", "count": 5}})
    assert sc.is_sweep
    assert np.allclose(sc.phis, np.linspace(0.5 * pi, 1.5 * pi, 5))

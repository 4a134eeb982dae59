import json

import pytest

from eacpsim.cli import main

BASE_CONFIG = {
    "n": 30,
    "e0": 0.01,
    "max_rounds": 600,
    "m_frac": 0.1,
    "alpha": 5.0,
    "seed": 0,
}


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(BASE_CONFIG))
    return path


def test_run_writes_csv_and_summary(tmp_path, config_file, capsys):
    out = tmp_path / "out"
    code = main(["run", "--config", str(config_file), "--protocol", "eacp",
                 "--seed", "3", "--out-dir", str(out)])
    assert code == 0
    assert (out / "rounds.csv").exists()
    doc = json.loads((out / "summary.json").read_text())
    assert doc["config"]["protocol"] == "eacp"
    assert doc["config"]["seed"] == 3
    assert doc["fnd"] <= doc["hnd"] <= doc["lnd"]
    assert "fnd=" in capsys.readouterr().out


def test_run_missing_config_is_io_error(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.json")]) == 2


def test_run_unknown_key_is_config_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"nodes": 10}))
    assert main(["run", "--config", str(path)]) == 1


def test_run_malformed_json_is_config_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["run", "--config", str(path)]) == 1


def test_bad_flag_is_config_error(config_file, capsys):
    assert main(["run", "--config", str(config_file), "--protocol", "bogus"]) == 1
    assert "error" in capsys.readouterr().err


def test_missing_subcommand_is_config_error():
    assert main([]) == 1


def test_compare_emits_runs_aggregates_and_plots(tmp_path, config_file, capsys):
    out = tmp_path / "cmp"
    code = main(["compare", "--config", str(config_file),
                 "--protocols", "eacp,sep", "--seeds", "2",
                 "--out-dir", str(out)])
    assert code == 0
    for proto in ("eacp", "sep"):
        for seed in (0, 1):
            run_dir = out / proto / f"seed-{seed:04d}"
            assert (run_dir / "rounds.csv").exists()
            assert (run_dir / "summary.json").exists()
    agg = json.loads((out / "aggregate.json").read_text())
    assert set(agg) == {"eacp", "sep"}
    assert agg["eacp"]["n_runs"] == 2
    assert (out / "plots" / "alive_nodes.svg").exists()
    assert "over 2 seeds" in capsys.readouterr().out


def test_compare_rejects_unknown_protocol(config_file):
    assert main(["compare", "--config", str(config_file),
                 "--protocols", "eacp,bogus"]) == 1


def test_sweep_cartesian_rows(tmp_path, config_file):
    out = tmp_path / "sweep"
    code = main(["sweep", "--config", str(config_file),
                 "--vary", "protocol=sep,eacp", "--vary", "m_frac=0.1,0.2",
                 "--seeds", "1", "--out-dir", str(out)])
    assert code == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert len(lines) == 5  # header + 2 x 2 points
    assert lines[0].startswith("protocol,m_frac,")


def test_sweep_rejects_bad_spec(config_file):
    assert main(["sweep", "--config", str(config_file), "--vary", "m_frac"]) == 1


def test_plot_from_exported_csv(tmp_path, config_file):
    run_out = tmp_path / "runa"
    assert main(["run", "--config", str(config_file), "--out-dir", str(run_out)]) == 0
    plot_out = tmp_path / "plots"
    code = main(["plot", "--in", str(run_out / "rounds.csv"),
                 "--out-dir", str(plot_out)])
    assert code == 0
    assert (plot_out / "alive_nodes.svg").exists()


def test_plot_missing_input_is_io_error(tmp_path):
    assert main(["plot", "--in", str(tmp_path / "missing.csv"),
                 "--out-dir", str(tmp_path)]) == 2

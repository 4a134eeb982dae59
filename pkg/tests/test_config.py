import json

import pytest

from eacpsim import ConfigError, RadioParams, SimConfig, load_config, resolved_dict
from eacpsim.config import config_from_dict


def test_radio_defaults():
    radio = RadioParams()
    assert radio.e_elec == 5e-9
    assert radio.eps_fs == 1e-11
    assert radio.eps_mp == 1.3e-15
    assert radio.e_da == 5e-9
    assert radio.d0 == 70.0
    assert radio.packet_bits == 4000


def test_sim_defaults():
    cfg = SimConfig()
    assert cfg.n == 100
    assert cfg.field_m == 100.0
    assert cfg.bs == (50.0, 50.0)
    assert cfg.e0 == 0.5
    assert cfg.p_opt == 0.1
    assert cfg.sleep_cap == 4
    assert cfg.sleep_enabled


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0},
        {"p_opt": 0.0},
        {"p_opt": 1.0},
        {"m_frac": 1.5},
        {"m_frac": -0.1},
        {"alpha": -1.0},
        {"bs": (150.0, 50.0)},
        {"protocol": "teen"},
        {"sleep_cap": -1},
        {"e0": -0.5},
        {"field_m": 0.0},
    ],
)
def test_invalid_config_rejected(kwargs):
    with pytest.raises(ConfigError):
        SimConfig(**kwargs)


@pytest.mark.parametrize("field", ["e_elec", "eps_fs", "eps_mp", "e_da", "d0", "packet_bits"])
def test_nonpositive_radio_rejected(field):
    with pytest.raises(ConfigError):
        RadioParams(**{field: 0})


def test_load_config_partial_takes_defaults(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"protocol": "sep", "seed": 7, "m_frac": 0.2}))
    cfg = load_config(path)
    assert cfg.protocol == "sep"
    assert cfg.seed == 7
    assert cfg.m_frac == 0.2
    assert cfg.n == 100
    assert cfg.radio.e_elec == 5e-9


def test_load_config_flat_radio_and_bs(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"e_elec": 5e-8, "d0": 87.7, "bs": [10, 20]}))
    cfg = load_config(path)
    assert cfg.radio.e_elec == 5e-8
    assert cfg.radio.d0 == 87.7
    assert cfg.bs == (10.0, 20.0)


def test_load_config_unknown_key(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"nodes": 100}))
    with pytest.raises(ConfigError, match="unknown config keys"):
        load_config(path)


def test_load_config_bad_json(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path)


def test_load_config_non_object(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config(path)


def test_resolved_dict_round_trips():
    cfg = SimConfig(protocol="leach", seed=3, m_frac=0.2, alpha=3.0)
    assert config_from_dict(resolved_dict(cfg)) == cfg

"""
Tests for configuration loading, overrides and validation.
"""

import json

import pytest
import yaml

from cutoff_lab.config import ConfigManager, LabConfig, parse_number, parse_number_list
from cutoff_lab.exceptions import ConfigurationError


@pytest.fixture(autouse=True)
def isolated_env(tmp_path, monkeypatch):
    """Run every test away from any .env file and CUTOFF_LAB_* variables."""
    monkeypatch.chdir(tmp_path)
    for key in ("SEED", "OUT_DIR", "L", "H", "ETA", "ZETA", "DEBUG", "VERBOSE"):
        monkeypatch.delenv(f"CUTOFF_LAB_{key}", raising=False)


def test_defaults_are_valid():
    manager = ConfigManager(load_env=False)
    config = manager.get_config()
    assert manager.validate_config() == []
    assert (config.L, config.h, config.seed) == (16, 1 / 256, 42)
    assert config.epsilon_list[0] == 0.25 and config.epsilon_list[-1] == 2.0**-7


def test_parse_number():
    assert parse_number(0.5) == 0.5
    assert parse_number("1/256") == 1 / 256
    assert parse_number("2^-3") == 0.125
    assert parse_number(" 0.1 ") == 0.1
    assert parse_number_list("1/16, 1/64,") == [1 / 16, 1 / 64]
    assert parse_number_list([1, "1/2"]) == [1.0, 0.5]
    with pytest.raises(ConfigurationError):
        parse_number("abc")
    with pytest.raises(ConfigurationError):
        parse_number("1/0")
    with pytest.raises(ConfigurationError):
        parse_number(True)


def test_load_yaml(tmp_path):
    path = tmp_path / "lab.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "L": 8,
                "h": "1/128",
                "epsilon_list": "1/4,1/8,1/16,1/32,1/64,1/128",
                "suites": ["certify", "h2"],
                "families": [{"kind": "rough-random", "amplitude": 0.1, "roughness": 2.0, "count": 4}],
                "sawtooth": {"eps_saw_list": ["1/16"], "delta": 0.2, "delta_prime": 0.05},
                "settings": {"gateaux_pairs": 3},
            }
        )
    )
    manager = ConfigManager(config_file=str(path), load_env=False)
    config = manager.get_config()
    assert config.h == 1 / 128
    assert len(config.epsilon_list) == 6
    assert config.families[0].count == 4
    assert config.sawtooth.eps_saw_list == [1 / 16]
    assert config.settings.gateaux_pairs == 3
    assert config.settings.null_samples == 10
    assert manager.validate_config() == []


def test_load_json(tmp_path):
    """JSON files are read by the same loader."""
    path = tmp_path / "lab.json"
    path.write_text(json.dumps({"seed": 7, "out_dir": "elsewhere"}))
    config = ConfigManager(config_file=str(path), load_env=False).get_config()
    assert config.seed == 7
    assert config.out_dir == "elsewhere"


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(ConfigurationError):
        ConfigManager(config_file=str(tmp_path / "absent.yaml"), load_env=False)

    path = tmp_path / "bad.yaml"
    path.write_text("seed: 1\nwindow: 3\n")
    with pytest.raises(ConfigurationError, match="window"):
        ConfigManager(config_file=str(path), load_env=False)

    path.write_text("- just\n- a list\n")
    with pytest.raises(ConfigurationError):
        ConfigManager(config_file=str(path), load_env=False)

    path.write_text("settings: {gateaux_pairs: 3, tau: 1}\n")
    with pytest.raises(ConfigurationError):
        ConfigManager(config_file=str(path), load_env=False)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CUTOFF_LAB_SEED", "99")
    monkeypatch.setenv("CUTOFF_LAB_H", "1/128")
    monkeypatch.setenv("CUTOFF_LAB_DEBUG", "true")
    config = ConfigManager(load_env=True).get_config()
    assert config.seed == 99
    assert config.h == 1 / 128
    assert config.debug is True

    monkeypatch.setenv("CUTOFF_LAB_L", "many")
    with pytest.raises(ConfigurationError):
        ConfigManager(load_env=True)


def test_update_from_args():
    manager = ConfigManager(load_env=False)
    manager.update_from_args(
        {
            "seed": 5,
            "L": "8",
            "h": "1/64",
            "eps_saw": "1/16,1/32",
            "delta_prime": "0.01",
            "samples": 12,
            "out": "runs",
            "verbose": True,
            "debug": False,
            "eta": None,
        }
    )
    config = manager.get_config()
    assert (config.seed, config.L, config.h) == (5, 8, 1 / 64)
    assert config.sawtooth.eps_saw_list == [1 / 16, 1 / 32]
    assert config.sawtooth.delta_prime == 0.01
    assert config.settings.uniform_bound_samples == 12
    assert config.out_dir == "runs"
    assert config.verbose is True and config.debug is False
    assert config.eta == 0.5

    with pytest.raises(ConfigurationError):
        manager.update_from_args({"L": "2.5"})


def test_half_length_must_be_integer(tmp_path):
    path = tmp_path / "lab.yaml"
    path.write_text("L: 2.5\n")
    with pytest.raises(ConfigurationError, match="L must be a positive integer"):
        ConfigManager(config_file=str(path), load_env=False)

    path.write_text("L: 12.0\n")
    assert ConfigManager(config_file=str(path), load_env=False).get_config().L == 12


def test_update_weight_range_and_suites():
    manager = ConfigManager(load_env=False)
    manager.update_from_args({"eta_max": "0.75", "suites": "certify, h2"})
    config = manager.get_config()
    assert config.eta_max == 0.75
    assert config.suites == ["certify", "h2"]
    assert manager.validate_config() == []

    manager.update_from_args({"suites": "certify,bogus"})
    assert any("bogus" in error for error in manager.validate_config())


def test_validation_errors():
    manager = ConfigManager(load_env=False)
    config = manager.get_config()
    config.zeta = 0.9
    config.h = 0.3
    config.epsilon_list = [0.25, 0.125]
    config.sawtooth.delta_prime = 0.5
    config.suites = ["certify", "h2", "everything"]
    errors = manager.validate_config()
    assert len(errors) == 5
    assert any("zeta" in error for error in errors)
    assert any("everything" in error for error in errors)


def test_save_and_reload(tmp_path):
    """A generated config loads back to the same settings."""
    path = tmp_path / "generated.yaml"
    manager = ConfigManager(load_env=False)
    manager.get_config().seed = 123
    manager.save_config(str(path))

    data = yaml.safe_load(path.read_text())
    assert "debug" not in data
    reloaded = ConfigManager(config_file=str(path), load_env=False).get_config()
    expected = manager.get_config()
    assert reloaded.seed == 123
    assert reloaded.families == expected.families
    assert reloaded.settings == expected.settings
    assert reloaded.sawtooth == expected.sawtooth
    assert isinstance(reloaded, LabConfig)

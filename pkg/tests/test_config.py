import pytest

from irsdf.config import CONFIG_ENV_VAR, ConfigError, ScenarioConfig, apply_overrides, resolve_config
from irsdf.units import watts_to_dbm


def test_paper_preset_values():
    cfg = resolve_config("paper")
    assert (cfg.src_irs_distance_m, cfg.vertical_offset_m) == (80.0, 10.0)
    assert (cfg.g_src_dbi, cfg.g_irs_dbi, cfg.g_dest_dbi) == (5.0, 5.0, 0.0)
    assert cfg.bandwidth_hz == 10e6
    assert watts_to_dbm(cfg.sigma2) == pytest.approx(-94.0, abs=1e-12)
    assert cfg.alpha == 1.0 and cfg.nu == 0.5
    assert (cfg.p_source_mw, cfg.p_dest_mw, cfg.p_relay_mw, cfg.p_elem_mw) == (100, 100, 100, 5)
    assert cfg.n_elements == (25, 50, 100, 150)


def test_file_then_flags_precedence(tmp_path, monkeypatch):
    path = tmp_path / "scenario.yaml"
    path.write_text("d1_m: 55\nnu: 0.8\nn_elements: [10, 20]\n")
    cfg = resolve_config("paper", path, {"nu": 0.9})
    assert cfg.d1_m == 55 and cfg.nu == 0.9 and cfg.n_elements == (10, 20)
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert resolve_config("paper").d1_m == 55


@pytest.mark.parametrize(
    "overrides, key",
    [
        ({"alpha": 1.5}, "alpha"),
        ({"nu": 0}, "nu"),
        ({"d1_m": -3}, "d1_m"),
        ({"n_elements": [10, -1]}, "n_elements[1]"),
        ({"p_dbm": "loud"}, "p_dbm"),
        ({"p_dbm": float("-inf")}, "p_dbm"),
        ({"frequency_ghz": 3}, "frequency_ghz"),
    ],
)
def test_errors_name_the_field(overrides, key):
    with pytest.raises(ConfigError, match=f"^{key.replace('[', '.').replace(']', '.')}"):
        apply_overrides(ScenarioConfig(), overrides)


def test_nested_file_rejected(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("geometry:\n  d1_m: 3\n")
    with pytest.raises(ConfigError, match="geometry"):
        resolve_config("paper", path)


def test_unknown_preset():
    with pytest.raises(ConfigError, match="preset"):
        resolve_config("lab")


def test_canonical_is_stable():
    assert ScenarioConfig().canonical() == resolve_config("paper").canonical()
    assert "\n" not in ScenarioConfig().canonical()

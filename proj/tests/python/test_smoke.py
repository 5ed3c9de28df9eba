import math
import pathlib

import pytest

import uavcpn

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def test_reference_config_loads():
    cfg = uavcpn.load_config((DATA / "reference.cfg").read_text())
    assert cfg.altitude == 200.0
    assert math.isinf(cfg.cn_dist_radius)
    assert uavcpn.validate(cfg) == []


def test_los_probability_at_zenith():
    p = uavcpn.los_probability(0.0, 200.0, 0.136, 11.95)
    assert p == pytest.approx(0.99970671392224986981, rel=1e-12)


def test_average_success_at_300m():
    cfg = uavcpn.ScenarioConfig()
    cfg.altitude = 300.0
    cfg.cn_dist_radius = 200.0
    result = uavcpn.average_success_probability(cfg)
    assert result.converged
    assert result.success_prob == pytest.approx(0.4665, abs=5e-4)


def test_small_simulation():
    cfg = uavcpn.ScenarioConfig()
    est = uavcpn.estimate_success(cfg, n_trials=50, gus_per_trial=20, seed=3)
    again = uavcpn.estimate_success(cfg, n_trials=50, gus_per_trial=20, seed=3, jobs=2)
    assert 0.0 <= est.mean <= 1.0
    assert est.mean == again.mean


def test_config_error_is_value_error():
    with pytest.raises(ValueError, match="t_max_ms"):
        uavcpn.load_config("t_max_ms = fifty-five\n")

import pytest

from skillmosaic.config.planner_config import (OracleConfig, PlannerConfig,
                                               WorldConfig,
                                               default_planner_config_path)
from skillmosaic.exceptions import ConfigGroupValidationError


def test_defaults_are_valid():
    config = PlannerConfig()
    config.raise_if_invalid()
    assert config.budget.max_iterations.value == 10000
    assert config.oracle.p_direct_goal.value == pytest.approx(0.2)
    assert config.cem.elite_fraction.value == pytest.approx(0.25)
    assert WorldConfig().max_push_distance.value == pytest.approx(0.25)


def test_packaged_yaml_matches_defaults():
    assert default_planner_config_path().is_file()
    from_yaml = PlannerConfig.create_from_yaml()
    assert from_yaml.to_dict(values_only=True) == PlannerConfig().to_dict(
        values_only=True)


def test_mode_cutoffs_must_not_decrease():
    oracle = OracleConfig(p_s=0.6, p_g=0.4)
    assert not oracle.validate().passed
    with pytest.raises(ConfigGroupValidationError):
        oracle.raise_if_invalid()
    with pytest.raises(ConfigGroupValidationError):
        PlannerConfig.create({'oracle': {'p_lb': 0.95}})


def test_item_ranges_are_enforced():
    with pytest.raises(ConfigGroupValidationError):
        PlannerConfig.create({'cem': {'elite_fraction': 0.0}})
    with pytest.raises(ConfigGroupValidationError):
        PlannerConfig.create({'cem': {'elite_fraction': 1.0}})
    with pytest.raises(ConfigGroupValidationError):
        PlannerConfig.create({'budget': {'max_iterations': -1}})


def test_unknown_keys_are_rejected():
    with pytest.raises(ConfigGroupValidationError):
        PlannerConfig.create({'oracle': {'beta': 1.0}})
    with pytest.raises(ConfigGroupValidationError):
        PlannerConfig.create({'budgets': {}})


def test_integers_are_accepted_for_float_items():
    config = PlannerConfig.create({'budget': {'time_limit': 5}})
    assert config.budget.time_limit.value == 5.0
    assert isinstance(config.budget.time_limit.value, float)


def test_config_hash():
    assert PlannerConfig().config_hash() == PlannerConfig().config_hash()
    changed = PlannerConfig.create({'oracle': {'alpha': 1.0}})
    assert changed.config_hash() != PlannerConfig().config_hash()
    assert len(changed.config_hash()) == 12


def test_yaml_round_trip(tmp_path):
    config = PlannerConfig.create({'roadmap': {'size': 12, 'k': 4}})
    path = tmp_path / 'planner.yaml'
    config.to_yaml(str(path))
    loaded = PlannerConfig.create_from_yaml(path)
    assert loaded.roadmap.size.value == 12
    assert loaded.config_hash() == config.config_hash()

import pytest

from skillmosaic.exceptions import InputError, UndefinedCostError
from skillmosaic.skills.core import SkillOutcome, outcome_cost
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.model import Rollout
from skillmosaic.world.state import Trajectory, WorldState


def _rollout(length: float, valid: bool = True) -> Rollout:
    a = WorldState(Pose2(0, 0), {'cup': Pose2(0, 0)})
    b = WorldState(Pose2(length, 0), {'cup': Pose2(0, 0)})
    return Rollout(Trajectory([a, b]), valid)


def test_cost_of_valid_batch_is_mean_length():
    outcome = SkillOutcome(tuple(_rollout(1.0) for _ in range(4)))
    assert outcome_cost(outcome, 1.0) == pytest.approx(1.0)


def test_cost_inflated_by_invalid_fraction():
    rollouts = [_rollout(1.0)] * 7 + [_rollout(5.0, False)] * 3
    outcome = SkillOutcome(tuple(rollouts))
    assert outcome.invalid_fraction == pytest.approx(0.3)
    assert outcome_cost(outcome, 1.0) == pytest.approx(1.3)
    assert outcome_cost(outcome, 0.0) == pytest.approx(1.0)


def test_cost_without_valid_rollout_is_undefined():
    outcome = SkillOutcome((_rollout(1.0, False), ))
    assert not outcome.any_valid
    with pytest.raises(UndefinedCostError):
        outcome_cost(outcome, 1.0)
    with pytest.raises(UndefinedCostError):
        outcome.representative


def test_selects_shortest_valid_rollout():
    outcome = SkillOutcome(
        (_rollout(0.1, False), _rollout(0.5), _rollout(0.3), _rollout(0.3)))
    assert outcome.selected == 2


def test_empty_batch_is_rejected():
    with pytest.raises(InputError):
        SkillOutcome(())

"""Planar tabletop world model."""
from skillmosaic.world.geometry import (Pose2, interpolate_screw, se2_exp,
                                        se2_log, wrap_angle)
from skillmosaic.world.model import (Rollout, goal_satisfied,
                                     gripper_violations, is_valid_state,
                                     simulate_push, state_violations)
from skillmosaic.world.objects import MassClass, ObjectSpec, ShapeKind
from skillmosaic.world.scenario import (GoalSpec, Rect, Scenario,
                                        load_scenario, save_scenario)
from skillmosaic.world.state import Trajectory, WorldState, state_distance

__all__ = [
    'GoalSpec', 'MassClass', 'ObjectSpec', 'Pose2', 'Rect', 'Rollout',
    'Scenario', 'ShapeKind', 'Trajectory', 'WorldState', 'goal_satisfied',
    'gripper_violations', 'interpolate_screw', 'is_valid_state', 'load_scenario', 'save_scenario',
    'se2_exp', 'se2_log', 'simulate_push', 'state_distance',
    'state_violations', 'wrap_angle'
]

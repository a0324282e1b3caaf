"""The mosaic graph, its oracle and the planner."""
from skillmosaic.mosaic.graph import (MosaicEdge, MosaicGraph, MosaicNode,
                                      NodeKind, PairPenaltyTable)
from skillmosaic.mosaic.oracle import Oracle, SelectionMode, SkillType
from skillmosaic.mosaic.plan import (FailureReport, Plan, PlanStep, StepMode,
                                     validate_plan)
from skillmosaic.mosaic.planner import MosaicPlanner, plan

__all__ = [
    'FailureReport', 'MosaicEdge', 'MosaicGraph', 'MosaicNode',
    'MosaicPlanner', 'NodeKind', 'Oracle', 'PairPenaltyTable', 'Plan',
    'PlanStep', 'SelectionMode', 'SkillType', 'StepMode', 'plan',
    'validate_plan'
]

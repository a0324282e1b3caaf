"""Comparison planners sharing the mosaic planner's skills and world model."""
from skillmosaic.baselines.base import BaselinePlanner
from skillmosaic.baselines.cem import CemPlanner, select_elites
from skillmosaic.baselines.options import SkillsAsOptionsPlanner
from skillmosaic.baselines.roadmap import (IncrementalRoadmapPlanner,
                                           RoadmapPlanner)

__all__ = [
    'BaselinePlanner', 'CemPlanner', 'IncrementalRoadmapPlanner',
    'RoadmapPlanner', 'SkillsAsOptionsPlanner', 'select_elites'
]

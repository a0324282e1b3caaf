"""Parametric skills over the planar world model."""
from skillmosaic.skills.core import (SKILL_IDS, Condition, ConditionKind,
                                     Skill, SkillId, SkillName, SkillOutcome,
                                     SkillParams, outcome_cost)
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.skills.pick import PickSkill, grasp_score, select_grasp
from skillmosaic.skills.push import PushSkill
from skillmosaic.skills.rearrange import RearrangeSkill
from skillmosaic.skills.transport import TransportSkill

__all__ = [
    'Condition', 'ConditionKind', 'PickSkill', 'PushSkill', 'RearrangeSkill',
    'SKILL_IDS', 'Skill', 'SkillId', 'SkillLibrary', 'SkillName',
    'SkillOutcome', 'SkillParams', 'TransportSkill', 'grasp_score',
    'outcome_cost', 'select_grasp'
]

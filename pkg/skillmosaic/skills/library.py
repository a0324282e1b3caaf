"""The skill library: batch invocation of generators and connectors."""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from logging import getLogger
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from skillmosaic.config.planner_config import SkillsConfig
from skillmosaic.exceptions import CapabilityError, InputError, PlannerError
from skillmosaic.skills.core import (Condition, Skill, SkillName,
                                     SkillOutcome, SkillParams)
from skillmosaic.skills.pick import PickSkill
from skillmosaic.skills.push import PushSkill
from skillmosaic.skills.rearrange import RearrangeSkill
from skillmosaic.skills.transport import TransportSkill
from skillmosaic.world.model import Rollout
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)

SKILL_CLASSES = {
    SkillName.PICK: PickSkill,
    SkillName.PUSH: PushSkill,
    SkillName.REARRANGE: RearrangeSkill,
    SkillName.TRANSPORT: TransportSkill,
}


class SkillLibrary:
    """The skill set Σ available to a planner.

    Every invocation runs ``K`` rollouts with seeds ``params.seed + i``,
    concurrently when ``config.workers > 1``, and reduces them in index
    order. :attr:`rollouts` counts every rollout executed through the
    library.

    :param skills: The skills, at most one per name.
    :param config: Skill tunables shared by the library.
    """

    def __init__(self,
                 skills: Iterable[Skill],
                 config: Optional[SkillsConfig] = None):
        self.config = config if config is not None else SkillsConfig()
        self._skills: Dict[SkillName, Skill] = {}
        for skill in skills:
            if skill.name in self._skills:
                msg = f'Skill {skill.name} registered twice.'
                _LOGGER.error(msg)
                raise PlannerError(msg)
            self._skills[skill.name] = skill
        if not self._skills:
            msg = 'A skill library needs at least one skill.'
            try:
                raise PlannerError(msg)
            except PlannerError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        self._lock = threading.Lock()
        self._rollouts = 0

    @classmethod
    def default(cls,
                config: Optional[SkillsConfig] = None,
                names: Optional[Sequence[str]] = None) -> SkillLibrary:
        """The four built-in skills, or the subset named in ``names``."""
        config = config if config is not None else SkillsConfig()
        selected = sorted(SkillName(n)
                          for n in names) if names else sorted(SkillName)
        return cls([SKILL_CLASSES[n](config) for n in selected], config)

    def __repr__(self) -> str:
        return f'SkillLibrary({[str(n) for n in self.names]})'

    def __len__(self) -> int:
        return len(self._skills)

    @property
    def names(self) -> List[SkillName]:
        return sorted(self._skills)

    @property
    def rollouts(self) -> int:
        return self._rollouts

    @property
    def batch_size(self) -> int:
        return self.config.batch_size.value

    def get(self, name: SkillName) -> Skill:
        try:
            return self._skills[SkillName(name)]
        except (KeyError, ValueError):
            msg = f"Skill '{name}' is not part of the library."
            _LOGGER.error(msg)
            raise InputError(msg) from None

    def generators(self) -> List[Skill]:
        return [
            self._skills[n] for n in self.names
            if self._skills[n].skill_id.can_generate
        ]

    def connectors(self) -> List[Skill]:
        return [
            self._skills[n] for n in self.names
            if self._skills[n].skill_id.can_connect
        ]

    def _run(self, scenario: Scenario, params: SkillParams, k: Optional[int],
             rollout: Callable[[int], Rollout]) -> SkillOutcome:
        k = self.batch_size if k is None else k
        if k < 1:
            msg = f'Batch size {k} must be at least 1.'
            _LOGGER.error(msg)
            raise InputError(msg)
        seeds = [params.rollout_seed(i) for i in range(k)]
        workers = self.config.workers.value
        if workers > 1 and k > 1:
            with ThreadPoolExecutor(max_workers=min(workers, k)) as pool:
                rollouts = list(pool.map(rollout, seeds))
        else:
            rollouts = [rollout(seed) for seed in seeds]
        with self._lock:
            self._rollouts += k
        return SkillOutcome(tuple(rollouts), scenario.params.w_theta)

    def invoke_generator(self,
                         skill: Skill,
                         scenario: Scenario,
                         params: SkillParams,
                         k: Optional[int] = None) -> SkillOutcome:
        """Roll out a generator from its self-proposed context.

        :raise: :class:`~skillmosaic.exceptions.CapabilityError` when the
            skill cannot generate.
        """
        if not skill.skill_id.can_generate:
            msg = f'{skill.name} cannot be used as a generator.'
            try:
                raise CapabilityError(msg)
            except CapabilityError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        return self._run(scenario, params, k,
                         lambda seed: skill.generate(scenario, params, seed))

    def invoke_connector(self,
                         skill: Skill,
                         scenario: Scenario,
                         from_cond: Condition,
                         to_cond: Condition,
                         params: SkillParams,
                         k: Optional[int] = None) -> SkillOutcome:
        """Roll out a connector from ``from_cond.state``; a rollout counts as
        valid only when its terminal state satisfies ``to_cond``.

        :raise: :class:`~skillmosaic.exceptions.CapabilityError` when the
            skill cannot connect; :class:`~skillmosaic.exceptions.InputError`
            when ``from_cond`` is not an equality condition.
        """
        if not skill.skill_id.can_connect:
            msg = f'{skill.name} cannot be used as a connector.'
            try:
                raise CapabilityError(msg)
            except CapabilityError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        if from_cond.is_goal:
            msg = 'The start of a connection must be an equality condition.'
            try:
                raise InputError(msg)
            except InputError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e

        def rollout(seed: int) -> Rollout:
            result = skill.connect(scenario, from_cond.state, to_cond, params,
                                   seed)
            if result.valid and not to_cond.matches(result.trajectory.terminal):
                return Rollout(result.trajectory, False,
                               'terminal state misses the target condition',
                               seed)
            return result

        return self._run(scenario, params, k, rollout)

    def invoke_from_state(self,
                          skill: Skill,
                          scenario: Scenario,
                          state: WorldState,
                          params: SkillParams,
                          k: Optional[int] = None) -> SkillOutcome:
        """Roll out a generator in its start-conditioned mode."""
        if not skill.skill_id.can_generate:
            msg = f'{skill.name} has no start-conditioned mode.'
            _LOGGER.error(msg)
            raise CapabilityError(msg)
        return self._run(
            scenario, params, k,
            lambda seed: skill.rollout_from(scenario, state, params, seed))

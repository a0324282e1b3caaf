import json

import pytest

from skillmosaic.bench.runner import PLANNERS, run_planner
from skillmosaic.bench.scenarios import make_scenario
from skillmosaic.bench.suite import run_suite
from skillmosaic.config.planner_config import PlannerConfig
from skillmosaic.mosaic.plan import Plan, validate_plan
from skillmosaic.skills import SkillLibrary, SkillName

SMALL = {
    'skills': {
        'batch_size': 2
    },
    'budget': {
        'max_iterations': 40
    },
    'cem': {
        'population': 4,
        'horizon': 2
    },
    'roadmap': {
        'size': 6
    },
    'options': {
        'max_successors': 3
    },
}


@pytest.mark.slow
def test_small_suite_is_reproducible(tmp_path):
    config = PlannerConfig.create(SMALL)
    kwargs = dict(families=['transport', 'movables'],
                  planners=list(PLANNERS),
                  seeds=[0, 1],
                  config=config,
                  clock='work',
                  verbose=False)
    records, summary = run_suite(out=tmp_path / 'a', workers=1, **kwargs)
    threaded, _ = run_suite(out=tmp_path / 'b', workers=3, **kwargs)
    assert len(records) == 2 * len(PLANNERS) * 2
    assert not any(r.error for r in records)
    assert all(r.iterations <= 40 for r in records)
    assert all((r.length is not None) == r.success for r in records)
    assert records == threaded
    for name in ('runs.csv', 'runs.json', 'summary.json'):
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' /
                                                        name).read_bytes()
    assert json.loads((tmp_path / 'a' / 'summary.json').read_text()) == summary


TRANSPORT_SEEDS = [0, 1, 2, 3]


def _budget(iterations: int) -> PlannerConfig:
    return PlannerConfig.create({'budget': {'max_iterations': iterations}})


def _pushes_before_first_pick(plan) -> bool:
    skills = plan.skills
    if SkillName.PICK not in skills:
        return True
    return SkillName.PUSH in skills[:skills.index(SkillName.PICK)]


@pytest.mark.slow
def test_mosaic_solves_transport_and_pushes_first():
    config = _budget(2000)
    for seed in TRANSPORT_SEEDS:
        scenario = make_scenario('transport', seed)
        result = run_planner('mosaic', scenario, config, seed, clock='work')
        assert isinstance(result, Plan), result.reason
        library = SkillLibrary.default(config.skills, scenario.skills)
        assert validate_plan(scenario, result, library)
        assert SkillName.PICK in result.skills
        assert _pushes_before_first_pick(result)


@pytest.mark.slow
def test_mosaic_success_grows_with_iteration_cap():
    scenarios = [make_scenario('transport', s) for s in TRANSPORT_SEEDS]
    solved = []
    for cap in (100, 500, 2000):
        config = _budget(cap)
        solved.append({
            seed
            for seed, scenario in zip(TRANSPORT_SEEDS, scenarios)
            if run_planner('mosaic', scenario, config, seed,
                           clock='work').success
        })
    assert solved[0] <= solved[1] <= solved[2]
    assert solved[2] == set(TRANSPORT_SEEDS)


@pytest.mark.slow
def test_mosaic_matches_or_beats_baselines_on_transport(tmp_path):
    records, _ = run_suite(['transport'], ['mosaic', 'options', 'cem'],
                           TRANSPORT_SEEDS,
                           tmp_path,
                           _budget(2000),
                           clock='work',
                           workers=1,
                           verbose=False)
    wins = {
        planner: sum(r.success for r in records if r.planner == planner)
        for planner in ('mosaic', 'options', 'cem')
    }
    assert wins['mosaic'] == len(TRANSPORT_SEEDS)
    assert wins['mosaic'] >= wins['options']
    assert wins['mosaic'] >= wins['cem']

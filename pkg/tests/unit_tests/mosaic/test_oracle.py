import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import binomtest, chisquare

from skillmosaic.config.planner_config import OracleConfig
from skillmosaic.exceptions import InputError, PreconditionError
from skillmosaic.mosaic.graph import MosaicGraph, NodeKind, PairPenaltyTable
from skillmosaic.mosaic.oracle import (GOAL_TARGET, Oracle, SelectionMode,
                                      SkillStats, SkillType,
                                      choose_conds_to_connect, choose_mode,
                                      choose_skill, choose_skill_type,
                                      selection_score, skill_type_threshold)
from skillmosaic.skills import SkillLibrary, SkillName
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.scenario import GoalSpec, Rect
from skillmosaic.world.state import Trajectory, WorldState


def _state(x: float) -> WorldState:
    return WorldState(Pose2(0.0, -0.5), {'cup': Pose2(x, 0.0)})


@pytest.fixture
def skills():
    library = SkillLibrary.default()
    return {name: library.get(name) for name in library.names}


def test_threshold_clamps_edge_ratio():
    assert skill_type_threshold(10, 0, 0.1, 0.9) == pytest.approx(0.1)
    assert skill_type_threshold(10, 50, 0.1, 0.9) == pytest.approx(0.9)
    assert skill_type_threshold(10, 4, 0.1, 0.9) == pytest.approx(0.4)
    assert skill_type_threshold(3, 7, 0.5, 0.5) == 0.5


def test_connector_frequency_follows_threshold():
    config = OracleConfig()
    rng = np.random.default_rng(0)
    draws = 20000
    connectors = sum(
        choose_skill_type(10, 0, config, rng) is SkillType.CONNECTORS
        for _ in range(draws))
    assert connectors / draws == pytest.approx(0.9, abs=0.01)
    assert binomtest(connectors, draws, 0.9).pvalue > 1e-3


def test_skill_type_needs_nodes():
    with pytest.raises(PreconditionError):
        choose_skill_type(0, 0, OracleConfig(), np.random.default_rng(0))


def test_success_rates():
    stats = SkillStats()
    for success in (True, False, True, True, False):
        stats.record(SkillName.PUSH, success)
    assert stats.success_rate(SkillName.PUSH) == pytest.approx(0.6)
    assert stats.invocations(SkillName.PICK) == 0
    assert stats.success_rate(SkillName.PICK) == 0.0


def test_selection_score_balances_success_and_novelty(skills):
    stats = SkillStats()
    for _ in range(3):
        stats.record(SkillName.PICK, True)
    names = [SkillName.PICK, SkillName.TRANSPORT]
    assert selection_score(SkillName.PICK, names, stats,
                           0.5) == pytest.approx(
                               0.5 + 0.5 * math.sqrt(math.log(5 / 4)))
    assert selection_score(SkillName.TRANSPORT, names, stats,
                           0.5) == pytest.approx(0.5 * math.sqrt(math.log(5)))
    config = OracleConfig(noise=False)
    chosen = choose_skill(
        [skills[SkillName.TRANSPORT], skills[SkillName.PICK]], stats, config,
        np.random.default_rng(0))
    assert chosen.name is SkillName.PICK


def test_ties_go_to_name_order(skills):
    config = OracleConfig(noise=False)
    chosen = choose_skill(
        [skills[SkillName.TRANSPORT], skills[SkillName.PUSH]], SkillStats(),
        config, np.random.default_rng(0))
    assert chosen.name is SkillName.PUSH


def test_choose_skill_needs_candidates():
    with pytest.raises(InputError):
        choose_skill([], SkillStats(), OracleConfig(),
                     np.random.default_rng(0))


def test_mode_cutoffs():
    rng = np.random.default_rng(3)
    always_start = OracleConfig(p_s=1.0, p_g=1.0, p_sg=1.0)
    assert {choose_mode(always_start, rng)
            for _ in range(200)} == {SelectionMode.START}
    never = OracleConfig(p_s=0.0, p_g=0.0, p_sg=0.0)
    assert {choose_mode(never, rng)
            for _ in range(200)} == {SelectionMode.RANDOM}


def test_goal_mode_falls_back_to_random():
    graph = MosaicGraph(GoalSpec('cup', Rect(0.9, -0.1, 1.1, 0.1)))
    graph.add_mosaic_node(NodeKind.START, Trajectory.point(_state(0.0)), 0.0)
    for x in (0.4, 0.5):
        graph.add_mosaic_node(NodeKind.GENERATED,
                              Trajectory.point(_state(x)), 1.0)
    config = OracleConfig(p_s=0.0, p_g=1.0, p_sg=1.0, p_direct_goal=0.0)
    request = choose_conds_to_connect(graph, config, PairPenaltyTable(),
                                      np.random.default_rng(0))
    assert request.mode is SelectionMode.RANDOM
    assert request.target is not None
    assert request.target != graph.start_id


def test_direct_goal_request():
    graph = MosaicGraph(GoalSpec('cup', Rect(0.9, -0.1, 1.1, 0.1)))
    start = graph.add_mosaic_node(NodeKind.START,
                                  Trajectory.point(_state(0.0)), 0.0)
    config = OracleConfig(p_s=1.0, p_g=1.0, p_sg=1.0, p_direct_goal=1.0)
    request = choose_conds_to_connect(graph, config, PairPenaltyTable(),
                                      np.random.default_rng(0))
    assert request.mode is SelectionMode.START
    assert request.source == start
    assert request.to_goal
    assert request.to_cond.is_goal


def test_no_eligible_pair():
    graph = MosaicGraph(GoalSpec('cup', Rect(0.9, -0.1, 1.1, 0.1)))
    graph.add_mosaic_node(NodeKind.START, Trajectory.point(_state(0.0)), 0.0)
    config = OracleConfig(p_direct_goal=0.0)
    assert choose_conds_to_connect(graph, config, PairPenaltyTable(),
                                   np.random.default_rng(0)) is None


def test_goal_failures_share_one_penalty_key():
    graph = MosaicGraph(GoalSpec('cup', Rect(0.9, -0.1, 1.1, 0.1)))
    graph.add_mosaic_node(NodeKind.START, Trajectory.point(_state(0.0)), 0.0)
    oracle = Oracle(OracleConfig(p_direct_goal=1.0))
    request = oracle.choose_conds_to_connect(graph)
    assert oracle.record_pair_failure(request) == 1
    assert oracle.record_pair_failure(request) == 2
    assert oracle.penalties.count(request.source, GOAL_TARGET) == 2


def test_candidates_under_skill_types():
    oracle = Oracle()
    library = SkillLibrary.default()
    connectors = oracle.candidates(SkillType.CONNECTORS,
                                   library.generators(),
                                   library.connectors())
    assert [s.name for s in connectors
            ] == [SkillName.PUSH, SkillName.REARRANGE, SkillName.TRANSPORT]
    everything = oracle.candidates(SkillType.ALL, library.generators(),
                                   library.connectors())
    assert sorted(s.name for s in everything) == sorted(SkillName)


def test_oracle_is_seeded():
    graph = MosaicGraph()
    graph.add_mosaic_node(NodeKind.START, Trajectory.point(_state(0.0)), 0.0)
    a = Oracle(OracleConfig(seed=4))
    b = Oracle(OracleConfig(seed=4))
    assert [a.choose_skill_type(graph) for _ in range(20)
            ] == [b.choose_skill_type(graph) for _ in range(20)]


def test_record_result_updates_stats(skills):
    oracle = Oracle()
    oracle.record_result(skills[SkillName.PUSH], True)
    oracle.record_result(skills[SkillName.PUSH], False)
    assert oracle.stats.invocations(SkillName.PUSH) == 2
    assert oracle.stats.successes(SkillName.PUSH) == 1
    assert oracle.stats.to_dict()[str(SkillName.PUSH)]['success_rate'] == 0.5


def test_mode_frequencies_match_cutoffs():
    config = OracleConfig()
    rng = np.random.default_rng(5)
    draws = 10000
    counts = Counter(choose_mode(config, rng) for _ in range(draws))
    p_s, p_g, p_sg = config.p_s.value, config.p_g.value, config.p_sg.value
    expected = {
        SelectionMode.START: p_s,
        SelectionMode.GOAL: p_g - p_s,
        SelectionMode.START_GOAL: p_sg - p_g,
        SelectionMode.RANDOM: 1.0 - p_sg,
    }
    modes = list(expected)
    observed = [counts[m] for m in modes]
    assert chisquare(observed,
                     [draws * expected[m] for m in modes]).pvalue > 0.01
    for mode in modes:
        assert counts[mode] / draws == pytest.approx(expected[mode], abs=0.02)


def test_noisy_choice_reaches_every_skill(skills):
    stats = SkillStats()
    for _ in range(10):
        stats.record(SkillName.PUSH, True)
    for name in (SkillName.PICK, SkillName.TRANSPORT, SkillName.REARRANGE):
        for _ in range(10000):
            stats.record(name, False)
    config = OracleConfig()
    rng = np.random.default_rng(9)
    candidates = list(skills.values())
    chosen = Counter(
        choose_skill(candidates, stats, config, rng).name
        for _ in range(100000))
    assert set(chosen) == set(SkillName)
    assert chosen.most_common(1)[0][0] is SkillName.PUSH

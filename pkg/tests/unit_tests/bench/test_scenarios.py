import pytest

from skillmosaic.bench.scenarios import (FAMILIES, find_push_corridors,
                                         has_direct_grasp, make_scenario)
from skillmosaic.exceptions import InputError
from skillmosaic.world.model import goal_satisfied, is_valid_state


@pytest.mark.parametrize('family', FAMILIES)
@pytest.mark.parametrize('seed', [0, 3])
def test_generated_scenarios_are_valid(family, seed):
    scenario = make_scenario(family, seed)
    assert scenario.name == f'{family}-{seed}'
    assert is_valid_state(scenario, scenario.start)
    assert not goal_satisfied(scenario.goal, scenario.start)
    assert not has_direct_grasp(scenario)


def test_generation_is_a_pure_function_of_its_arguments():
    a = make_scenario('movables', 5)
    b = make_scenario('movables', 5)
    assert a.start == b.start
    assert a.obstacles == b.obstacles
    assert make_scenario('clutter', 1).start != make_scenario('clutter',
                                                              2).start


def test_transport_scenarios_have_no_obstacles():
    assert make_scenario('transport', 0).obstacles == ()


@pytest.mark.parametrize('family', ['clutter', 'movables'])
def test_pushable_families_keep_a_free_corridor(family):
    scenario = make_scenario(family, 1)
    assert find_push_corridors(scenario, ignore=['can'])


def test_movables_scenarios_add_a_can():
    scenario = make_scenario('movables', 0)
    assert sorted(scenario.object_ids) == ['can', 'plate']


@pytest.mark.parametrize('family, seed', [('boxes', 0), ('clutter', -1)])
def test_generation_rejects_bad_input(family, seed):
    with pytest.raises(InputError):
        make_scenario(family, seed)

import json

import pytest

from skillmosaic.exceptions import ScenarioError
from skillmosaic.world.scenario import load_scenario, save_scenario


def test_scenario_file_round_trip(two_object_scenario, tmp_path):
    path = tmp_path / 'scenario.json'
    save_scenario(two_object_scenario, path)
    loaded = load_scenario(path)
    assert loaded.name == 'two-objects'
    assert loaded.start == two_object_scenario.start
    assert loaded.obstacles == two_object_scenario.obstacles
    assert loaded.object_ids == two_object_scenario.object_ids
    again = tmp_path / 'again.json'
    save_scenario(loaded, again)
    assert again.read_bytes() == path.read_bytes()


def test_overrides_survive_the_file(scenario, tmp_path):
    document = scenario.to_dict()
    document['oracle'] = {'alpha': 0.9}
    path = tmp_path / 'scenario.json'
    path.write_text(json.dumps(document))
    assert load_scenario(path).overrides == {'oracle': {'alpha': 0.9}}


@pytest.mark.parametrize('text', [
    '{not json',
    '[]',
    '{"name": "x"}',
])
def test_malformed_files_raise(text, tmp_path):
    path = tmp_path / 'scenario.json'
    path.write_text(text)
    with pytest.raises(ScenarioError):
        load_scenario(path)


def test_concave_obstacle_is_rejected(scenario):
    document = scenario.to_dict()
    document['static_obstacles'] = [[[0.0, 0.0], [0.2, 0.0], [0.05, 0.05],
                                     [0.2, 0.2], [0.0, 0.2]]]
    with pytest.raises(ScenarioError):
        type(scenario).from_dict(document)

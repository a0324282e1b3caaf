import json

from skillmosaic.utils.file_utils import load_yaml_config, make_dirs, write_json


def test_make_dirs_is_idempotent(tmp_path):
    path = tmp_path / 'a' / 'b'
    make_dirs(path)
    make_dirs(path)
    assert path.is_dir()


def test_empty_yaml_gives_empty_dict(tmp_path):
    path = tmp_path / 'empty.yaml'
    path.write_text('')
    assert load_yaml_config(path) == {}
    path.write_text('budget:\n  max_iterations: 3\n')
    assert load_yaml_config(path) == {'budget': {'max_iterations': 3}}


def test_write_json_is_canonical(tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    write_json(a, {'b': 1, 'a': [1, 2]})
    write_json(b, {'a': [1, 2], 'b': 1})
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().endswith('}\n')
    assert json.loads(a.read_text()) == {'a': [1, 2], 'b': 1}

from skillmosaic.bench.render import _main_path, export_svg, render_snapshot
from skillmosaic.mosaic.graph import MosaicGraph, NodeKind
from skillmosaic.mosaic.plan import steps_from_path
from skillmosaic.mosaic.snapshot import (SnapshotRecord, load_snapshot,
                                         write_snapshot)
from skillmosaic.skills.core import Condition, SkillName, SkillParams
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.state import Trajectory


def _snapshot_file(scenario, path):
    graph = MosaicGraph.for_scenario(scenario)
    start = graph.add_mosaic_node(NodeKind.START,
                                  Trajectory.point(scenario.start), 0.0)
    moved = scenario.start.with_object('puck', Pose2(0.2, 0.0))
    params = SkillParams(SkillName.PUSH, seed=0, object_id='puck')
    node = graph.add_mosaic_node(NodeKind.GENERATED,
                                 Trajectory([scenario.start, moved]), 0.3,
                                 SkillName.PUSH, params, 0)
    graph.add_mosaic_edge(start, node, SkillName.PUSH, params,
                          Condition.equal_to(scenario.start),
                          Condition.equal_to(scenario.start),
                          Trajectory.point(scenario.start), 0.0)
    steps, _ = steps_from_path(graph.shortest_path())
    write_snapshot(path, scenario, graph, steps)
    return path


def test_svg_carries_artist_ids(scenario, tmp_path):
    snapshot = _snapshot_file(scenario, tmp_path / 'graph.tsv')
    out = export_svg(snapshot, tmp_path / 'graph.svg')
    svg = out.read_text()
    for gid in ('traj-node-0', 'traj-node-1', 'marker-node-1', 'traj-edge-0',
                'marker-edge-0', 'step-0'):
        assert f'id="{gid}"' in svg


def test_rendering_is_byte_stable(scenario, tmp_path):
    snapshot = load_snapshot(_snapshot_file(scenario, tmp_path / 'g.tsv'))
    a = render_snapshot(snapshot, tmp_path / 'a.svg').read_bytes()
    b = render_snapshot(snapshot, tmp_path / 'b.svg').read_bytes()
    assert a == b


def _record(paths) -> SnapshotRecord:
    return SnapshotRecord('node', 0, 'generated', 'push', 0.1,
                          {'paths': paths})


def test_main_path_prefers_goal_target_then_longest_mover():
    gripper = [[0.0, -0.3], [0.1, -0.3]]
    apple = [[0.0, 0.0], [0.05, 0.0]]
    zebra = [[0.2, 0.0], [0.4, 0.0]]
    record = _record({'gripper': gripper, 'apple': apple, 'zebra': zebra})
    assert _main_path(record, 'apple') == apple
    assert _main_path(record, 'missing') == zebra
    assert _main_path(record) == zebra
    assert _main_path(_record({'gripper': gripper}), 'apple') == gripper

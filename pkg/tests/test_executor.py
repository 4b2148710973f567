import math

import pytest

from rovsim.bridge import LLMBridge, ReplayProvider
from rovsim.chatscript import (
    DeleteObjectsInRange,
    LogValue,
    PutBotSwitch,
    PutObject,
    SetBotPosition,
    SetWater,
    SetYaw,
)
from rovsim.executor import (
    Despawn,
    ListInput,
    LogAction,
    MoveTo,
    RotateTo,
    RunConfig,
    SetWaterAction,
    SimSession,
    Spawn,
    compile_command,
)
from rovsim.geometry import Orientation, Vec3
from rovsim.scene import ObjectKind, Scene

from conftest import EXP1_TEXT


def make_session(scene=None, bridge=None, **overrides) -> SimSession:
    config = RunConfig(**{"frame_limit": 1000, **overrides})
    return SimSession(scene if scene is not None else Scene(), config, bridge=bridge)


# -- compile -------------------------------------------------------------------


def test_compile_mapping_one_action_each():
    cases = [
        (SetBotPosition(Vec3(15, 25, 0)), MoveTo),
        (SetYaw(90.0), RotateTo),
        (PutObject(ObjectKind.OYSTER, Vec3(1, 2, 0), Orientation()), Spawn),
        (DeleteObjectsInRange(Vec3(-1, -1, -1), Vec3(1, 1, 1)), Despawn),
        (SetWater((0.1, 0.2, 0.3), 0.5), SetWaterAction),
        (LogValue("get_bot_position()", Vec3(0, 0, 0)), LogAction),
    ]
    for command, action_type in cases:
        actions = compile_command(command)
        assert len(actions) == 1
        assert isinstance(actions[0], action_type)


def test_compile_move_carries_target():
    (action,) = compile_command(SetBotPosition(Vec3(15, 25, 0)))
    assert isinstance(action, MoveTo)
    assert action.target == Vec3(15, 25, 0)
    assert action.start is None  # late-bound


def test_compile_bot_switch_spawns_static_rov():
    (action,) = compile_command(PutBotSwitch(Vec3(5, 5, 0)))
    assert isinstance(action, Spawn)
    assert action.kind is ObjectKind.BLUEROV_STATIC
    assert action.position == Vec3(5, 5, 0)
    assert action.orientation == Orientation()


# -- stepping ------------------------------------------------------------------


def test_move_interpolates_linearly():
    session = make_session()
    session.enqueue_commands([SetBotPosition(Vec3(15, 25, 0))])
    session.step(4)
    assert session.scene.agent.position == Vec3(7.5, 12.5, 0.0)
    session.step(4)
    assert session.scene.agent.position == Vec3(15.0, 25.0, 0.0)


def test_move_endpoint_is_exact_assignment():
    target = Vec3(0.1 + 0.2, 1.0 / 3.0, 10.0 / 7.0)
    session = make_session()
    session.enqueue_commands([SetBotPosition(target)])
    session.step(8)
    assert session.scene.agent.position is not None
    assert session.scene.agent.position == target
    assert session.scene.agent.position.x == target.x  # bit-for-bit


def test_zero_length_move_stays_put():
    session = make_session()
    session.enqueue_commands([SetBotPosition(Vec3(0, 0, 0))])
    for _ in range(8):
        session.step(1)
        assert session.scene.agent.position == Vec3(0, 0, 0)


def test_rotation_shortest_arc_and_tie_break():
    session = make_session()
    session.scene.set_agent_angle("yaw", 350.0)
    session.enqueue_commands([SetYaw(10.0)])
    session.step(8)
    # 350 -> 370 along the +20 arc; compare modulo 360.
    assert session.scene.agent.orientation.yaw == pytest.approx(370.0)

    session2 = make_session()
    session2.enqueue_commands([SetYaw(180.0)])
    session2.step(4)
    assert session2.scene.agent.orientation.yaw == pytest.approx(90.0)  # positive tie-break


def test_ten_spawns_one_per_window():
    session = make_session()
    session.enqueue_commands(
        [PutObject(ObjectKind.OYSTER, Vec3(k, 0, 0), Orientation()) for k in range(10)]
    )
    counts = []
    for _ in range(10):
        session.step(8)
        counts.append(len(session.scene.objects))
    assert counts == list(range(1, 11))
    assert session.clock.current_frame == 80


def test_trajectory_has_frame_zero_plus_one_per_frame():
    session = make_session()
    session.enqueue_commands([SetBotPosition(Vec3(1, 1, 0))])
    session.step(20)
    frames = [r.frame for r in session.trajectory.records]
    assert frames == list(range(21))


def test_actions_wait_for_interval_boundary():
    session = make_session()
    session.step(3)  # now at frame 3, not a boundary
    session.enqueue_commands([PutObject(ObjectKind.ROCK, Vec3(0, 0, 0), Orientation())])
    session.step(4)  # frames 4..7: still before the boundary
    assert len(session.scene.objects) == 0
    session.step(2)  # crosses frame 8: action starts and applies
    assert len(session.scene.objects) == 1


def test_commands_execute_in_script_order():
    session = make_session()
    session.enqueue_commands(
        [
            PutObject(ObjectKind.ROCK, Vec3(1, 0, 0), Orientation()),
            PutObject(ObjectKind.CORAL, Vec3(2, 0, 0), Orientation()),
            PutObject(ObjectKind.GRASS, Vec3(3, 0, 0), Orientation()),
        ]
    )
    session.step(24)
    kinds = [session.scene.objects[i].kind for i in sorted(session.scene.objects)]
    assert kinds == [ObjectKind.ROCK, ObjectKind.CORAL, ObjectKind.GRASS]


def test_log_action_writes_value_log():
    session = make_session()
    session.enqueue_commands([LogValue("get_bot_position()", Vec3(0, 0, 0))])
    session.step(8)
    assert session.report.value_log == ["get_bot_position() = (0, 0, 0)"]


def test_halt_at_frame_limit():
    session = make_session(frame_limit=16)
    advanced = session.step(100)
    assert advanced == 16
    assert session.clock.halted
    assert session.step(5) == 0


def test_captures_fire_on_interval():
    hits = []
    scene = Scene()
    session = SimSession(
        scene,
        RunConfig(frame_limit=40, capture_interval_frames=8),
        on_capture=lambda s, frame: hits.append(frame),
    )
    session.step(40)
    assert hits == [8, 16, 24, 32, 40]
    assert session.report.captures_written == 5


def test_waypoint_circle_boundary_positions_on_radius():
    waypoints = []
    for k in range(16):
        theta = 2 * math.pi * k / 16
        waypoints.append(SetBotPosition(Vec3(3 * math.cos(theta), 3 * math.sin(theta), 0.0)))
    session = make_session()
    session.enqueue_commands(waypoints)
    radii = []
    for _ in range(16):
        session.step(8)
        p = session.scene.agent.position
        radii.append(math.hypot(p.x, p.y))
    assert all(abs(r - 3.0) < 1e-9 for r in radii)
    # Chord interpolation stays inside the circle.
    session2 = make_session()
    session2.enqueue_commands(waypoints)
    max_mid_radius = 0.0
    for _ in range(128):
        session2.step(1)
        p = session2.scene.agent.position
        max_mid_radius = max(max_mid_radius, math.hypot(p.x, p.y))
    assert max_mid_radius <= 3.0 + 1e-9


# -- run modes ------------------------------------------------------------------


def test_without_input_runs_to_frame_limit(experiment_fixtures):
    bridge = LLMBridge(ReplayProvider(experiment_fixtures))
    session = make_session(
        bridge=bridge,
        frame_limit=64,
        predefined_instructions=(EXP1_TEXT,),
    )
    report = session.run()
    assert report.frames_executed == 64
    assert report.instructions_processed == 1
    assert session.scene.agent.position == Vec3(15, 25, 0)
    assert report.status == "ok"


def test_without_input_empty_instructions_clean_run():
    session = make_session(bridge=LLMBridge(ReplayProvider({})), frame_limit=32)
    report = session.run()
    assert report.frames_executed == 32
    assert report.instructions_processed == 0
    assert report.status == "ok"


def test_with_input_predefined_before_interactive(experiment_fixtures):
    fixtures = dict(experiment_fixtures)
    fixtures["turn east"] = "```\nset_yaw(0)\n```"
    bridge = LLMBridge(ReplayProvider(fixtures))
    session = make_session(
        bridge=bridge,
        frame_limit=200,
        interaction_interval_frames=64,
        mode="with_input",
        predefined_instructions=(EXP1_TEXT,),
    )
    report = session.run(ListInput(["turn east"]))
    assert report.instructions_processed == 2
    assert bridge.user_inputs == [EXP1_TEXT, "turn east"]


def test_with_input_ends_on_end_of_input():
    bridge = LLMBridge(ReplayProvider({}))
    session = make_session(bridge=bridge, frame_limit=1000, mode="with_input")
    report = session.run(ListInput([]))
    assert report.frames_executed == 0
    assert report.status == "ok"


def test_provider_error_aborts_without_input_run():
    bridge = LLMBridge(ReplayProvider({}))  # every instruction misses
    session = make_session(
        bridge=bridge, frame_limit=100, predefined_instructions=("will miss",)
    )
    report = session.run()
    assert report.status == "provider_error"
    assert report.frames_executed == 0


def test_rejected_instruction_logs_and_continues():
    fixtures = {"bad": "```\nlaunch_torpedo(1)\n```"}
    bridge = LLMBridge(ReplayProvider(fixtures))
    session = make_session(bridge=bridge, frame_limit=16, predefined_instructions=("bad",))
    report = session.run()
    assert report.status == "ok"
    assert report.frames_executed == 16
    assert report.instruction_results[0]["status"] == "rejected"


def test_run_determinism_same_fixtures_same_trajectory(experiment_fixtures):
    def one_run() -> str:
        bridge = LLMBridge(ReplayProvider(experiment_fixtures))
        session = make_session(
            bridge=bridge, frame_limit=64, predefined_instructions=(EXP1_TEXT,)
        )
        session.run()
        return session.trajectory.to_jsonl()

    assert one_run() == one_run()

import json

import pytest
from fastapi.testclient import TestClient

from rovsim.config import parse_config
from rovsim.service import create_app

from conftest import DATA_DIR, EXP1_TEXT


@pytest.fixture
def client(tmp_path):
    config = parse_config(
        {
            "run": {"frame_limit": 512},
            "provider": {"kind": "replay", "fixtures": str(DATA_DIR / "fixtures_experiments.json")},
            "world": {"seed": 21, "counts": {"oyster": 4}},
            "snapshot": {"bounds": [-20, -20, 20, 20]},
            "output_dir": str(tmp_path / "out"),
        }
    )
    app = create_app(config)
    with TestClient(app) as c:
        yield c


def test_scene_endpoint_matches_schema(client):
    doc = client.get("/api/scene").json()
    assert set(doc) == {"version", "seed", "next_id", "agent", "water", "terrain", "objects"}
    assert doc["agent"]["position"] == [0.0, 0.0, 0.0]
    assert len(doc["objects"]) == 4


def test_instruct_then_step_moves_agent(client):
    response = client.post("/api/instruct", json={"text": EXP1_TEXT})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "accepted"
    assert body["commands"] == ["set_bot_position((15, 25, 0))"]

    client.post("/api/step", json={"frames": 8})
    doc = client.get("/api/scene").json()
    assert doc["agent"]["position"] == [15.0, 25.0, 0.0]


def test_instruct_while_busy_is_409_with_retry_after(client):
    assert client.post("/api/instruct", json={"text": EXP1_TEXT}).status_code == 200
    client.post("/api/step", json={"frames": 2})  # mid-action
    response = client.post("/api/instruct", json={"text": EXP1_TEXT})
    assert response.status_code == 409
    assert response.headers.get("Retry-After") == "1"
    assert response.json()["error"] == "busy"
    client.post("/api/step", json={"frames": 6})  # drain
    assert client.post("/api/instruct", json={"text": EXP1_TEXT}).status_code == 200


def test_rejected_instruction_is_200_with_findings(client):
    response = client.post("/api/instruct", json={"text": EXP1_TEXT})
    assert response.status_code == 200
    client.post("/api/step", json={"frames": 8})

    # Unfixtured text surfaces as a provider error, not a crash.
    response = client.post("/api/instruct", json={"text": "no fixture"})
    assert response.status_code == 502
    assert response.json()["status"] == "provider_error"


def test_step_endpoint_reports_frame(client):
    body = client.post("/api/step", json={"frames": 5}).json()
    assert body == {"frame": 5, "advanced": 5, "halted": False}
    assert client.post("/api/step", json={"frames": 0}).status_code == 400


def test_trajectory_endpoint_windows_by_frame(client):
    client.post("/api/step", json={"frames": 10})
    records = client.get("/api/trajectory", params={"from": 6}).json()["records"]
    assert [r["frame"] for r in records] == [6, 7, 8, 9, 10]


def test_capture_endpoints(client):
    client.post("/api/step", json={"frames": 16})
    frames = client.get("/api/captures").json()["frames"]
    assert frames == [8, 16]
    record = client.get("/api/captures/8").json()
    assert record["frame"] == 8
    assert client.get("/api/captures/9999").status_code == 404


def test_snapshot_endpoint_serves_ppm(client):
    response = client.get("/api/snapshot.ppm", params={"w": 32, "h": 24})
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("image/x-portable-pixmap")
    assert response.content.startswith(b"P6\n32 24\n255\n")


def test_event_stream_is_gapless_and_ordered(tmp_path):
    # A real server: the in-process test transport buffers whole bodies, so
    # a live SSE stream needs actual sockets.
    import socket
    import threading
    import time

    import httpx
    import uvicorn

    config = parse_config(
        {
            "run": {"frame_limit": 512},
            "provider": {"kind": "replay", "fixtures": str(DATA_DIR / "fixtures_experiments.json")},
            "world": {"seed": 21, "counts": {"oyster": 4}},
            "output_dir": str(tmp_path / "out"),
        }
    )
    app = create_app(config)
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    for _ in range(100):
        try:
            httpx.get(base + "/api/status", timeout=1.0)
            break
        except httpx.TransportError:
            time.sleep(0.05)

    runtime = app.state.runtime
    try:
        httpx.post(base + "/api/step", json={"frames": 3}, timeout=5.0)
        events = []
        with httpx.stream("GET", base + "/api/events", params={"limit": 4}, timeout=10.0) as stream:
            for _ in range(100):  # wait until the generator has subscribed
                if runtime._subscribers:
                    break
                time.sleep(0.02)
            httpx.post(base + "/api/step", json={"frames": 3}, timeout=5.0)
            httpx.post(base + "/api/instruct", json={"text": EXP1_TEXT}, timeout=5.0)
            for line in stream.iter_lines():
                if line.startswith("data: "):
                    events.append(json.loads(line[len("data: "):]))
    finally:
        server.should_exit = True
        thread.join(timeout=5)

    kinds = [e["kind"] for e in events]
    assert kinds[:3] == ["frame_advanced", "frame_advanced", "frame_advanced"]
    assert kinds[3] == "instruction_result"
    seqs = [e["seq"] for e in events]
    assert seqs == list(range(seqs[0], seqs[0] + len(seqs)))
    assert events[0]["payload"]["frame"] == 4


def test_run_play_pause_and_halt_event(client):
    body = client.post("/api/run", json={"mode": "play"}).json()
    assert body["playing"] is True
    # Step while playing is refused.
    assert client.post("/api/step", json={"frames": 1}).status_code == 409
    import time

    time.sleep(0.15)
    body = client.post("/api/run", json={"mode": "pause"}).json()
    assert body["playing"] is False
    frame_a = client.get("/api/status").json()["frame"]
    assert frame_a > 0
    time.sleep(0.1)
    assert client.get("/api/status").json()["frame"] == frame_a  # paused means paused
    assert client.post("/api/run", json={"mode": "nonsense"}).status_code == 400


def test_mutations_only_via_command_path(client):
    # Reads do not change state.
    before = client.get("/api/scene").json()
    client.get("/api/snapshot.ppm", params={"w": 16, "h": 16})
    client.get("/api/trajectory")
    client.get("/api/captures")
    assert client.get("/api/scene").json() == before

"""Live HTTP surface over one simulation session.

All mutation funnels through the same command path the CLI uses: an
instruction is bridged, validated, and enqueued; frames advance via
explicit steps or the play loop.  Reads hand out snapshots; the
server-sent event stream delivers gaplessly numbered envelopes.
"""

from __future__ import annotations

import json
import queue
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from fastapi import Body, FastAPI, Query, Response
from fastapi.responses import JSONResponse, StreamingResponse

from .bridge import LLMBridge, make_provider
from .camera import CaptureRecord, capture, render_topdown
from .config import AppConfig
from .executor import SimSession
from .scene import save_scene
from .worldgen import generate

__all__ = ["EventEnvelope", "SessionRuntime", "create_app"]

PLAY_FRAME_SECONDS = 0.02


@dataclass(frozen=True, slots=True)
class EventEnvelope:
    seq: int
    kind: str  # frame_advanced | instruction_result | capture_written | run_halted
    payload: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "kind": self.kind, "payload": self.payload}


class SessionRuntime:
    """Owns the session, its lock, the event fanout, and the play loop."""

    def __init__(self, config: AppConfig) -> None:
        self.config = config
        self._lock = threading.RLock()
        self._subscribers: list[queue.SimpleQueue] = []
        self._seq = 0
        self.captures: list[CaptureRecord] = []
        self._halt_announced = False

        scene = generate(config.scatter, config.terrain, water=config.water)
        bridge = LLMBridge(make_provider(config.provider))
        self.session = SimSession(
            scene,
            config.run,
            bridge=bridge,
            on_capture=self._capture_hook,
            on_frame=self._frame_hook,
        )
        self._playing = False
        self._play_thread: threading.Thread | None = None

    # -- events -----------------------------------------------------------

    def subscribe(self) -> queue.SimpleQueue:
        q: queue.SimpleQueue = queue.SimpleQueue()
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.SimpleQueue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _emit(self, kind: str, payload: dict) -> None:
        envelope = EventEnvelope(self._seq, kind, payload)
        self._seq += 1
        for q in self._subscribers:
            q.put(envelope)

    def _frame_hook(self, frame: int, pose) -> None:
        self._emit(
            "frame_advanced",
            {
                "frame": frame,
                "position": pose.position.to_list(),
                "orientation": pose.orientation.to_list(),
            },
        )

    def _capture_hook(self, scene, frame: int) -> None:
        record = capture(scene, frame, self.config.intrinsics)
        self.captures.append(record)
        self._emit("capture_written", {"frame": frame, "entries": len(record.entries)})

    def _after_step(self) -> None:
        if self.session.clock.halted and not self._halt_announced:
            self._halt_announced = True
            self._emit("run_halted", {"frame": self.session.clock.current_frame})

    # -- operations ----------------------------------------------------------

    def scene_document(self) -> dict:
        with self._lock:
            return save_scene(self.session.scene)

    def trajectory_since(self, start_frame: int) -> list[dict]:
        with self._lock:
            return [
                r.to_dict()
                for r in self.session.trajectory.records
                if r.frame >= start_frame
            ]

    def snapshot_ppm(self, width: int, height: int) -> bytes:
        with self._lock:
            return render_topdown(
                self.session.scene, self.config.snapshot.bounds, (width, height)
            )

    def instruct(self, text: str) -> tuple[int, dict]:
        with self._lock:
            if self.session.busy:
                remaining = len(self.session.queue) + (1 if self.session.current else 0)
                return 409, {
                    "error": "busy",
                    "pending_actions": remaining,
                    "retry_after_frames": remaining * self.config.run.action_interval_frames,
                }
            result = self.session.submit_instruction(text)
            self._emit("instruction_result", result.to_dict())
            status = 502 if result.status == "provider_error" else 200
            return status, result.to_dict()

    def step(self, frames: int) -> tuple[int, dict]:
        with self._lock:
            if self._playing:
                return 409, {"error": "busy", "detail": "session is playing"}
            advanced = self.session.step(frames)
            self._after_step()
            return 200, {
                "frame": self.session.clock.current_frame,
                "advanced": advanced,
                "halted": self.session.clock.halted,
            }

    def set_playing(self, play: bool) -> dict:
        with self._lock:
            if play and not self._playing and not self.session.clock.halted:
                self._playing = True
                self._play_thread = threading.Thread(target=self._play_loop, daemon=True)
                self._play_thread.start()
            elif not play:
                self._playing = False
            return {
                "playing": self._playing,
                "frame": self.session.clock.current_frame,
                "halted": self.session.clock.halted,
            }

    def _play_loop(self) -> None:
        while True:
            with self._lock:
                if not self._playing or self.session.clock.halted:
                    self._playing = False
                    self._after_step()
                    return
                self.session.step(1)
                self._after_step()
            time.sleep(PLAY_FRAME_SECONDS)

    def status(self) -> dict:
        with self._lock:
            return {
                "frame": self.session.clock.current_frame,
                "playing": self._playing,
                "halted": self.session.clock.halted,
                "pending_actions": len(self.session.queue) + (1 if self.session.current else 0),
                "captures": len(self.captures),
            }


def create_app(config: AppConfig) -> FastAPI:
    app = FastAPI(title="rovsim service")
    runtime = SessionRuntime(config)
    app.state.runtime = runtime

    @app.get("/api/scene")
    def get_scene():
        return runtime.scene_document()

    @app.get("/api/status")
    def get_status():
        return runtime.status()

    @app.get("/api/trajectory")
    def get_trajectory(start: int = Query(0, alias="from")):
        return {"records": runtime.trajectory_since(start)}

    @app.get("/api/captures")
    def get_captures():
        return {"frames": [r.frame for r in runtime.captures]}

    @app.get("/api/captures/{frame}")
    def get_capture(frame: int):
        for record in runtime.captures:
            if record.frame == frame:
                return record.to_dict()
        return JSONResponse({"error": f"no capture at frame {frame}"}, status_code=404)

    @app.get("/api/snapshot.ppm")
    def get_snapshot(w: int = Query(256, ge=1, le=2048), h: int = Query(256, ge=1, le=2048)):
        data = runtime.snapshot_ppm(w, h)
        return Response(content=data, media_type="image/x-portable-pixmap")

    @app.post("/api/instruct")
    def post_instruct(body: dict = Body(...)):
        text = body.get("text", "")
        if not isinstance(text, str) or not text.strip():
            return JSONResponse({"error": "body must carry non-empty 'text'"}, status_code=400)
        status, payload = runtime.instruct(text)
        response = JSONResponse(payload, status_code=status)
        if status == 409:
            response.headers["Retry-After"] = "1"
        return response

    @app.post("/api/step")
    def post_step(body: dict = Body(...)):
        frames = body.get("frames", 1)
        if isinstance(frames, bool) or not isinstance(frames, int) or frames < 1:
            return JSONResponse({"error": "'frames' must be a positive integer"}, status_code=400)
        status, payload = runtime.step(frames)
        response = JSONResponse(payload, status_code=status)
        if status == 409:
            response.headers["Retry-After"] = "1"
        return response

    @app.post("/api/run")
    def post_run(body: dict = Body(...)):
        mode = body.get("mode", "")
        if mode not in ("play", "pause"):
            return JSONResponse({"error": "'mode' must be 'play' or 'pause'"}, status_code=400)
        return runtime.set_playing(mode == "play")

    @app.get("/api/events")
    def get_events(limit: int = Query(0, ge=0)):
        def stream():
            q = runtime.subscribe()
            sent = 0
            try:
                while limit == 0 or sent < limit:
                    try:
                        envelope = q.get(timeout=30.0)
                    except queue.Empty:
                        yield ": keep-alive\n\n"
                        continue
                    yield f"data: {json.dumps(envelope.to_dict())}\n\n"
                    sent += 1
            finally:
                runtime.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    # Serve the browser UI when its build output is present.
    ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "public"
    if ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

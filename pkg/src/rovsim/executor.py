"""Frame scheduler: compiles commands to actions and drains them over time.

Frames are logical, not wall-clock.  Each action occupies exactly
`action_interval_frames` frames and begins at a frame divisible by that
interval; motion actions interpolate across their window and land exactly
on the target at the final frame (assignment, never accumulated steps).
The trajectory records the agent pose at frame 0 and after every advanced
frame, so an N-frame move contributes N+1 on-path samples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

from .bridge import InstructionResult, LLMBridge
from .chatscript import commands as cmd
from .geometry import Orientation, Pose, Vec3, shortest_arc_degrees
from .scene import ObjectKind, Scene

__all__ = [
    "RunConfig",
    "FrameClock",
    "TrajectoryLog",
    "RunReport",
    "Action",
    "compile_command",
    "SimSession",
    "InputSource",
    "ListInput",
]


@dataclass(frozen=True, slots=True)
class RunConfig:
    frame_limit: int = 1000
    action_interval_frames: int = 8
    capture_interval_frames: int = 8
    interaction_interval_frames: int = 64
    mode: str = "without_input"  # "with_input" | "without_input"
    predefined_instructions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for name in ("frame_limit", "action_interval_frames", "capture_interval_frames",
                     "interaction_interval_frames"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.mode not in ("with_input", "without_input"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(slots=True)
class FrameClock:
    current_frame: int = 0
    halted: bool = False


@dataclass(frozen=True, slots=True)
class TrajectoryRecord:
    frame: int
    pose: Pose

    def to_dict(self) -> dict:
        return {
            "frame": self.frame,
            "position": self.pose.position.to_list(),
            "orientation": self.pose.orientation.to_list(),
        }


class TrajectoryLog:
    """One pose record per frame, frames strictly increasing from 0."""

    def __init__(self) -> None:
        self.records: list[TrajectoryRecord] = []

    def append(self, frame: int, pose: Pose) -> None:
        if self.records and frame <= self.records[-1].frame:
            raise ValueError(f"frame {frame} not after {self.records[-1].frame}")
        self.records.append(TrajectoryRecord(frame, pose))

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.records)


# -- actions -----------------------------------------------------------------


@dataclass(slots=True)
class MoveTo:
    target: Vec3
    start: Vec3 | None = None  # late-bound at dequeue

    def begin(self, scene: Scene) -> None:
        self.start = scene.agent.position

    def apply(self, scene: Scene, elapsed: int, interval: int) -> None:
        assert self.start is not None
        if elapsed >= interval:
            scene.set_agent_position(self.target)  # exact endpoint, bit-for-bit
            return
        t = elapsed / interval
        delta = self.target - self.start
        scene.set_agent_position(self.start + delta.scaled(t))


@dataclass(slots=True)
class RotateTo:
    axis: str  # "yaw" | "pitch" | "roll"
    target: float
    start: float | None = None

    def begin(self, scene: Scene) -> None:
        self.start = getattr(scene.agent.orientation, self.axis)

    def apply(self, scene: Scene, elapsed: int, interval: int) -> None:
        assert self.start is not None
        delta = shortest_arc_degrees(self.start, self.target)
        if elapsed >= interval:
            scene.set_agent_angle(self.axis, self.start + delta)
            return
        scene.set_agent_angle(self.axis, self.start + delta * (elapsed / interval))


@dataclass(slots=True)
class Spawn:
    kind: ObjectKind
    position: Vec3
    orientation: Orientation
    spawned_id: int | None = None

    def begin(self, scene: Scene) -> None:
        pass

    def apply(self, scene: Scene, elapsed: int, interval: int) -> None:
        if self.spawned_id is None:  # first frame only
            self.spawned_id = scene.put_object(self.kind, self.position, self.orientation)


@dataclass(slots=True)
class Despawn:
    lower: Vec3
    upper: Vec3
    removed: int | None = None

    def begin(self, scene: Scene) -> None:
        pass

    def apply(self, scene: Scene, elapsed: int, interval: int) -> None:
        if self.removed is None:
            self.removed = scene.delete_objects_in_range(self.lower, self.upper)


@dataclass(slots=True)
class SetWaterAction:
    color: tuple[float, float, float]
    turbidity: float
    applied: bool = False

    def begin(self, scene: Scene) -> None:
        pass

    def apply(self, scene: Scene, elapsed: int, interval: int) -> None:
        if not self.applied:
            scene.set_water(self.color, self.turbidity)
            self.applied = True


@dataclass(slots=True)
class LogAction:
    label: str
    value: float | str | Vec3
    logged: bool = False
    sink: Callable[[str], None] | None = None

    def begin(self, scene: Scene) -> None:
        pass

    def apply(self, scene: Scene, elapsed: int, interval: int) -> None:
        if not self.logged and self.sink is not None:
            self.sink(f"{self.label} = {cmd.format_value(self.value)}")
            self.logged = True


Action = MoveTo | RotateTo | Spawn | Despawn | SetWaterAction | LogAction


def compile_command(command: cmd.Command) -> list[Action]:
    """Lower one command to its actions (exactly one each in this version)."""
    if isinstance(command, cmd.SetBotPosition):
        return [MoveTo(command.target)]
    if isinstance(command, cmd.SetYaw):
        return [RotateTo("yaw", command.degrees)]
    if isinstance(command, cmd.SetPitch):
        return [RotateTo("pitch", command.degrees)]
    if isinstance(command, cmd.SetRoll):
        return [RotateTo("roll", command.degrees)]
    if isinstance(command, cmd.PutObject):
        return [Spawn(command.kind, command.position, command.orientation)]
    if isinstance(command, cmd.DeleteObjectsInRange):
        return [Despawn(command.lower, command.upper)]
    if isinstance(command, cmd.PutBotSwitch):
        return [Spawn(ObjectKind.BLUEROV_STATIC, command.position, Orientation())]
    if isinstance(command, cmd.SetWater):
        return [SetWaterAction(command.color, command.turbidity)]
    if isinstance(command, cmd.LogValue):
        return [LogAction(command.label, command.value)]
    raise TypeError(f"unknown command {command!r}")


# -- run orchestration ----------------------------------------------------------


class InputSource(Protocol):
    def read(self) -> str | None:
        """Next user instruction, or None at end of input."""


class ListInput:
    def __init__(self, items: Sequence[str]) -> None:
        self._items = list(items)

    def read(self) -> str | None:
        return self._items.pop(0) if self._items else None


@dataclass(slots=True)
class RunReport:
    frames_executed: int = 0
    instructions_processed: int = 0
    captures_written: int = 0
    status: str = "ok"  # "ok" | "provider_error"
    instruction_results: list[dict] = field(default_factory=list)
    value_log: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "frames_executed": self.frames_executed,
            "instructions_processed": self.instructions_processed,
            "captures_written": self.captures_written,
            "status": self.status,
            "instructions": self.instruction_results,
            "value_log": self.value_log,
        }


class SimSession:
    """Single-writer simulation loop over one scene.

    The bridge is only consulted while the clock is paused between frames,
    so provider latency never lands mid-action.  `on_frame` and
    `on_capture` hooks let the CLI and the HTTP service observe the run
    without touching the scene directly.
    """

    def __init__(
        self,
        scene: Scene,
        config: RunConfig,
        bridge: LLMBridge | None = None,
        on_capture: Callable[[Scene, int], None] | None = None,
        on_frame: Callable[[int, Pose], None] | None = None,
        on_instruction: Callable[[InstructionResult], None] | None = None,
    ) -> None:
        self.scene = scene
        self.config = config
        self.bridge = bridge
        self.clock = FrameClock()
        self.trajectory = TrajectoryLog()
        self.queue: list[Action] = []
        self.current: Action | None = None
        self._action_started_at = 0
        self.report = RunReport()
        self._on_capture = on_capture
        self._on_frame = on_frame
        self._on_instruction = on_instruction
        self.trajectory.append(0, self.scene.agent)

    # -- command intake ---------------------------------------------------

    @property
    def busy(self) -> bool:
        return self.current is not None or bool(self.queue)

    def enqueue_commands(self, commands: Sequence[cmd.Command]) -> None:
        for command in commands:
            for action in compile_command(command):
                if isinstance(action, LogAction):
                    action.sink = self.report.value_log.append
                self.queue.append(action)

    def submit_instruction(self, text: str) -> InstructionResult:
        """Send one instruction through the bridge; enqueue on acceptance."""
        if self.bridge is None:
            raise RuntimeError("session has no bridge configured")
        result = self.bridge.instruct(text, self.scene.copy())
        self.report.instructions_processed += 1
        self.report.instruction_results.append(result.to_dict())
        if result.status == "accepted":
            self.enqueue_commands(result.commands)
        if self._on_instruction is not None:
            self._on_instruction(result)
        return result

    # -- frame stepping -----------------------------------------------------

    def step(self, frames: int) -> int:
        """Advance up to `frames` frames; returns how many actually ran."""
        advanced = 0
        interval = self.config.action_interval_frames
        for _ in range(frames):
            if self.clock.halted:
                break
            if (
                self.current is None
                and self.queue
                and self.clock.current_frame % interval == 0
            ):
                self.current = self.queue.pop(0)
                self.current.begin(self.scene)
                self._action_started_at = self.clock.current_frame

            self.clock.current_frame += 1
            advanced += 1

            if self.current is not None:
                elapsed = self.clock.current_frame - self._action_started_at
                self.current.apply(self.scene, elapsed, interval)
                if elapsed >= interval:
                    self.current = None

            self.trajectory.append(self.clock.current_frame, self.scene.agent)
            if self._on_frame is not None:
                self._on_frame(self.clock.current_frame, self.scene.agent)

            if self.clock.current_frame % self.config.capture_interval_frames == 0:
                if self._on_capture is not None:
                    self._on_capture(self.scene, self.clock.current_frame)
                self.report.captures_written += 1

            if self.clock.current_frame >= self.config.frame_limit:
                self.clock.halted = True
        self.report.frames_executed = self.clock.current_frame
        return advanced

    # -- full run ------------------------------------------------------------

    def run(self, input_source: InputSource | None = None) -> RunReport:
        """Drive the clock to the frame limit, pausing at interaction points.

        Interaction points are frames divisible by the interaction interval
        (including frame 0) where no actions are pending.  Each pause
        consumes one predefined instruction first; in with_input mode the
        interactive source is read once predefined ones are exhausted, and
        end of input ends the run.  Rejected instructions consume no
        frames.  A provider hard-failure aborts a without_input run.
        """
        pending = list(self.config.predefined_instructions)
        with_input = self.config.mode == "with_input"
        while not self.clock.halted:
            at_pause = (
                self.clock.current_frame % self.config.interaction_interval_frames == 0
                and not self.busy
            )
            if at_pause:
                if pending:
                    result = self.submit_instruction(pending.pop(0))
                    if result.status == "provider_error" and not with_input:
                        self.report.status = "provider_error"
                        break
                elif with_input:
                    if input_source is None:
                        break
                    text = input_source.read()
                    if text is None:
                        break  # end of input: clean halt
                    self.submit_instruction(text)
            self.step(1)
        return self.report

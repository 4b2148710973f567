"""Commands: the validated, finite-valued instructions scripts lower to.

One command per mutating call (plus LogValue for top-level getters); the
executor compiles each into a frame-spanning action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from ..geometry import Orientation, Vec3
from ..scene import ObjectKind
from .printer import format_number


@dataclass(frozen=True, slots=True)
class SetBotPosition:
    target: Vec3


@dataclass(frozen=True, slots=True)
class SetYaw:
    degrees: float


@dataclass(frozen=True, slots=True)
class SetPitch:
    degrees: float


@dataclass(frozen=True, slots=True)
class SetRoll:
    degrees: float


@dataclass(frozen=True, slots=True)
class PutObject:
    kind: ObjectKind
    position: Vec3
    orientation: Orientation


@dataclass(frozen=True, slots=True)
class DeleteObjectsInRange:
    lower: Vec3
    upper: Vec3


@dataclass(frozen=True, slots=True)
class PutBotSwitch:
    position: Vec3


@dataclass(frozen=True, slots=True)
class SetWater:
    color: tuple[float, float, float]
    turbidity: float


@dataclass(frozen=True, slots=True)
class LogValue:
    label: str
    value: Union[float, str, Vec3]


Command = Union[
    SetBotPosition,
    SetYaw,
    SetPitch,
    SetRoll,
    PutObject,
    DeleteObjectsInRange,
    PutBotSwitch,
    SetWater,
    LogValue,
]


def _fmt_vec(v: Vec3) -> str:
    return f"({format_number(v.x)}, {format_number(v.y)}, {format_number(v.z)})"


def format_value(value: Union[float, str, Vec3]) -> str:
    if isinstance(value, Vec3):
        return _fmt_vec(value)
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def describe_command(cmd: Command) -> str:
    """Single-line rendering for run reports and the service API."""
    if isinstance(cmd, SetBotPosition):
        return f"set_bot_position({_fmt_vec(cmd.target)})"
    if isinstance(cmd, SetYaw):
        return f"set_yaw({format_number(cmd.degrees)})"
    if isinstance(cmd, SetPitch):
        return f"set_pitch({format_number(cmd.degrees)})"
    if isinstance(cmd, SetRoll):
        return f"set_roll({format_number(cmd.degrees)})"
    if isinstance(cmd, PutObject):
        o = cmd.orientation
        angles = f"({format_number(o.yaw)}, {format_number(o.pitch)}, {format_number(o.roll)})"
        return f"put_object({cmd.kind.value}, {_fmt_vec(cmd.position)}, {angles})"
    if isinstance(cmd, DeleteObjectsInRange):
        return f"delete_objects_in_range({_fmt_vec(cmd.lower)}, {_fmt_vec(cmd.upper)})"
    if isinstance(cmd, PutBotSwitch):
        return f"put_bot_switch({_fmt_vec(cmd.position)})"
    if isinstance(cmd, SetWater):
        color = ", ".join(format_number(c) for c in cmd.color)
        return f"set_water(({color}), {format_number(cmd.turbidity)})"
    if isinstance(cmd, LogValue):
        return f"log {cmd.label} = {format_value(cmd.value)}"
    raise TypeError(f"unknown command {cmd!r}")


def check_finite(cmd: Command) -> None:
    """Commands must carry only finite numbers; Vec3 enforces its own."""
    scalars: tuple[float, ...] = ()
    if isinstance(cmd, (SetYaw, SetPitch, SetRoll)):
        scalars = (cmd.degrees,)
    elif isinstance(cmd, SetWater):
        scalars = (*cmd.color, cmd.turbidity)
    elif isinstance(cmd, LogValue) and isinstance(cmd.value, float):
        scalars = (cmd.value,)
    for s in scalars:
        if not math.isfinite(s):
            raise ValueError(f"non-finite value {s!r} in command")

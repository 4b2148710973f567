"""Vectors, angles, and poses in the simulator's world frame.

World frame convention (frozen, everything downstream depends on it):
right-handed, +Z up, seabed near z=0.  Yaw is measured counterclockwise
about +Z starting from +X; rotations compose yaw, then pitch about the
rotated Y axis, then roll about the twice-rotated X axis (intrinsic
Z-Y'-X'').  Angles are degrees throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Vec3",
    "Orientation",
    "Pose",
    "NonFiniteArgument",
    "rotation_matrix",
    "angles_equal_mod360",
]


class NonFiniteArgument(ValueError):
    """A coordinate or angle argument was NaN or infinite."""


def _require_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteArgument(f"non-finite value {v!r}")


@dataclass(frozen=True, slots=True)
class Vec3:
    """Point or displacement in meters, world frame."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        # Coerce so stored state is uniformly float (ints serialize differently).
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        _require_finite(self.x, self.y, self.z)

    def __add__(self, other: Vec3) -> Vec3:
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Vec3) -> Vec3:
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> Vec3:
        return Vec3(self.x * k, self.y * k, self.z * k)

    def dot(self, other: Vec3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def to_list(self) -> list[float]:
        return [self.x, self.y, self.z]

    @classmethod
    def from_seq(cls, seq) -> Vec3:
        x, y, z = seq
        return cls(float(x), float(y), float(z))


@dataclass(frozen=True, slots=True)
class Orientation:
    """Yaw/pitch/roll in degrees.  Stored unnormalized; compare modulo 360."""

    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "yaw", float(self.yaw))
        object.__setattr__(self, "pitch", float(self.pitch))
        object.__setattr__(self, "roll", float(self.roll))
        _require_finite(self.yaw, self.pitch, self.roll)

    def replaced(self, axis: str, degrees: float) -> Orientation:
        if axis not in ("yaw", "pitch", "roll"):
            raise ValueError(f"unknown rotation axis {axis!r}")
        parts = {"yaw": self.yaw, "pitch": self.pitch, "roll": self.roll}
        parts[axis] = degrees
        return Orientation(parts["yaw"], parts["pitch"], parts["roll"])

    def to_list(self) -> list[float]:
        return [self.yaw, self.pitch, self.roll]

    @classmethod
    def from_seq(cls, seq) -> Orientation:
        yaw, pitch, roll = seq
        return cls(float(yaw), float(pitch), float(roll))


@dataclass(frozen=True, slots=True)
class Pose:
    position: Vec3 = Vec3(0.0, 0.0, 0.0)
    orientation: Orientation = Orientation()


def rotation_matrix(o: Orientation) -> list[list[float]]:
    """Body-to-world rotation matrix for the intrinsic Z-Y'-X'' convention.

    Columns are the body axes (forward +X, left +Y, up +Z) expressed in
    world coordinates.
    """
    cy, sy = _cos_sin(o.yaw)
    cp, sp = _cos_sin(o.pitch)
    cr, sr = _cos_sin(o.roll)
    # Rz(yaw) @ Ry(pitch) @ Rx(roll), right-handed.
    return [
        [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
        [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
        [-sp, cp * sr, cp * cr],
    ]


def rotate(m: list[list[float]], v: Vec3) -> Vec3:
    return Vec3(
        m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
        m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
        m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
    )


def rotate_transposed(m: list[list[float]], v: Vec3) -> Vec3:
    """Apply the inverse (transpose) of a rotation matrix."""
    return Vec3(
        m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z,
        m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
        m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z,
    )


def heading_vector(o: Orientation) -> Vec3:
    """World-frame unit vector along the body +X (forward) axis."""
    m = rotation_matrix(o)
    return Vec3(m[0][0], m[1][0], m[2][0])


def shortest_arc_degrees(start: float, target: float) -> float:
    """Signed delta taking `start` to `target` along the shortest arc.

    Exactly-180-degree ties break toward the positive direction.
    """
    delta = math.fmod(target - start, 360.0)
    if delta > 180.0:
        delta -= 360.0
    elif delta < -180.0:
        delta += 360.0
    if delta == -180.0:
        delta = 180.0
    return delta


def angles_equal_mod360(a: float, b: float, tol: float = 1e-9) -> bool:
    d = math.fmod(a - b, 360.0)
    if d < 0:
        d += 360.0
    return d <= tol or 360.0 - d <= tol


def _cos_sin(degrees: float) -> tuple[float, float]:
    r = math.radians(degrees)
    return math.cos(r), math.sin(r)

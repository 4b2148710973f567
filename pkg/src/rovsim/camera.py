"""Forward-mounted pinhole camera and the schematic top-down raster.

Axis convention (frozen): the camera looks along the agent's +X after
yaw/pitch/roll; pixel u grows rightward, which is world -Y at zero yaw,
and v grows downward, which is world -Z at zero roll.  Focal length in
pixels derives from the horizontal field of view; points closer than the
near plane or outside the image are culled, not errors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Orientation, Pose, Vec3, rotation_matrix
from .scene import ObjectKind, Scene

__all__ = [
    "CameraIntrinsics",
    "CaptureEntry",
    "CaptureRecord",
    "DegenerateBounds",
    "project",
    "unproject",
    "capture",
    "render_topdown",
]

NEAR_PLANE = 0.05


class DegenerateBounds(ValueError):
    """Raster bounds enclose no area."""


@dataclass(frozen=True, slots=True)
class CameraIntrinsics:
    horizontal_fov_deg: float = 90.0
    width: int = 640
    height: int = 480
    mount_offset: Vec3 = Vec3(0.2, 0.0, 0.0)  # agent frame, forward of center

    def __post_init__(self) -> None:
        if not (0.0 < self.horizontal_fov_deg < 180.0):
            raise ValueError(f"horizontal fov must be in (0, 180), got {self.horizontal_fov_deg}")
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be >= 1 pixel")

    @property
    def focal_px(self) -> float:
        return (self.width / 2.0) / math.tan(math.radians(self.horizontal_fov_deg) / 2.0)


def camera_pose(agent: Pose, intrinsics: CameraIntrinsics) -> Pose:
    """World pose of the camera: agent pose composed with the mount offset."""
    m = rotation_matrix(agent.orientation)
    off = intrinsics.mount_offset
    world_offset = Vec3(
        m[0][0] * off.x + m[0][1] * off.y + m[0][2] * off.z,
        m[1][0] * off.x + m[1][1] * off.y + m[1][2] * off.z,
        m[2][0] * off.x + m[2][1] * off.y + m[2][2] * off.z,
    )
    return Pose(agent.position + world_offset, agent.orientation)


def _camera_axes(orientation: Orientation) -> tuple[Vec3, Vec3, Vec3]:
    """(forward, right-in-image, down-in-image) unit vectors in world frame."""
    m = rotation_matrix(orientation)
    forward = Vec3(m[0][0], m[1][0], m[2][0])  # body +X
    right = Vec3(-m[0][1], -m[1][1], -m[2][1])  # body -Y
    down = Vec3(-m[0][2], -m[1][2], -m[2][2])  # body -Z
    return forward, right, down


def project(
    p: Vec3, cam: Pose, intrinsics: CameraIntrinsics
) -> tuple[float, float, float] | None:
    """World point to (u, v, depth), or None when culled."""
    forward, right, down = _camera_axes(cam.orientation)
    q = p - cam.position
    depth = q.dot(forward)
    if depth <= NEAR_PLANE:
        return None
    f = intrinsics.focal_px
    u = intrinsics.width / 2.0 + f * (q.dot(right) / depth)
    v = intrinsics.height / 2.0 + f * (q.dot(down) / depth)
    if not (0.0 <= u <= intrinsics.width and 0.0 <= v <= intrinsics.height):
        return None
    return (u, v, depth)


def unproject(u: float, v: float, depth: float, cam: Pose, intrinsics: CameraIntrinsics) -> Vec3:
    """Inverse of project for an in-view pixel and depth."""
    forward, right, down = _camera_axes(cam.orientation)
    f = intrinsics.focal_px
    du = (u - intrinsics.width / 2.0) / f
    dv = (v - intrinsics.height / 2.0) / f
    ray = forward + right.scaled(du) + down.scaled(dv)
    return cam.position + ray.scaled(depth)


@dataclass(frozen=True, slots=True)
class CaptureEntry:
    object_id: int
    kind: ObjectKind
    u: float
    v: float
    depth: float


@dataclass(frozen=True, slots=True)
class CaptureRecord:
    frame: int
    camera: Pose
    entries: tuple[CaptureEntry, ...]
    water_color: tuple[float, float, float]
    water_turbidity: float

    def to_dict(self) -> dict:
        return {
            "frame": self.frame,
            "camera": {
                "position": self.camera.position.to_list(),
                "orientation": self.camera.orientation.to_list(),
            },
            "entries": [
                {
                    "id": e.object_id,
                    "kind": e.kind.value,
                    "pixel": [e.u, e.v],
                    "depth": e.depth,
                }
                for e in self.entries
            ],
            "water": {"color": list(self.water_color), "turbidity": self.water_turbidity},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def capture(scene: Scene, frame: int, intrinsics: CameraIntrinsics) -> CaptureRecord:
    """Project every object centroid; keep in-view hits sorted by depth."""
    cam = camera_pose(scene.agent, intrinsics)
    entries = []
    for obj in scene.objects.values():
        hit = project(obj.pose.position, cam, intrinsics)
        if hit is not None:
            u, v, depth = hit
            entries.append(CaptureEntry(obj.id, obj.kind, u, v, depth))
    entries.sort(key=lambda e: (e.depth, e.object_id))
    return CaptureRecord(
        frame=frame,
        camera=cam,
        entries=tuple(entries),
        water_color=scene.water.color,
        water_turbidity=scene.water.turbidity,
    )


# -- top-down raster ---------------------------------------------------------

_SEABED_RGB = (198, 179, 142)
_AGENT_RGB = (255, 214, 0)
_KIND_RGB = {
    ObjectKind.OYSTER: (236, 240, 241),
    ObjectKind.ROCK: (108, 110, 112),
    ObjectKind.CORAL: (231, 104, 122),
    ObjectKind.GRASS: (88, 160, 82),
    ObjectKind.SHIPWRECK: (112, 82, 56),
    ObjectKind.BLUEROV_STATIC: (52, 118, 199),
}


def render_topdown(
    scene: Scene,
    bounds: tuple[float, float, float, float],
    resolution: tuple[int, int],
) -> bytes:
    """Binary PPM (P6) snapshot looking straight down at the scene.

    Objects are filled discs of their bounding radius, the agent an
    oriented triangle along its yaw; the whole frame blends toward the
    water color with factor 1 - exp(-turbidity).
    """
    min_x, min_y, max_x, max_y = bounds
    if not (max_x > min_x and max_y > min_y):
        raise DegenerateBounds(f"bounds {bounds} enclose no area")
    width, height = resolution
    if width < 1 or height < 1:
        raise DegenerateBounds(f"resolution {resolution} has no pixels")

    # Pixel-center world coordinates; row 0 is the top of the image (max y).
    xs = min_x + (np.arange(width, dtype=np.float64) + 0.5) * (max_x - min_x) / width
    ys = max_y - (np.arange(height, dtype=np.float64) + 0.5) * (max_y - min_y) / height
    gx, gy = np.meshgrid(xs, ys)

    img = np.empty((height, width, 3), dtype=np.float64)
    img[:, :] = _SEABED_RGB

    for obj in sorted(scene.objects.values(), key=lambda o: o.id):
        px, py = obj.pose.position.x, obj.pose.position.y
        r = obj.bounding_radius
        mask = (gx - px) ** 2 + (gy - py) ** 2 <= r * r
        img[mask] = _KIND_RGB[obj.kind]

    _draw_agent(img, gx, gy, scene)

    t = 1.0 - math.exp(-scene.water.turbidity)
    if t > 0.0:
        water = np.array(scene.water.color, dtype=np.float64) * 255.0
        img = img * (1.0 - t) + water * t

    pixels = np.clip(np.rint(img), 0, 255).astype(np.uint8)
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def _draw_agent(img: np.ndarray, gx: np.ndarray, gy: np.ndarray, scene: Scene) -> None:
    """Isoceles triangle, apex pointing along the agent's yaw."""
    pos = scene.agent.position
    yaw = math.radians(scene.agent.orientation.yaw)
    size = 0.8
    fx, fy = math.cos(yaw), math.sin(yaw)
    lx, ly = -fy, fx  # left of heading
    apex = (pos.x + fx * size, pos.y + fy * size)
    base_l = (pos.x - fx * size * 0.6 + lx * size * 0.5, pos.y - fy * size * 0.6 + ly * size * 0.5)
    base_r = (pos.x - fx * size * 0.6 - lx * size * 0.5, pos.y - fy * size * 0.6 - ly * size * 0.5)
    mask = _triangle_mask(gx, gy, apex, base_l, base_r)
    img[mask] = _AGENT_RGB


def _triangle_mask(gx, gy, a, b, c) -> np.ndarray:
    def half_plane(p, q):
        return (q[0] - p[0]) * (gy - p[1]) - (q[1] - p[1]) * (gx - p[0])

    d1 = half_plane(a, b)
    d2 = half_plane(b, c)
    d3 = half_plane(c, a)
    neg = (d1 < 0) | (d2 < 0) | (d3 < 0)
    pos = (d1 > 0) | (d2 > 0) | (d3 > 0)
    return ~(neg & pos)

"""Seeded procedural world construction: seabed height field and scatter.

Everything here is a pure function of its seeds.  The lattice hash and the
stream generator are fixed 64-bit integer mixers (splitmix-style finalizer)
so heights and scatter positions reproduce bit-for-bit across platforms;
golden tests freeze the constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Orientation, Vec3
from .scene import ObjectKind, Scene, TerrainParams, WaterProperties

__all__ = [
    "TerrainParams",
    "ScatterSpec",
    "DegenerateRegion",
    "terrain_height",
    "lattice_value",
    "mix64",
    "Splitmix64",
    "generate",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class DegenerateRegion(ValueError):
    """Scatter region has zero area but a positive object count."""


def _finalize(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def mix64(i: int, j: int, seed: int) -> int:
    """Hash a lattice cell and seed to a uniform 64-bit value."""
    h = (seed & _MASK64) ^ (i & _MASK64) * 0x9E3779B97F4A7C15 ^ (j & _MASK64) * 0xC2B2AE3D27D4EB4F
    return _finalize((h + _GAMMA) & _MASK64)


def _unit(value: int) -> float:
    # Top 53 bits -> [0, 1).
    return (value >> 11) * 2.0**-53


def lattice_value(params: TerrainParams, i: int, j: int) -> float:
    """Pseudo-random height fraction in [0,1) at integer lattice cell (i, j)."""
    return _unit(mix64(i, j, params.seed))


def terrain_height(params: TerrainParams, x: float, y: float) -> float:
    """Seabed height at (x, y): bilinear interpolation over the value lattice."""
    gx = x / params.lattice_spacing
    gy = y / params.lattice_spacing
    i = math.floor(gx)
    j = math.floor(gy)
    fx = gx - i
    fy = gy - j
    v00 = lattice_value(params, i, j)
    v10 = lattice_value(params, i + 1, j)
    v01 = lattice_value(params, i, j + 1)
    v11 = lattice_value(params, i + 1, j + 1)
    top = v00 + (v10 - v00) * fx
    bottom = v01 + (v11 - v01) * fx
    return params.amplitude * (top + (bottom - top) * fy)


class Splitmix64:
    """Tiny deterministic stream generator: 64-bit counter + finalizer."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _finalize(self._state)

    def next_float(self) -> float:
        return _unit(self.next_u64())

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()


@dataclass(frozen=True, slots=True)
class ScatterSpec:
    """How many of each kind to scatter, where, and with which seed."""

    counts: dict[ObjectKind, int] = field(default_factory=dict)
    # (min_x, min_y, max_x, max_y), inclusive region on the seabed
    region: tuple[float, float, float, float] = (-30.0, -30.0, 30.0, 30.0)
    seed: int = 0

    def __post_init__(self) -> None:
        for kind, count in self.counts.items():
            if count < 0:
                raise ValueError(f"negative count for {kind.value}: {count}")


def generate(
    spec: ScatterSpec,
    terrain: TerrainParams,
    water: WaterProperties | None = None,
) -> Scene:
    """Build the initial scene: agent at the origin plus scattered objects.

    Draw order is fixed (kinds in catalog order, then index order) so the
    same spec always produces a field-identical scene.  Every object rests
    on the seabed: z == terrain_height at its (x, y).
    """
    min_x, min_y, max_x, max_y = spec.region
    total = sum(spec.counts.values())
    if total > 0 and (min_x >= max_x or min_y >= max_y):
        raise DegenerateRegion(f"region {spec.region} has no area for {total} objects")

    scene = Scene(seed=spec.seed, terrain=terrain, water=water)
    rng = Splitmix64(spec.seed)
    for kind in ObjectKind:
        for _ in range(spec.counts.get(kind, 0)):
            x = rng.uniform(min_x, max_x)
            y = rng.uniform(min_y, max_y)
            yaw = rng.uniform(0.0, 360.0)
            z = terrain_height(terrain, x, y)
            scene.put_object(kind, Vec3(x, y, z), Orientation(yaw=yaw))
    return scene

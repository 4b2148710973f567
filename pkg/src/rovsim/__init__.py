"""rovsim: a deterministic, headless underwater robot simulator steered by
natural language through a whitelisted command DSL."""

from .geometry import Orientation, Pose, Vec3
from .scene import ObjectKind, Scene, SceneObject, TerrainParams, WaterProperties

__version__ = "0.1.0"

__all__ = [
    "Orientation",
    "Pose",
    "Vec3",
    "ObjectKind",
    "Scene",
    "SceneObject",
    "TerrainParams",
    "WaterProperties",
    "__version__",
]

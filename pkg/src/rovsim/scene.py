"""World state: placed objects, the agent, water, and terrain parameters.

The scene is a single-writer structure.  Every mutation goes through the
methods here; readers take `copy()` snapshots.  Object ids increase
monotonically for the lifetime of a scene and are never reused, even
after deletion, so log lines and object names stay unambiguous.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

from .geometry import NonFiniteArgument, Orientation, Pose, Vec3

__all__ = [
    "ObjectKind",
    "SceneObject",
    "WaterProperties",
    "TerrainParams",
    "Scene",
    "SceneError",
    "UnknownKind",
    "UnknownObject",
    "NegativeTurbidity",
    "MalformedDocument",
    "save_scene",
    "load_scene",
    "scene_to_json",
    "scene_from_json",
]

SCENE_DOC_VERSION = 1


class SceneError(Exception):
    """Base class for scene-level failures."""


class UnknownKind(SceneError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown object kind {name!r}")
        self.name = name


class UnknownObject(SceneError):
    def __init__(self, name: str) -> None:
        super().__init__(f"no such object {name!r}")
        self.name = name


class NegativeTurbidity(SceneError):
    def __init__(self, value: float) -> None:
        super().__init__(f"turbidity must be >= 0, got {value}")
        self.value = value


class MalformedDocument(SceneError):
    """Scene document violates the schema; message carries the location."""

    def __init__(self, location: str, problem: str) -> None:
        super().__init__(f"{location}: {problem}")
        self.location = location
        self.problem = problem


class ObjectKind(str, enum.Enum):
    """Closed catalog of placeable object kinds."""

    OYSTER = "oyster"
    ROCK = "rock"
    CORAL = "coral"
    GRASS = "grass"
    SHIPWRECK = "shipwreck"
    BLUEROV_STATIC = "bluerov_static"

    @classmethod
    def parse(cls, name: str) -> ObjectKind:
        try:
            return cls(name)
        except ValueError:
            raise UnknownKind(name) from None


# Glyph/visibility radii in meters; cosmetic, frozen by golden renders.
BOUNDING_RADIUS = {
    ObjectKind.OYSTER: 0.15,
    ObjectKind.ROCK: 0.5,
    ObjectKind.CORAL: 0.4,
    ObjectKind.GRASS: 0.3,
    ObjectKind.SHIPWRECK: 5.0,
    ObjectKind.BLUEROV_STATIC: 0.3,
}


@dataclass(frozen=True, slots=True)
class SceneObject:
    id: int
    kind: ObjectKind
    pose: Pose
    bounding_radius: float

    @property
    def name(self) -> str:
        return f"{self.kind.value}_{self.id}"


def _clamp01(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


@dataclass(frozen=True, slots=True)
class WaterProperties:
    """Water color (RGB in [0,1], clamped) and turbidity (>= 0)."""

    color: tuple[float, float, float] = (0.1, 0.3, 0.4)
    turbidity: float = 0.0

    def __post_init__(self) -> None:
        r, g, b = self.color
        for c in (r, g, b):
            if not math.isfinite(c):
                raise NonFiniteArgument(f"non-finite color component {c!r}")
        object.__setattr__(
            self, "color", (_clamp01(float(r)), _clamp01(float(g)), _clamp01(float(b)))
        )
        if not math.isfinite(self.turbidity):
            raise NonFiniteArgument(f"non-finite turbidity {self.turbidity!r}")
        if self.turbidity < 0:
            raise NegativeTurbidity(self.turbidity)


@dataclass(frozen=True, slots=True)
class TerrainParams:
    """Seabed height-field parameters (see rovsim.worldgen)."""

    amplitude: float = 0.5
    lattice_spacing: float = 8.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0):
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")
        if not (math.isfinite(self.lattice_spacing) and self.lattice_spacing > 0):
            raise ValueError(f"lattice_spacing must be > 0, got {self.lattice_spacing}")


class Scene:
    """Mutable world state.  See module docstring for the writer contract."""

    def __init__(
        self,
        seed: int = 0,
        terrain: TerrainParams | None = None,
        water: WaterProperties | None = None,
        agent: Pose | None = None,
    ) -> None:
        self.seed = int(seed)
        self.terrain = terrain if terrain is not None else TerrainParams(seed=self.seed)
        self.water = water if water is not None else WaterProperties()
        self.agent = agent if agent is not None else Pose()
        self.objects: dict[int, SceneObject] = {}
        self.next_id = 1

    # -- mutations ----------------------------------------------------------

    def put_object(
        self,
        kind: ObjectKind | str,
        position: Vec3,
        orientation: Orientation = Orientation(),
    ) -> int:
        """Place a new object; returns its id."""
        k = kind if isinstance(kind, ObjectKind) else ObjectKind.parse(str(kind))
        obj = SceneObject(
            id=self.next_id,
            kind=k,
            pose=Pose(position, orientation),
            bounding_radius=BOUNDING_RADIUS[k],
        )
        self.objects[obj.id] = obj
        self.next_id += 1
        return obj.id

    def delete_objects_in_range(self, lower: Vec3, upper: Vec3) -> int:
        """Remove every object inside the axis-aligned box, inclusive.

        Bounds auto-normalize per axis (lower/upper may arrive swapped).
        The agent is never removed.  Returns the removal count.
        """
        lo = Vec3(min(lower.x, upper.x), min(lower.y, upper.y), min(lower.z, upper.z))
        hi = Vec3(max(lower.x, upper.x), max(lower.y, upper.y), max(lower.z, upper.z))
        doomed = [
            oid
            for oid, obj in self.objects.items()
            if lo.x <= obj.pose.position.x <= hi.x
            and lo.y <= obj.pose.position.y <= hi.y
            and lo.z <= obj.pose.position.z <= hi.z
        ]
        for oid in doomed:
            del self.objects[oid]
        return len(doomed)

    def set_agent_position(self, p: Vec3) -> None:
        self.agent = Pose(p, self.agent.orientation)

    def set_agent_angle(self, axis: str, degrees: float) -> None:
        if not math.isfinite(degrees):
            raise NonFiniteArgument(f"non-finite angle {degrees!r}")
        self.agent = Pose(self.agent.position, self.agent.orientation.replaced(axis, degrees))

    def set_water(self, color: tuple[float, float, float], turbidity: float) -> None:
        self.water = WaterProperties(color=color, turbidity=turbidity)

    # -- queries ------------------------------------------------------------

    def get_position(self, name: str) -> Vec3:
        """Resolve an object reference of the form "<kind>_<id>"."""
        obj = self._resolve(name)
        return obj.pose.position

    def get_bot_position(self) -> Vec3:
        return self.agent.position

    def _resolve(self, name: str) -> SceneObject:
        kind_name, _, id_text = str(name).rpartition("_")
        # bluerov_static names look like "bluerov_static_7"
        if kind_name and id_text.isdigit():
            oid = int(id_text)
            obj = self.objects.get(oid)
            if obj is not None and obj.kind.value == kind_name:
                return obj
        raise UnknownObject(str(name))

    def copy(self) -> Scene:
        """Point-in-time snapshot.  Entries are immutable, so this is shallow."""
        dup = Scene(seed=self.seed, terrain=self.terrain, water=self.water, agent=self.agent)
        dup.objects = dict(self.objects)
        dup.next_id = self.next_id
        return dup

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scene):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.terrain == other.terrain
            and self.water == other.water
            and self.agent == other.agent
            and self.objects == other.objects
            and self.next_id == other.next_id
        )


# -- persistence ------------------------------------------------------------

_TOP_KEYS = {"version", "seed", "next_id", "agent", "water", "terrain", "objects"}


def save_scene(scene: Scene) -> dict:
    """Serialize to the scene document structure (JSON-ready dict)."""
    return {
        "version": SCENE_DOC_VERSION,
        "seed": scene.seed,
        "next_id": scene.next_id,
        "agent": {
            "position": scene.agent.position.to_list(),
            "orientation": scene.agent.orientation.to_list(),
        },
        "water": {
            "color": list(scene.water.color),
            "turbidity": scene.water.turbidity,
        },
        "terrain": {
            "amplitude": scene.terrain.amplitude,
            "lattice_spacing": scene.terrain.lattice_spacing,
            "seed": scene.terrain.seed,
        },
        "objects": [
            {
                "id": obj.id,
                "kind": obj.kind.value,
                "position": obj.pose.position.to_list(),
                "orientation": obj.pose.orientation.to_list(),
            }
            for obj in scene.objects.values()
        ],
    }


def scene_to_json(scene: Scene) -> str:
    # json round-trips Python floats at full precision.
    return json.dumps(save_scene(scene), indent=2) + "\n"


def _expect_keys(doc: dict, keys: set[str], where: str) -> None:
    if not isinstance(doc, dict):
        raise MalformedDocument(where, f"expected object, got {type(doc).__name__}")
    missing = keys - doc.keys()
    extra = doc.keys() - keys
    if missing:
        raise MalformedDocument(where, f"missing key {sorted(missing)[0]!r}")
    if extra:
        raise MalformedDocument(where, f"unexpected key {sorted(extra)[0]!r}")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(where, f"expected number, got {value!r}")
    if not math.isfinite(value):
        raise MalformedDocument(where, f"non-finite number {value!r}")
    return float(value)


def _triple(value, where: str) -> tuple[float, float, float]:
    if not isinstance(value, list) or len(value) != 3:
        raise MalformedDocument(where, "expected a 3-element array")
    return (
        _number(value[0], f"{where}[0]"),
        _number(value[1], f"{where}[1]"),
        _number(value[2], f"{where}[2]"),
    )


def load_scene(doc: dict) -> Scene:
    """Rebuild a scene from its document; inverse of save_scene."""
    _expect_keys(doc, _TOP_KEYS, "$")
    if doc["version"] != SCENE_DOC_VERSION:
        raise MalformedDocument("version", f"unsupported version {doc['version']!r}")
    if isinstance(doc["seed"], bool) or not isinstance(doc["seed"], int):
        raise MalformedDocument("seed", f"expected integer, got {doc['seed']!r}")

    _expect_keys(doc["agent"], {"position", "orientation"}, "agent")
    agent = Pose(
        Vec3(*_triple(doc["agent"]["position"], "agent.position")),
        Orientation(*_triple(doc["agent"]["orientation"], "agent.orientation")),
    )

    _expect_keys(doc["water"], {"color", "turbidity"}, "water")
    try:
        water = WaterProperties(
            color=_triple(doc["water"]["color"], "water.color"),
            turbidity=_number(doc["water"]["turbidity"], "water.turbidity"),
        )
    except NegativeTurbidity as exc:
        raise MalformedDocument("water.turbidity", str(exc)) from None

    _expect_keys(doc["terrain"], {"amplitude", "lattice_spacing", "seed"}, "terrain")
    if isinstance(doc["terrain"]["seed"], bool) or not isinstance(doc["terrain"]["seed"], int):
        raise MalformedDocument("terrain.seed", f"expected integer, got {doc['terrain']['seed']!r}")
    try:
        terrain = TerrainParams(
            amplitude=_number(doc["terrain"]["amplitude"], "terrain.amplitude"),
            lattice_spacing=_number(doc["terrain"]["lattice_spacing"], "terrain.lattice_spacing"),
            seed=doc["terrain"]["seed"],
        )
    except ValueError as exc:
        raise MalformedDocument("terrain", str(exc)) from None

    scene = Scene(seed=doc["seed"], terrain=terrain, water=water, agent=agent)

    if not isinstance(doc["objects"], list):
        raise MalformedDocument("objects", "expected an array")
    max_id = 0
    for i, entry in enumerate(doc["objects"]):
        where = f"objects[{i}]"
        _expect_keys(entry, {"id", "kind", "position", "orientation"}, where)
        oid = entry["id"]
        if isinstance(oid, bool) or not isinstance(oid, int) or oid < 1:
            raise MalformedDocument(f"{where}.id", f"expected positive integer, got {oid!r}")
        if oid in scene.objects:
            raise MalformedDocument(f"{where}.id", f"duplicate id {oid}")
        try:
            kind = ObjectKind.parse(entry["kind"])
        except UnknownKind:
            raise MalformedDocument(f"{where}.kind", f"unknown kind {entry['kind']!r}") from None
        scene.objects[oid] = SceneObject(
            id=oid,
            kind=kind,
            pose=Pose(
                Vec3(*_triple(entry["position"], f"{where}.position")),
                Orientation(*_triple(entry["orientation"], f"{where}.orientation")),
            ),
            bounding_radius=BOUNDING_RADIUS[kind],
        )
        max_id = max(max_id, oid)

    if isinstance(doc["next_id"], bool) or not isinstance(doc["next_id"], int):
        raise MalformedDocument("next_id", f"expected integer, got {doc['next_id']!r}")
    if doc["next_id"] <= max_id:
        raise MalformedDocument(
            "next_id", f"next_id {doc['next_id']} not greater than existing id {max_id}"
        )
    scene.next_id = doc["next_id"]
    return scene


def scene_from_json(text: str) -> Scene:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument("$", f"invalid JSON: {exc}") from None
    return load_scene(doc)

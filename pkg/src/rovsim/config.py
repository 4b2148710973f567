"""Run configuration: one JSON file describing world, run, provider, camera.

Every section is optional and falls back to defaults; unknown keys and
out-of-range values raise ConfigError naming the offending field path.
See examples/ in the repository root for a complete documented file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .bridge import DEFAULT_API_KEY_ENV, ProviderConfig
from .camera import CameraIntrinsics
from .executor import RunConfig
from .geometry import Vec3
from .scene import ObjectKind, TerrainParams, WaterProperties
from .worldgen import ScatterSpec

__all__ = ["AppConfig", "ConfigError", "SnapshotConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    def __init__(self, path: str, problem: str) -> None:
        super().__init__(f"{path}: {problem}")
        self.path = path
        self.problem = problem


@dataclass(frozen=True, slots=True)
class SnapshotConfig:
    enabled: bool = False
    width: int = 256
    height: int = 256
    bounds: tuple[float, float, float, float] = (-30.0, -30.0, 30.0, 30.0)


@dataclass(frozen=True, slots=True)
class AppConfig:
    run: RunConfig = field(default_factory=RunConfig)
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    scatter: ScatterSpec = field(default_factory=ScatterSpec)
    terrain: TerrainParams = field(default_factory=TerrainParams)
    water: WaterProperties = field(default_factory=WaterProperties)
    intrinsics: CameraIntrinsics = field(default_factory=CameraIntrinsics)
    snapshot: SnapshotConfig = field(default_factory=SnapshotConfig)
    output_dir: str = "runs/out"
    service_port: int = 8000


class _Section:
    """Key-checked view over one level of the config document."""

    def __init__(self, data: dict, path: str, keys: set[str]) -> None:
        if not isinstance(data, dict):
            raise ConfigError(path, f"expected an object, got {type(data).__name__}")
        for key in data:
            if key not in keys:
                raise ConfigError(f"{path}.{key}" if path else key, "unknown key")
        self.data = data
        self.path = path

    def _where(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def get(self, key: str, default):
        return self.data.get(key, default)

    def number(self, key: str, default: float) -> float:
        value = self.data.get(key, default)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(self._where(key), f"expected a number, got {value!r}")
        return float(value)

    def integer(self, key: str, default: int) -> int:
        value = self.data.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(self._where(key), f"expected an integer, got {value!r}")
        return value

    def text(self, key: str, default: str) -> str:
        value = self.data.get(key, default)
        if not isinstance(value, str):
            raise ConfigError(self._where(key), f"expected a string, got {value!r}")
        return value

    def boolean(self, key: str, default: bool) -> bool:
        value = self.data.get(key, default)
        if not isinstance(value, bool):
            raise ConfigError(self._where(key), f"expected true or false, got {value!r}")
        return value

    def numbers(self, key: str, default: tuple, count: int) -> tuple:
        value = self.data.get(key, list(default))
        if not isinstance(value, list) or len(value) != count:
            raise ConfigError(self._where(key), f"expected an array of {count} numbers")
        out = []
        for i, item in enumerate(value):
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"{self._where(key)}[{i}]", f"expected a number, got {item!r}")
            out.append(float(item))
        return tuple(out)


def parse_config(doc: dict, base_dir: Path | None = None) -> AppConfig:
    """Build an AppConfig from a parsed JSON document.

    Relative fixture and output paths resolve against `base_dir` (the
    config file's directory) when given.
    """
    top = _Section(
        doc,
        "",
        {"run", "provider", "world", "camera", "snapshot", "output_dir", "service_port"},
    )

    run_s = _Section(top.get("run", {}), "run", {
        "frame_limit", "action_interval_frames", "capture_interval_frames",
        "interaction_interval_frames", "mode", "predefined_instructions",
    })
    instructions = run_s.get("predefined_instructions", [])
    if not isinstance(instructions, list) or any(not isinstance(i, str) for i in instructions):
        raise ConfigError("run.predefined_instructions", "expected an array of strings")
    run_fields = {}
    for key, default in (
        ("frame_limit", 1000),
        ("action_interval_frames", 8),
        ("capture_interval_frames", 8),
        ("interaction_interval_frames", 64),
    ):
        value = run_s.integer(key, default)
        if value < 1:
            raise ConfigError(f"run.{key}", f"must be >= 1, got {value}")
        run_fields[key] = value
    mode = run_s.text("mode", "without_input")
    if mode not in ("with_input", "without_input"):
        raise ConfigError("run.mode", f"expected 'with_input' or 'without_input', got {mode!r}")
    run = RunConfig(mode=mode, predefined_instructions=tuple(instructions), **run_fields)

    prov_s = _Section(top.get("provider", {}), "provider", {
        "kind", "endpoint", "model", "timeout_seconds", "max_retries", "api_key_env", "fixtures",
    })
    fixtures = prov_s.text("fixtures", "")
    if fixtures and base_dir is not None and not Path(fixtures).is_absolute():
        fixtures = str(base_dir / fixtures)
    try:
        provider = ProviderConfig(
            kind=prov_s.text("kind", "replay"),
            endpoint=prov_s.text("endpoint", ""),
            model=prov_s.text("model", ""),
            timeout_seconds=prov_s.number("timeout_seconds", 30.0),
            max_retries=prov_s.integer("max_retries", 3),
            api_key_env=prov_s.text("api_key_env", DEFAULT_API_KEY_ENV),
            fixtures_path=fixtures,
        )
    except ValueError as exc:
        raise ConfigError("provider", str(exc)) from None

    world_s = _Section(top.get("world", {}), "world", {"seed", "region", "counts", "terrain", "water"})
    seed = world_s.integer("seed", 0)
    region = world_s.numbers("region", (-30.0, -30.0, 30.0, 30.0), 4)
    counts_doc = world_s.get("counts", {})
    if not isinstance(counts_doc, dict):
        raise ConfigError("world.counts", "expected an object of kind -> count")
    counts: dict[ObjectKind, int] = {}
    for name, count in counts_doc.items():
        try:
            kind = ObjectKind(name)
        except ValueError:
            raise ConfigError(f"world.counts.{name}", "unknown object kind") from None
        if isinstance(count, bool) or not isinstance(count, int) or count < 0:
            raise ConfigError(f"world.counts.{name}", f"expected a non-negative integer, got {count!r}")
        counts[kind] = count
    terr_s = _Section(world_s.get("terrain", {}), "world.terrain", {"amplitude", "lattice_spacing", "seed"})
    try:
        terrain = TerrainParams(
            amplitude=terr_s.number("amplitude", 0.5),
            lattice_spacing=terr_s.number("lattice_spacing", 8.0),
            seed=terr_s.integer("seed", seed),
        )
    except ValueError as exc:
        raise ConfigError("world.terrain", str(exc)) from None
    water_s = _Section(world_s.get("water", {}), "world.water", {"color", "turbidity"})
    try:
        water = WaterProperties(
            color=water_s.numbers("color", (0.1, 0.3, 0.4), 3),
            turbidity=water_s.number("turbidity", 0.0),
        )
    except ValueError as exc:
        raise ConfigError("world.water", str(exc)) from None
    try:
        scatter = ScatterSpec(counts=counts, region=region, seed=seed)
    except ValueError as exc:
        raise ConfigError("world", str(exc)) from None

    cam_s = _Section(top.get("camera", {}), "camera", {
        "horizontal_fov_deg", "width", "height", "mount_offset",
    })
    try:
        intrinsics = CameraIntrinsics(
            horizontal_fov_deg=cam_s.number("horizontal_fov_deg", 90.0),
            width=cam_s.integer("width", 640),
            height=cam_s.integer("height", 480),
            mount_offset=Vec3(*cam_s.numbers("mount_offset", (0.2, 0.0, 0.0), 3)),
        )
    except ValueError as exc:
        raise ConfigError("camera", str(exc)) from None

    snap_s = _Section(top.get("snapshot", {}), "snapshot", {"enabled", "width", "height", "bounds"})
    snapshot = SnapshotConfig(
        enabled=snap_s.boolean("enabled", False),
        width=snap_s.integer("width", 256),
        height=snap_s.integer("height", 256),
        bounds=snap_s.numbers("bounds", (-30.0, -30.0, 30.0, 30.0), 4),
    )
    if snapshot.width < 1 or snapshot.height < 1:
        raise ConfigError("snapshot", "resolution must be at least 1x1")

    # Fixtures travel with the config file; output lands where the tool runs.
    output_dir = top.get("output_dir", "runs/out")
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("output_dir", f"expected a non-empty string, got {output_dir!r}")

    port = top.get("service_port", 8000)
    if isinstance(port, bool) or not isinstance(port, int) or not (1 <= port <= 65535):
        raise ConfigError("service_port", f"expected a port in [1, 65535], got {port!r}")

    return AppConfig(
        run=run,
        provider=provider,
        scatter=scatter,
        terrain=terrain,
        water=water,
        intrinsics=intrinsics,
        snapshot=snapshot,
        output_dir=output_dir,
        service_port=port,
    )


def load_config(path: str | Path) -> AppConfig:
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(str(path), "top level must be an object")
    return parse_config(doc, base_dir=p.parent)

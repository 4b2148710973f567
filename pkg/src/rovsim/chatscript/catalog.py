"""The function catalog: the whitelist the validator and prompt share.

Adding a function here is the single extension point; the validator, the
evaluator dispatch, and the system prompt all derive from this table.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..scene import ObjectKind


class ValueType(enum.Enum):
    NUMBER = "number"
    TEXT = "text"
    VEC3 = "vector"


class ArgKind(enum.Enum):
    """What a parameter slot accepts."""

    NUMBER = "number"
    VEC3 = "(x, y, z) tuple"
    NAME = "name"  # text literal or bare identifier
    RANGE = "(x, y, z) or (x, y) corner"


@dataclass(frozen=True, slots=True)
class Param:
    name: str
    kind: ArgKind


@dataclass(frozen=True, slots=True)
class CatalogFunction:
    name: str
    params: tuple[Param, ...]
    returns: ValueType | None
    signature: str
    description: str

    @property
    def arity(self) -> int:
        return len(self.params)


_KINDS = ", ".join(k.value for k in ObjectKind)

_FUNCTIONS = (
    CatalogFunction(
        name="set_bot_position",
        params=(Param("point", ArgKind.VEC3),),
        returns=None,
        signature="set_bot_position((x, y, z))",
        description="Move the agent to the given x, y, z coordinates in meters.",
    ),
    CatalogFunction(
        name="get_position",
        params=(Param("object_name", ArgKind.NAME),),
        returns=ValueType.VEC3,
        signature="get_position(object_name)",
        description='Return the x, y, z coordinates of a named object such as "oyster_1".',
    ),
    CatalogFunction(
        name="get_bot_position",
        params=(),
        returns=ValueType.VEC3,
        signature="get_bot_position()",
        description="Return the agent's current x, y, z coordinates.",
    ),
    CatalogFunction(
        name="set_yaw",
        params=(Param("angle", ArgKind.NUMBER),),
        returns=None,
        signature="set_yaw(angle)",
        description="Set the agent's yaw angle, in degrees.",
    ),
    CatalogFunction(
        name="set_pitch",
        params=(Param("angle", ArgKind.NUMBER),),
        returns=None,
        signature="set_pitch(angle)",
        description="Set the agent's pitch angle, in degrees.",
    ),
    CatalogFunction(
        name="set_roll",
        params=(Param("angle", ArgKind.NUMBER),),
        returns=None,
        signature="set_roll(angle)",
        description="Set the agent's roll angle, in degrees.",
    ),
    CatalogFunction(
        name="put_object",
        params=(
            Param("kind", ArgKind.NAME),
            Param("position", ArgKind.VEC3),
            Param("orientation", ArgKind.VEC3),
        ),
        returns=None,
        signature="put_object(kind, (x, y, z), (yaw, pitch, roll))",
        description=f"Add an object at a position with orientation angles in degrees. Kinds: {_KINDS}.",
    ),
    CatalogFunction(
        name="delete_objects_in_range",
        params=(Param("lower", ArgKind.RANGE), Param("upper", ArgKind.RANGE)),
        returns=None,
        signature="delete_objects_in_range((min_x, min_y, min_z), (max_x, max_y, max_z))",
        description=(
            "Delete every object inside the axis-aligned box between the two corners, "
            "bounds inclusive. Corners may be (x, y) pairs to span all depths."
        ),
    ),
    CatalogFunction(
        name="put_bot_switch",
        params=(Param("coordinates", ArgKind.VEC3),),
        returns=None,
        signature="put_bot_switch((x, y, z))",
        description="Add a stationary non-agent BlueROV at the given coordinates.",
    ),
    CatalogFunction(
        name="set_water",
        params=(Param("color", ArgKind.VEC3), Param("turbidity", ArgKind.NUMBER)),
        returns=None,
        signature="set_water((r, g, b), turbidity)",
        description="Set the water color (components in [0, 1]) and non-negative turbidity.",
    ),
)

CATALOG: dict[str, CatalogFunction] = {fn.name: fn for fn in _FUNCTIONS}

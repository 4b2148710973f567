"""Script evaluation: lowers a validated script to a Command sequence.

Evaluation is pure with respect to the scene: getters read the snapshot it
is given, nothing mutates it, and the only output is the command list.
Value-level failures (division by zero, unknown object names) surface as
EvalError with the offending source position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from ..geometry import Orientation, Vec3
from ..scene import NegativeTurbidity, ObjectKind, Scene, UnknownKind, UnknownObject
from . import commands as cmd
from .catalog import CATALOG
from .nodes import (
    Assign,
    Binary,
    CallExpr,
    CallStmt,
    Expr,
    FieldAccess,
    NumberLit,
    Script,
    TextLit,
    TupleLit,
    VarRef,
)
from .printer import format_expr

# Planar delete ranges span "all depths" via finite z sentinels; commands
# must not carry infinities.
PLANAR_RANGE_Z = 1e9


class EvalError(ValueError):
    def __init__(self, code: str, line: int, column: int, message: str) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.code = code
        self.line = line
        self.column = column
        self.reason = message


@dataclass(frozen=True, slots=True)
class _Pair:
    a: float
    b: float


Value = Union[float, str, Vec3, _Pair]


def evaluate(script: Script, scene: Scene) -> list[cmd.Command]:
    """Run a script with an empty validation report against a scene snapshot."""
    env: dict[str, Value] = {}
    out: list[cmd.Command] = []
    for stmt in script.statements:
        if isinstance(stmt, Assign):
            env[stmt.name] = _eval(stmt.value, env, scene)
        elif isinstance(stmt, CallStmt):
            command = _lower_call(stmt.call, env, scene)
            cmd.check_finite(command)
            out.append(command)
    return out


def _eval(expr: Expr, env: dict[str, Value], scene: Scene) -> Value:
    if isinstance(expr, NumberLit):
        _require_finite(expr.value, expr)
        return expr.value
    if isinstance(expr, TextLit):
        return expr.value
    if isinstance(expr, TupleLit):
        parts = [_number(_eval(e, env, scene), e) for e in expr.elements]
        if len(parts) == 2:
            return _Pair(parts[0], parts[1])
        try:
            return Vec3(parts[0], parts[1], parts[2])
        except ValueError:
            raise EvalError(
                "NonFiniteResult", expr.line, expr.column, "tuple component is not finite"
            ) from None
    if isinstance(expr, VarRef):
        return env[expr.name]  # validation guarantees the binding exists
    if isinstance(expr, FieldAccess):
        base = _eval(expr.base, env, scene)
        assert isinstance(base, Vec3)
        return getattr(base, expr.fieldname)
    if isinstance(expr, Binary):
        lhs = _number(_eval(expr.lhs, env, scene), expr.lhs)
        rhs = _number(_eval(expr.rhs, env, scene), expr.rhs)
        if expr.op == "+":
            result = lhs + rhs
        elif expr.op == "-":
            result = lhs - rhs
        elif expr.op == "*":
            result = lhs * rhs
        else:
            if rhs == 0.0:
                raise EvalError("DivisionByZero", expr.line, expr.column, "division by zero")
            result = lhs / rhs
        _require_finite(result, expr)
        return result
    if isinstance(expr, CallExpr):
        return _eval_getter(expr, env, scene)
    raise TypeError(f"unknown expression node {expr!r}")  # pragma: no cover


def _eval_getter(call: CallExpr, env: dict[str, Value], scene: Scene) -> Value:
    if call.fn == "get_bot_position":
        return scene.get_bot_position()
    if call.fn == "get_position":
        name = _name_arg(call.args[0], env)
        try:
            return scene.get_position(name)
        except UnknownObject:
            raise EvalError(
                "UnknownObject", call.line, call.column, f"no such object {name!r}"
            ) from None
    raise TypeError(f"{call.fn} is not a value-returning function")  # pragma: no cover


def _lower_call(call: CallExpr, env: dict[str, Value], scene: Scene) -> cmd.Command:
    fn = CATALOG[call.fn]
    if fn.returns is not None:
        value = _eval_getter(call, env, scene)
        return cmd.LogValue(label=format_expr(call), value=value)

    if call.fn == "set_bot_position":
        return cmd.SetBotPosition(_vec(call.args[0], env, scene))
    if call.fn == "set_yaw":
        return cmd.SetYaw(_number(_eval(call.args[0], env, scene), call.args[0]))
    if call.fn == "set_pitch":
        return cmd.SetPitch(_number(_eval(call.args[0], env, scene), call.args[0]))
    if call.fn == "set_roll":
        return cmd.SetRoll(_number(_eval(call.args[0], env, scene), call.args[0]))
    if call.fn == "put_object":
        kind_name = _name_arg(call.args[0], env)
        try:
            kind = ObjectKind.parse(kind_name)
        except UnknownKind:
            raise EvalError(
                "UnknownKind", call.line, call.column, f"unknown object kind {kind_name!r}"
            ) from None
        position = _vec(call.args[1], env, scene)
        angles = _vec(call.args[2], env, scene)
        return cmd.PutObject(kind, position, Orientation(angles.x, angles.y, angles.z))
    if call.fn == "delete_objects_in_range":
        lower = _corner(call.args[0], env, scene, z=-PLANAR_RANGE_Z)
        upper = _corner(call.args[1], env, scene, z=PLANAR_RANGE_Z)
        return cmd.DeleteObjectsInRange(lower, upper)
    if call.fn == "put_bot_switch":
        return cmd.PutBotSwitch(_vec(call.args[0], env, scene))
    if call.fn == "set_water":
        color = _vec(call.args[0], env, scene)
        turbidity = _number(_eval(call.args[1], env, scene), call.args[1])
        if turbidity < 0:
            raise EvalError(
                "NegativeTurbidity",
                call.line,
                call.column,
                f"turbidity must be >= 0, got {turbidity}",
            )
        return cmd.SetWater((color.x, color.y, color.z), turbidity)
    raise TypeError(f"unknown catalog function {call.fn!r}")  # pragma: no cover


# -- argument coercion --------------------------------------------------------


def _name_arg(arg: Expr, env: dict[str, Value]) -> str:
    # Validation only admits text here, and the sole text-typed expressions
    # are literals and variables bound to literals.
    if isinstance(arg, TextLit):
        return arg.value
    assert isinstance(arg, VarRef)
    if arg.name in env:
        value = env[arg.name]
        assert isinstance(value, str)
        return value
    return arg.name  # bare identifier used as a literal name


def _vec(arg: Expr, env: dict[str, Value], scene: Scene) -> Vec3:
    value = _eval(arg, env, scene)
    assert isinstance(value, Vec3)
    return value


def _corner(arg: Expr, env: dict[str, Value], scene: Scene, z: float) -> Vec3:
    value = _eval(arg, env, scene)
    if isinstance(value, _Pair):
        return Vec3(value.a, value.b, z)
    assert isinstance(value, Vec3)
    return value


def _number(value: Value, at: Expr) -> float:
    assert isinstance(value, float), f"expected number at {at.line}:{at.column}"
    return value


def _require_finite(value: float, at: Expr) -> None:
    if not math.isfinite(value):
        raise EvalError("NonFiniteResult", at.line, at.column, "arithmetic result is not finite")

"""Whitelist and type checking over parsed scripts.

Findings are data, never exceptions: an empty report means the script is
executable.  The checks here are sound for their codes; a script with an
empty report can still fail at evaluation time for value-level reasons
(division by zero, unknown object names held in variables).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from ..scene import ObjectKind
from .catalog import CATALOG, ArgKind, CatalogFunction, ValueType
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


class _T(enum.Enum):
    """Inferred expression types; ERROR marks already-reported subtrees."""

    NUMBER = "number"
    TEXT = "text"
    VEC3 = "vector"
    PAIR = "planar corner"
    ERROR = "error"


@dataclass(frozen=True, slots=True)
class Finding:
    severity: str
    code: str
    line: int
    column: int
    message: str

    def render(self) -> str:
        return f"{self.line}:{self.column} {self.code} {self.message}"


@dataclass(slots=True)
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def add(self, code: str, line: int, column: int, message: str) -> None:
        self.findings.append(Finding("error", code, line, column, message))

    def render_lines(self) -> list[str]:
        return [f.render() for f in self.findings]


def validate(script: Script, catalog: dict[str, CatalogFunction] = CATALOG) -> ValidationReport:
    """Check every call against the catalog and every variable against scope."""
    report = ValidationReport()
    env: dict[str, _T] = {}
    for stmt in script.statements:
        if isinstance(stmt, Assign):
            t = _infer(stmt.value, env, report, catalog)
            env[stmt.name] = t
        elif isinstance(stmt, CallStmt):
            _check_call(stmt.call, env, report, catalog, toplevel=True)
    return report


def _infer(expr: Expr, env: dict[str, _T], report: ValidationReport, catalog) -> _T:
    if isinstance(expr, NumberLit):
        if not math.isfinite(expr.value):
            report.add(
                "NonFiniteLiteral", expr.line, expr.column, "number literal overflows to infinity"
            )
        return _T.NUMBER
    if isinstance(expr, TextLit):
        return _T.TEXT
    if isinstance(expr, TupleLit):
        bad = False
        for element in expr.elements:
            t = _infer(element, env, report, catalog)
            if t is _T.ERROR:
                bad = True
            elif t is not _T.NUMBER:
                report.add(
                    "TypeMismatch",
                    element.line,
                    element.column,
                    f"tuple element must be a number, got {t.value}",
                )
                bad = True
        if bad:
            return _T.ERROR
        return _T.VEC3 if len(expr.elements) == 3 else _T.PAIR
    if isinstance(expr, VarRef):
        t = env.get(expr.name)
        if t is None:
            report.add("UnboundVariable", expr.line, expr.column, f"variable {expr.name!r} is not bound")
            return _T.ERROR
        return t
    if isinstance(expr, FieldAccess):
        base = _infer(expr.base, env, report, catalog)
        if base is _T.ERROR:
            return _T.ERROR
        if base is not _T.VEC3:
            report.add(
                "TypeMismatch",
                expr.line,
                expr.column,
                f".{expr.fieldname} applies to vectors, got {base.value}",
            )
            return _T.ERROR
        return _T.NUMBER
    if isinstance(expr, Binary):
        lt = _infer(expr.lhs, env, report, catalog)
        rt = _infer(expr.rhs, env, report, catalog)
        ok = True
        for side, t in (("left", lt), ("right", rt)):
            if t in (_T.ERROR, _T.NUMBER):
                continue
            report.add(
                "TypeMismatch",
                expr.line,
                expr.column,
                f"{side} operand of {expr.op!r} must be a number, got {t.value}",
            )
            ok = False
        return _T.NUMBER if ok and _T.ERROR not in (lt, rt) else _T.ERROR
    if isinstance(expr, CallExpr):
        fn = _check_call(expr, env, report, catalog, toplevel=False)
        if fn is None:
            return _T.ERROR
        if fn.returns is None:
            report.add(
                "TypeMismatch",
                expr.line,
                expr.column,
                f"{fn.name} does not return a value and cannot be used in an expression",
            )
            return _T.ERROR
        return {ValueType.NUMBER: _T.NUMBER, ValueType.TEXT: _T.TEXT, ValueType.VEC3: _T.VEC3}[
            fn.returns
        ]
    raise TypeError(f"unknown expression node {expr!r}")  # pragma: no cover


_KIND_NAMES = {k.value for k in ObjectKind}


def _check_call(
    call: CallExpr,
    env: dict[str, _T],
    report: ValidationReport,
    catalog: dict[str, CatalogFunction],
    toplevel: bool,
) -> CatalogFunction | None:
    fn = catalog.get(call.fn)
    if fn is None:
        report.add("UnknownFunction", call.line, call.column, f"{call.fn!r} is not a known function")
        # Still walk the arguments so unbound variables inside are reported.
        for arg in call.args:
            _infer(arg, env, report, catalog)
        return None
    if len(call.args) != fn.arity:
        report.add(
            "ArityMismatch",
            call.line,
            call.column,
            f"{fn.name} takes {fn.arity} argument{'s' if fn.arity != 1 else ''}, got {len(call.args)}",
        )
    for param, arg in zip(fn.params, call.args):
        _check_arg(fn, param.kind, param.name, arg, env, report, catalog)
    for arg in call.args[fn.arity :]:
        _infer(arg, env, report, catalog)
    return fn


def _check_arg(fn, kind: ArgKind, pname: str, arg: Expr, env, report, catalog) -> None:
    if kind is ArgKind.NAME:
        # A name slot takes a text literal or a bare identifier; a bound
        # identifier must hold text.
        if isinstance(arg, TextLit):
            name: str | None = arg.value
        elif isinstance(arg, VarRef):
            if arg.name in env:
                if env[arg.name] not in (_T.TEXT, _T.ERROR):
                    report.add(
                        "TypeMismatch",
                        arg.line,
                        arg.column,
                        f"{pname} of {fn.name} must be text, "
                        f"variable {arg.name!r} holds a {env[arg.name].value}",
                    )
                return
            name = arg.name
        else:
            t = _infer(arg, env, report, catalog)
            if t not in (_T.TEXT, _T.ERROR):
                report.add(
                    "TypeMismatch",
                    arg.line,
                    arg.column,
                    f"{pname} of {fn.name} must be a name, got {t.value}",
                )
            return
        if fn.name == "put_object" and name is not None and name not in _KIND_NAMES:
            report.add(
                "TypeMismatch",
                arg.line,
                arg.column,
                f"unknown object kind {name!r}",
            )
        return

    t = _infer(arg, env, report, catalog)
    if t is _T.ERROR:
        return
    if kind is ArgKind.NUMBER and t is not _T.NUMBER:
        report.add(
            "TypeMismatch",
            arg.line,
            arg.column,
            f"{pname} of {fn.name} must be a number, got {t.value}",
        )
    elif kind is ArgKind.VEC3 and t is not _T.VEC3:
        report.add(
            "TypeMismatch",
            arg.line,
            arg.column,
            f"{pname} of {fn.name} must be an (x, y, z) tuple, got {t.value}",
        )
    elif kind is ArgKind.RANGE and t not in (_T.VEC3, _T.PAIR):
        report.add(
            "TypeMismatch",
            arg.line,
            arg.column,
            f"{pname} of {fn.name} must be an (x, y, z) or (x, y) corner, got {t.value}",
        )

"""Canonical script rendering: one statement per line, minimal parentheses.

`parse(pretty_print(s))` is structurally equal to `s` for every parseable
script, which makes the printed form a safe canonical archive format.
"""

from __future__ import annotations

import math

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

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}
_ATOM_PRECEDENCE = 9


def format_number(value: float) -> str:
    """Shortest round-trip spelling; integral values lose the '.0'."""
    if math.isinf(value):
        return "1e999" if value > 0 else "-1e999"
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def format_text(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{escaped}"'


def format_expr(expr: Expr) -> str:
    return _render(expr, parent_prec=0, right_operand=False)


def _render(expr: Expr, parent_prec: int, right_operand: bool) -> str:
    if isinstance(expr, NumberLit):
        return format_number(expr.value)
    if isinstance(expr, TextLit):
        return format_text(expr.value)
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, FieldAccess):
        return f"{_render(expr.base, _ATOM_PRECEDENCE, False)}.{expr.fieldname}"
    if isinstance(expr, CallExpr):
        args = ", ".join(_render(a, 0, False) for a in expr.args)
        return f"{expr.fn}({args})"
    if isinstance(expr, TupleLit):
        inner = ", ".join(_render(e, 0, False) for e in expr.elements)
        return f"({inner})"
    if isinstance(expr, Binary):
        prec = _PRECEDENCE[expr.op]
        lhs = _render(expr.lhs, prec, False)
        rhs = _render(expr.rhs, prec, True)
        text = f"{lhs} {expr.op} {rhs}"
        # Parens keep left-associative reparses structurally faithful.
        if prec < parent_prec or (prec == parent_prec and right_operand):
            return f"({text})"
        return text
    raise TypeError(f"unknown expression node {expr!r}")


def pretty_print(script: Script) -> str:
    lines = []
    for stmt in script.statements:
        if isinstance(stmt, Assign):
            lines.append(f"let {stmt.name} = {format_expr(stmt.value)}")
        elif isinstance(stmt, CallStmt):
            lines.append(format_expr(stmt.call))
        else:  # pragma: no cover
            raise TypeError(f"unknown statement node {stmt!r}")
    return "\n".join(lines) + ("\n" if lines else "")

"""Syntax tree for ChatScript.

Position fields are excluded from equality so structural comparison
ignores formatting; `parse(pretty_print(s))` must equal `s`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True, slots=True)
class NumberLit:
    value: float
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class TextLit:
    value: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class TupleLit:
    """Parenthesized element list; 3 elements make a vector, 2 a planar range."""

    elements: tuple["Expr", ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class VarRef:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class FieldAccess:
    base: "Expr"
    fieldname: str  # "x" | "y" | "z"
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class Binary:
    op: str  # "+" | "-" | "*" | "/"
    lhs: "Expr"
    rhs: "Expr"
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class CallExpr:
    fn: str
    args: tuple["Expr", ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Expr = Union[NumberLit, TextLit, TupleLit, VarRef, FieldAccess, Binary, CallExpr]


@dataclass(frozen=True, slots=True)
class Assign:
    name: str
    value: Expr
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class CallStmt:
    call: CallExpr
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Stmt = Union[Assign, CallStmt]


@dataclass(frozen=True, slots=True)
class Script:
    statements: tuple[Stmt, ...]
    source: str = field(default="", compare=False)
    source_hash: str = field(default="", compare=False)

    @staticmethod
    def hash_source(source: str) -> str:
        return hashlib.sha256(source.encode("utf-8")).hexdigest()

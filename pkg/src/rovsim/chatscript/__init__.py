"""ChatScript: the constrained command language the model must emit.

A script is a newline- or semicolon-separated list of whitelisted calls
and `let` bindings with tuple/arithmetic expressions.  No loops, no
conditionals, no user-defined functions: anything outside the catalog is
unrepresentable, which is the whole point.
"""

from .tokens import LexError, Token, TokenKind, tokenize
from .nodes import (
    Assign,
    Binary,
    CallExpr,
    CallStmt,
    Expr,
    FieldAccess,
    NumberLit,
    Script,
    Stmt,
    TextLit,
    TupleLit,
    VarRef,
)
from .parser import MAX_NESTING_DEPTH, ParseError, parse
from .printer import format_expr, pretty_print
from .extract import extract_script
from .catalog import CATALOG, ArgKind, CatalogFunction, Param, ValueType
from .commands import (
    Command,
    DeleteObjectsInRange,
    LogValue,
    PutBotSwitch,
    PutObject,
    SetBotPosition,
    SetPitch,
    SetRoll,
    SetWater,
    SetYaw,
    describe_command,
)
from .validator import Finding, ValidationReport, validate
from .evaluator import EvalError, evaluate

__all__ = [
    "LexError",
    "Token",
    "TokenKind",
    "tokenize",
    "Assign",
    "Binary",
    "CallExpr",
    "CallStmt",
    "Expr",
    "FieldAccess",
    "NumberLit",
    "Script",
    "Stmt",
    "TextLit",
    "TupleLit",
    "VarRef",
    "MAX_NESTING_DEPTH",
    "ParseError",
    "parse",
    "format_expr",
    "pretty_print",
    "extract_script",
    "CATALOG",
    "ArgKind",
    "CatalogFunction",
    "Param",
    "ValueType",
    "Command",
    "DeleteObjectsInRange",
    "LogValue",
    "PutBotSwitch",
    "PutObject",
    "SetBotPosition",
    "SetPitch",
    "SetRoll",
    "SetWater",
    "SetYaw",
    "describe_command",
    "Finding",
    "ValidationReport",
    "validate",
    "EvalError",
    "evaluate",
]

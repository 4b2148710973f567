"""Random script-tree generator for parse/print round-trip fuzzing."""

from __future__ import annotations

import math
import random

from rovsim.chatscript.nodes import (
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

_IDENTS = ["a", "b", "p", "q", "pos", "target", "v_1", "spot3", "_tmp", "x", "y", "z"]
_FNS = ["set_yaw", "get_bot_position", "put_object", "fn", "do_thing_2", "Zeta"]
_OPS = "+-*/"
_TEXT_ALPHABET = 'abc XYZ_09."\\\n\t-'


def _number(rng: random.Random) -> NumberLit:
    roll = rng.random()
    if roll < 0.45:
        return NumberLit(float(rng.randint(-100, 100)))
    if roll < 0.85:
        return NumberLit(rng.uniform(-1000.0, 1000.0))
    if roll < 0.95:
        return NumberLit(rng.uniform(-1e15, 1e15))
    return NumberLit(math.inf if rng.random() < 0.5 else -math.inf)


def _text(rng: random.Random) -> TextLit:
    n = rng.randint(0, 8)
    return TextLit("".join(rng.choice(_TEXT_ALPHABET) for _ in range(n)))


def _call(rng: random.Random, depth: int) -> CallExpr:
    argc = rng.randint(0, 3)
    return CallExpr(rng.choice(_FNS), tuple(gen_expr(rng, depth - 1) for _ in range(argc)))


def gen_expr(rng: random.Random, depth: int) -> Expr:
    if depth <= 0:
        roll = rng.random()
        if roll < 0.5:
            return _number(rng)
        if roll < 0.7:
            return _text(rng)
        return VarRef(rng.choice(_IDENTS))
    roll = rng.random()
    if roll < 0.25:
        return _number(rng)
    if roll < 0.32:
        return _text(rng)
    if roll < 0.42:
        return VarRef(rng.choice(_IDENTS))
    if roll < 0.52:
        base: Expr = VarRef(rng.choice(_IDENTS)) if rng.random() < 0.7 else _call(rng, depth)
        return FieldAccess(base, rng.choice("xyz"))
    if roll < 0.72:
        return Binary(
            rng.choice(_OPS), gen_expr(rng, depth - 1), gen_expr(rng, depth - 1)
        )
    if roll < 0.85:
        return _call(rng, depth)
    size = 3 if rng.random() < 0.7 else 2
    return TupleLit(tuple(gen_expr(rng, depth - 1) for _ in range(size)))


def gen_stmt(rng: random.Random, depth: int) -> Stmt:
    if rng.random() < 0.35:
        return Assign(rng.choice(_IDENTS), gen_expr(rng, depth))
    return CallStmt(_call(rng, depth))


def gen_script(rng: random.Random, max_stmts: int = 6, depth: int = 4) -> Script:
    count = rng.randint(0, max_stmts)
    return Script(tuple(gen_stmt(rng, depth) for _ in range(count)))

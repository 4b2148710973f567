import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from rovsim.chatscript import (
    Assign,
    Binary,
    CallExpr,
    CallStmt,
    FieldAccess,
    LexError,
    NumberLit,
    ParseError,
    Script,
    TupleLit,
    VarRef,
    extract_script,
    parse,
    pretty_print,
    tokenize,
)
from script_fuzz import gen_script


# -- extraction ----------------------------------------------------------------


def test_extract_first_fenced_block():
    reply = "Sure! ```\nset_bot_position((15,25,0))\n``` Done."
    assert extract_script(reply) == "set_bot_position((15,25,0))"


def test_extract_bare_reply_verbatim():
    assert extract_script("set_yaw(90)") == "set_yaw(90)"


def test_extract_first_of_two_fences():
    reply = "```\nset_yaw(1)\n```\nmiddle\n```\nset_yaw(2)\n```"
    assert extract_script(reply) == "set_yaw(1)"


def test_extract_drops_language_tag():
    assert extract_script("```python\nset_yaw(5)\n```") == "set_yaw(5)"


def test_extract_inline_fence_and_unterminated():
    assert extract_script("```set_yaw(7)```") == "set_yaw(7)"
    # No closing fence: treated as plain text.
    assert extract_script("``` set_yaw(1)") == "``` set_yaw(1)"


def test_extract_never_fails_on_junk():
    for junk in ["", "``", "``````", "\x00\x01", "`" * 9]:
        assert isinstance(extract_script(junk), str)


# -- lexing ---------------------------------------------------------------------


def test_tokenize_positions_are_one_based():
    toks = tokenize("set_yaw(90)")
    assert toks[0].line == 1 and toks[0].column == 1
    assert toks[1].column == 8


def test_tokenize_unknown_character_is_located():
    with pytest.raises(LexError) as err:
        tokenize("set_yaw(90)\n  @")
    assert err.value.line == 2 and err.value.column == 3


def test_tokenize_unterminated_text():
    with pytest.raises(LexError, match="unterminated"):
        tokenize('get_position("oops')


def test_tokenize_comments_and_blank_lines():
    toks = tokenize("# a comment\n\nset_yaw(1) # trailing\n")
    kinds = [t.kind.name for t in toks]
    assert "IDENT" in kinds and kinds[-1] == "EOF"


# -- parsing ----------------------------------------------------------------------


def test_parse_single_call_tuple_arg():
    script = parse("set_bot_position((15, 25, 0))")
    assert len(script.statements) == 1
    stmt = script.statements[0]
    assert isinstance(stmt, CallStmt)
    assert stmt.call.fn == "set_bot_position"
    assert stmt.call.args == (
        TupleLit((NumberLit(15.0), NumberLit(25.0), NumberLit(0.0))),
    )


def test_parse_empty_source_is_empty_script():
    assert parse("").statements == ()
    assert parse("\n\n  # only a comment\n").statements == ()


def test_parse_let_and_field_arithmetic_tree():
    script = parse("let p = get_bot_position()\nset_bot_position((p.x + 1, p.y, p.z))")
    expected = (
        Assign("p", CallExpr("get_bot_position", ())),
        CallStmt(
            CallExpr(
                "set_bot_position",
                (
                    TupleLit(
                        (
                            Binary("+", FieldAccess(VarRef("p"), "x"), NumberLit(1.0)),
                            FieldAccess(VarRef("p"), "y"),
                            FieldAccess(VarRef("p"), "z"),
                        )
                    ),
                ),
            )
        ),
    )
    assert script.statements == expected


def test_parse_negative_literals_and_pairs():
    script = parse("delete_objects_in_range((-7.5, -7.5), (7.5, 7.5))")
    (stmt,) = script.statements
    assert stmt.call.args == (
        TupleLit((NumberLit(-7.5), NumberLit(-7.5))),
        TupleLit((NumberLit(7.5), NumberLit(7.5))),
    )


def test_parse_unary_minus_desugars_to_zero_minus():
    (stmt,) = parse("set_yaw(-p.x)").statements
    arg = stmt.call.args[0]
    assert arg == Binary("-", NumberLit(0.0), FieldAccess(VarRef("p"), "x"))


def test_parse_semicolon_separated_statements():
    assert len(parse("set_yaw(1); set_pitch(2); set_roll(3)").statements) == 3


def test_parse_operator_precedence():
    (stmt,) = parse("set_yaw(1 + 2 * 3)").statements
    assert stmt.call.args[0] == Binary("+", NumberLit(1.0), Binary("*", NumberLit(2.0), NumberLit(3.0)))


def test_parse_errors_carry_position_and_expectation():
    with pytest.raises(ParseError) as err:
        parse("set_yaw(90")
    assert err.value.line == 1
    assert err.value.expected

    with pytest.raises(ParseError):
        parse("let = 5")
    with pytest.raises(ParseError):
        parse("42")  # bare expression is not a statement
    with pytest.raises(ParseError):
        parse("set_bot_position((1, 2, 3, 4))")  # tuple too wide
    with pytest.raises(ParseError):
        parse("p.w")  # bad field


def test_parse_depth_guard_trips_not_crashes():
    source = "set_yaw(" + "(" * 500 + "1" + ")" * 500 + ")"
    with pytest.raises(ParseError, match="nesting"):
        parse(source)


def test_source_hash_tracks_source():
    a = parse("set_yaw(1)")
    b = parse("set_yaw( 1 )")
    assert a == b  # structural equality ignores formatting
    assert a.source_hash != b.source_hash


# -- pretty printing ---------------------------------------------------------------


def test_pretty_print_normalizes_whitespace():
    assert pretty_print(parse("set_yaw( 90 )")) == "set_yaw(90)\n"


def test_pretty_print_is_fixpoint_after_one_rendering():
    source = "let p = get_bot_position()\nset_bot_position((p.x + 1, p.y, p.z))\ndelete_objects_in_range((-7.5, -7.5), (7.5, 7.5))"
    once = pretty_print(parse(source))
    assert pretty_print(parse(once)) == once


def test_pretty_print_preserves_grouping_parens():
    source = "set_yaw(2 * (1 + 3))"
    script = parse(source)
    assert pretty_print(script) == "set_yaw(2 * (1 + 3))\n"
    assert parse(pretty_print(script)) == script


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_parse_print_fixpoint_property(rng):
    script = gen_script(rng)
    printed = pretty_print(script)
    reparsed = parse(printed)
    assert reparsed == script
    assert pretty_print(reparsed) == printed


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=400))
def test_parse_total_on_arbitrary_text(source):
    try:
        parse(source)
    except (LexError, ParseError):
        pass


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=400))
def test_parse_total_on_arbitrary_bytes(blob):
    source = blob.decode("latin-1")
    try:
        parse(source)
    except (LexError, ParseError):
        pass


def test_large_pathological_inputs_finish_fast():
    cases = [
        "(" * 65536,
        ")" * 65536,
        "a" * 65536,
        ("set_yaw(1)\n" * 5000),
        "1" * 65536,
        "let " * 16000,
        '"' + "x" * 65000,
        "\x00" * 1024,
    ]
    for source in cases:
        started = time.monotonic()
        try:
            parse(source[:65536])
        except (LexError, ParseError):
            pass
        assert time.monotonic() - started < 1.0

"""Recursive-descent parser.

Grammar (statements split on newlines or ';'; comments run '#' to EOL):

    script  := { stmt (NEWLINE | ';') } [stmt]
    stmt    := 'let' IDENT '=' expr | call
    call    := IDENT '(' [ expr { ',' expr } ] ')'
    expr    := term { ('+'|'-') term }
    term    := factor { ('*'|'/') factor }
    factor  := '-' factor
             | NUMBER | TEXTLIT
             | (IDENT | call) ['.' ('x'|'y'|'z')]
             | '(' expr [',' expr [',' expr]] ')'

A lone '-' before a number folds into a negative literal; before anything
else it desugars to `0 - operand`.  A parenthesized single expression is
grouping, two or three comma-separated expressions form a tuple literal.
Nesting depth is capped so pathological input fails fast instead of
blowing the stack.
"""

from __future__ import annotations

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
from .tokens import Token, TokenKind, tokenize

MAX_NESTING_DEPTH = 64

_SEPARATORS = (TokenKind.NEWLINE, TokenKind.SEMICOLON)
_FIELDS = ("x", "y", "z")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, expected: tuple[str, ...] = ()) -> None:
        detail = message
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(f"{line}:{column}: {detail}")
        self.line = line
        self.column = column
        self.reason = message
        self.expected = expected


def parse(source: str) -> Script:
    """Parse source text into a Script; raises LexError or ParseError."""
    return _Parser(source).parse_script()


class _Parser:
    def __init__(self, source: str) -> None:
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self.depth = 0

    # -- token plumbing -------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def expect(self, kind: TokenKind) -> Token:
        tok = self.current
        if tok.kind is not kind:
            raise self.fail(f"unexpected {self._describe(tok)}", (kind.value,))
        return self.advance()

    def fail(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        tok = self.current
        return ParseError(tok.line, tok.column, message, expected)

    @staticmethod
    def _describe(tok: Token) -> str:
        if tok.kind in (TokenKind.IDENT, TokenKind.NUMBER):
            return f"{tok.kind.value} {tok.lexeme!r}"
        return tok.kind.value

    # -- grammar ---------------------------------------------------------

    def parse_script(self) -> Script:
        statements: list[Stmt] = []
        while True:
            while self.current.kind in _SEPARATORS:
                self.advance()
            if self.current.kind is TokenKind.EOF:
                break
            statements.append(self.parse_stmt())
            if self.current.kind in _SEPARATORS:
                self.advance()
            elif self.current.kind is not TokenKind.EOF:
                raise self.fail(
                    f"unexpected {self._describe(self.current)} after statement",
                    ("newline", "';'"),
                )
        return Script(
            statements=tuple(statements),
            source=self.source,
            source_hash=Script.hash_source(self.source),
        )

    def parse_stmt(self) -> Stmt:
        tok = self.current
        if tok.kind is TokenKind.LET:
            self.advance()
            name = self.expect(TokenKind.IDENT)
            self.expect(TokenKind.EQUALS)
            value = self.parse_expr()
            return Assign(name.lexeme, value, line=tok.line, column=tok.column)
        if tok.kind is TokenKind.IDENT:
            call = self.parse_call()
            return CallStmt(call, line=tok.line, column=tok.column)
        raise self.fail(
            f"unexpected {self._describe(tok)} at statement start",
            ("'let'", "function call"),
        )

    def parse_call(self) -> CallExpr:
        name = self.expect(TokenKind.IDENT)
        self.expect(TokenKind.LPAREN)
        args: list[Expr] = []
        if self.current.kind is not TokenKind.RPAREN:
            args.append(self.parse_expr())
            while self.current.kind is TokenKind.COMMA:
                self.advance()
                args.append(self.parse_expr())
        self.expect(TokenKind.RPAREN)
        return CallExpr(name.lexeme, tuple(args), line=name.line, column=name.column)

    def parse_expr(self) -> Expr:
        self._enter()
        try:
            node = self.parse_term()
            while self.current.kind in (TokenKind.PLUS, TokenKind.MINUS):
                op = self.advance()
                rhs = self.parse_term()
                node = Binary(op.lexeme, node, rhs, line=op.line, column=op.column)
            return node
        finally:
            self._leave()

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.current.kind in (TokenKind.STAR, TokenKind.SLASH):
            op = self.advance()
            rhs = self.parse_factor()
            node = Binary(op.lexeme, node, rhs, line=op.line, column=op.column)
        return node

    def parse_factor(self) -> Expr:
        self._enter()
        try:
            tok = self.current

            if tok.kind is TokenKind.MINUS:
                self.advance()
                operand = self.parse_factor()
                if isinstance(operand, NumberLit):
                    return NumberLit(-operand.value, line=tok.line, column=tok.column)
                zero = NumberLit(0.0, line=tok.line, column=tok.column)
                return Binary("-", zero, operand, line=tok.line, column=tok.column)

            if tok.kind is TokenKind.NUMBER:
                self.advance()
                assert isinstance(tok.value, float)
                return NumberLit(tok.value, line=tok.line, column=tok.column)

            if tok.kind is TokenKind.TEXT:
                self.advance()
                assert isinstance(tok.value, str)
                return TextLit(tok.value, line=tok.line, column=tok.column)

            if tok.kind is TokenKind.IDENT:
                if self.tokens[self.pos + 1].kind is TokenKind.LPAREN:
                    node: Expr = self.parse_call()
                else:
                    self.advance()
                    node = VarRef(tok.lexeme, line=tok.line, column=tok.column)
                return self._maybe_field(node)

            if tok.kind is TokenKind.LPAREN:
                return self.parse_parenthesized()

            raise self.fail(
                f"unexpected {self._describe(tok)}",
                ("number", "text literal", "identifier", "'('"),
            )
        finally:
            self._leave()

    def parse_parenthesized(self) -> Expr:
        lparen = self.expect(TokenKind.LPAREN)
        elements = [self.parse_expr()]
        while self.current.kind is TokenKind.COMMA:
            self.advance()
            elements.append(self.parse_expr())
            if len(elements) > 3:
                raise self.fail("tuple literal has more than 3 elements")
        self.expect(TokenKind.RPAREN)
        if len(elements) == 1:
            return elements[0]  # grouping, not a tuple
        return TupleLit(tuple(elements), line=lparen.line, column=lparen.column)

    def _maybe_field(self, base: Expr) -> Expr:
        if self.current.kind is not TokenKind.DOT:
            return base
        dot = self.advance()
        tok = self.current
        if tok.kind is not TokenKind.IDENT or tok.lexeme not in _FIELDS:
            raise self.fail("bad field access", ("'x'", "'y'", "'z'"))
        self.advance()
        return FieldAccess(base, tok.lexeme, line=dot.line, column=dot.column)

    # -- depth guard ------------------------------------------------------

    def _enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING_DEPTH:
            raise self.fail(f"expression nesting exceeds {MAX_NESTING_DEPTH} levels")

    def _leave(self) -> None:
        self.depth -= 1

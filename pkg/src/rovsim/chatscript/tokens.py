"""Hand-rolled lexer.  Total: any byte sequence yields tokens or a LexError."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class TokenKind(enum.Enum):
    IDENT = "identifier"
    NUMBER = "number"
    TEXT = "text literal"
    LET = "'let'"
    LPAREN = "'('"
    RPAREN = "')'"
    COMMA = "','"
    EQUALS = "'='"
    DOT = "'.'"
    PLUS = "'+'"
    MINUS = "'-'"
    STAR = "'*'"
    SLASH = "'/'"
    NEWLINE = "newline"
    SEMICOLON = "';'"
    EOF = "end of input"


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int  # 1-based
    column: int  # 1-based
    # decoded payload: float for NUMBER, unescaped str for TEXT
    value: float | str | None = field(default=None, compare=False)


class LexError(ValueError):
    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


_PUNCT = {
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    "=": TokenKind.EQUALS,
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "/": TokenKind.SLASH,
    ";": TokenKind.SEMICOLON,
}

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_rest(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(source: str) -> list[Token]:
    """Lex `source` into tokens ending with EOF; raises LexError on bad input."""
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(source)

    def error(message: str) -> LexError:
        return LexError(line, col, message)

    while pos < n:
        c = source[pos]

        if c == "\n":
            tokens.append(Token(TokenKind.NEWLINE, "\n", line, col))
            pos += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            pos += 1
            col += 1
            continue
        if c == "#":
            while pos < n and source[pos] != "\n":
                pos += 1
                col += 1
            continue

        start_line, start_col = line, col

        if c in _PUNCT:
            tokens.append(Token(_PUNCT[c], c, line, col))
            pos += 1
            col += 1
            continue

        if c == ".":
            if pos + 1 < n and source[pos + 1].isdigit():
                pos, col, tok = _lex_number(source, pos, start_line, start_col)
                tokens.append(tok)
            else:
                tokens.append(Token(TokenKind.DOT, ".", line, col))
                pos += 1
                col += 1
            continue

        if c.isdigit():
            pos, col, tok = _lex_number(source, pos, start_line, start_col)
            tokens.append(tok)
            continue

        if _is_ident_start(c):
            end = pos
            while end < n and _is_ident_rest(source[end]):
                end += 1
            lexeme = source[pos:end]
            col += end - pos
            pos = end
            kind = TokenKind.LET if lexeme == "let" else TokenKind.IDENT
            tokens.append(Token(kind, lexeme, start_line, start_col))
            continue

        if c == '"':
            pos += 1
            col += 1
            chars: list[str] = []
            while True:
                if pos >= n or source[pos] == "\n":
                    raise LexError(start_line, start_col, "unterminated text literal")
                ch = source[pos]
                if ch == '"':
                    pos += 1
                    col += 1
                    break
                if ch == "\\":
                    if pos + 1 >= n:
                        raise LexError(start_line, start_col, "unterminated text literal")
                    esc = source[pos + 1]
                    if esc not in _ESCAPES:
                        raise LexError(line, col, f"unknown escape '\\{esc}'")
                    chars.append(_ESCAPES[esc])
                    pos += 2
                    col += 2
                    continue
                chars.append(ch)
                pos += 1
                col += 1
            text = "".join(chars)
            tokens.append(Token(TokenKind.TEXT, text, start_line, start_col, value=text))
            continue

        raise error(f"unexpected character {c!r}")

    tokens.append(Token(TokenKind.EOF, "", line, col))
    return tokens


def _lex_number(source: str, pos: int, line: int, col: int) -> tuple[int, int, Token]:
    n = len(source)
    start = pos
    while pos < n and source[pos].isdigit():
        pos += 1
    if pos < n and source[pos] == ".":
        pos += 1
        while pos < n and source[pos].isdigit():
            pos += 1
    if pos < n and source[pos] in "eE":
        mark = pos
        pos += 1
        if pos < n and source[pos] in "+-":
            pos += 1
        if pos < n and source[pos].isdigit():
            while pos < n and source[pos].isdigit():
                pos += 1
        else:
            pos = mark  # "1e" followed by junk: exponent not taken
    lexeme = source[start:pos]
    try:
        value = float(lexeme)
    except ValueError:  # pragma: no cover - lexeme shape guarantees parse
        raise LexError(line, col, f"bad number literal {lexeme!r}") from None
    return pos, col + (pos - start), Token(TokenKind.NUMBER, lexeme, line, col, value=value)

"""Tokenizer for the query dialect.

Keywords are case-insensitive. Backtick-quoted identifiers may contain
spaces, '/', '-', '(' and ')'; their token text excludes the backticks.
String literals use single quotes ('' escapes one quote); their text
excludes the quotes. Every token carries its source position and byte
span, so the token stream covers the input losslessly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import (
    UnknownCharacterError,
    UnterminatedIdentifierError,
    UnterminatedStringError,
)

KEYWORDS = frozenset({
    "SELECT", "FROM", "JOIN", "ON", "WHERE", "AND", "GROUP", "BY",
    "ORDER", "ASC", "DESC", "AS", "COUNT", "SUM",
})

_TWO_CHAR_SYMBOLS = ("<=", ">=", "<>")
_ONE_CHAR_SYMBOLS = ",.()=<>;"


class TokenKind(Enum):
    KEYWORD = "Keyword"
    IDENTIFIER = "Identifier"
    QUOTED_IDENTIFIER = "QuotedIdentifier"
    STRING_LITERAL = "StringLiteral"
    NUMBER_LITERAL = "NumberLiteral"
    SYMBOL = "Symbol"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int
    start: int  # byte span into the source, for lossless coverage
    end: int

    def describe(self) -> str:
        return f"{self.kind.value} {self.text!r}"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(text)

    def advance(count: int) -> None:
        nonlocal pos, line, col
        for _ in range(count):
            if text[pos] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            pos += 1

    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n":
            advance(1)
            continue

        start, start_line, start_col = pos, line, col

        if text[pos:pos + 2] in _TWO_CHAR_SYMBOLS:
            sym = text[pos:pos + 2]
            advance(2)
            tokens.append(Token(TokenKind.SYMBOL, sym, start_line, start_col, start, pos))
            continue
        if ch in _ONE_CHAR_SYMBOLS:
            advance(1)
            tokens.append(Token(TokenKind.SYMBOL, ch, start_line, start_col, start, pos))
            continue

        if ch == "`":
            advance(1)
            while pos < n and text[pos] not in "`\n":
                advance(1)
            if pos >= n or text[pos] != "`":
                raise UnterminatedIdentifierError(start_line, start_col)
            name = text[start + 1:pos]
            advance(1)
            tokens.append(
                Token(TokenKind.QUOTED_IDENTIFIER, name, start_line, start_col, start, pos)
            )
            continue

        if ch == "'":
            advance(1)
            buf = []
            while True:
                if pos >= n:
                    raise UnterminatedStringError(start_line, start_col)
                if text[pos] == "'":
                    if text[pos + 1:pos + 2] == "'":
                        buf.append("'")
                        advance(2)
                        continue
                    advance(1)
                    break
                buf.append(text[pos])
                advance(1)
            tokens.append(
                Token(TokenKind.STRING_LITERAL, "".join(buf),
                      start_line, start_col, start, pos)
            )
            continue

        if ch.isdigit():
            while pos < n and text[pos].isdigit():
                advance(1)
            if (
                pos < n
                and text[pos] == "."
                and pos + 1 < n
                and text[pos + 1].isdigit()
            ):
                advance(1)
                while pos < n and text[pos].isdigit():
                    advance(1)
            tokens.append(
                Token(TokenKind.NUMBER_LITERAL, text[start:pos],
                      start_line, start_col, start, pos)
            )
            continue

        if _is_ident_start(ch):
            while pos < n and _is_ident_char(text[pos]):
                advance(1)
            word = text[start:pos]
            kind = TokenKind.KEYWORD if word.upper() in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(kind, word, start_line, start_col, start, pos))
            continue

        raise UnknownCharacterError(ch, line, col)

    return tokens

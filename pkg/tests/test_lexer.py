import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ottdb import tokenize
from ottdb.errors import (
    UnknownCharacterError,
    UnterminatedIdentifierError,
    UnterminatedStringError,
)
from ottdb.sql import TokenKind


def kinds(tokens):
    return [(t.kind, t.text) for t in tokens]


def test_empty_input():
    assert tokenize("") == []


def test_where_clause_with_quoted_identifier():
    tokens = tokenize("WHERE `IMDB rating` = 10")
    assert kinds(tokens) == [
        (TokenKind.KEYWORD, "WHERE"),
        (TokenKind.QUOTED_IDENTIFIER, "IMDB rating"),
        (TokenKind.SYMBOL, "="),
        (TokenKind.NUMBER_LITERAL, "10"),
    ]


def test_string_literal_keeps_dots_and_spaces():
    tokens = tokenize("'S.S. Wilson'")
    assert kinds(tokens) == [(TokenKind.STRING_LITERAL, "S.S. Wilson")]


def test_string_literal_doubled_quote_escape():
    tokens = tokenize("'it''s'")
    assert kinds(tokens) == [(TokenKind.STRING_LITERAL, "it's")]


def test_keywords_case_insensitive():
    tokens = tokenize("select From JOIN on")
    assert [t.kind for t in tokens] == [TokenKind.KEYWORD] * 4
    assert [t.text for t in tokens] == ["select", "From", "JOIN", "on"]


def test_operators_and_compact_comparisons():
    tokens = tokenize("Seasons<2 AND Episodes <=6 OR_ish<>x >= y")
    texts = [(t.kind, t.text) for t in tokens]
    assert (TokenKind.SYMBOL, "<") in texts
    assert (TokenKind.SYMBOL, "<=") in texts
    assert (TokenKind.SYMBOL, "<>") in texts
    assert (TokenKind.SYMBOL, ">=") in texts
    assert (TokenKind.IDENTIFIER, "OR_ish") in texts


def test_decimal_number():
    tokens = tokenize("7.5")
    assert kinds(tokens) == [(TokenKind.NUMBER_LITERAL, "7.5")]


def test_dot_without_digits_is_symbol():
    tokens = tokenize("a.b")
    assert kinds(tokens) == [
        (TokenKind.IDENTIFIER, "a"),
        (TokenKind.SYMBOL, "."),
        (TokenKind.IDENTIFIER, "b"),
    ]


def test_quoted_identifier_with_slash_and_parens():
    tokens = tokenize("`required(y/n)` `views/mo`")
    assert kinds(tokens) == [
        (TokenKind.QUOTED_IDENTIFIER, "required(y/n)"),
        (TokenKind.QUOTED_IDENTIFIER, "views/mo"),
    ]


def test_positions_are_tracked():
    tokens = tokenize("SELECT\n  x")
    assert (tokens[0].line, tokens[0].column) == (1, 1)
    assert (tokens[1].line, tokens[1].column) == (2, 3)


def test_unterminated_string():
    with pytest.raises(UnterminatedStringError) as info:
        tokenize("WHERE x = 'oops")
    assert info.value.column == 11


def test_unterminated_quoted_identifier():
    with pytest.raises(UnterminatedIdentifierError):
        tokenize("SELECT `Show Name")


def test_unknown_character():
    with pytest.raises(UnknownCharacterError):
        tokenize("SELECT *")


def _spans_cover_losslessly(text):
    tokens = tokenize(text)
    cursor = 0
    for t in tokens:
        assert t.start >= cursor, "tokens overlap"
        assert text[cursor:t.start].strip() == "", "non-whitespace skipped"
        assert t.start < t.end <= len(text)
        cursor = t.end
    assert text[cursor:].strip() == ""
    return tokens


def test_lossless_span_on_reference_queries():
    from ottdb import query_text

    for n in range(1, 7):
        _spans_cover_losslessly(query_text(n))


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet=" \t\nabcXYZ_0123456789.,()=<>;`'", max_size=60))
def test_tokenizer_covers_every_byte_or_raises(text):
    # Any input either tokenizes with full span coverage or raises a
    # position-carrying lexer error; it never drops characters silently.
    from ottdb.errors import LexError

    try:
        _spans_cover_losslessly(text)
    except LexError:
        pass

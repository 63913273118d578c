import pytest

from ottdb import ast_text, parse_query, query_text, tokenize
from ottdb.errors import TrailingInputError, UnexpectedTokenError
from ottdb.sql import parse
from ottdb.sql.ast import Aggregate, ColumnRef, CreateTable, Literal


def test_minimal_query():
    q = parse_query("SELECT x FROM t")
    assert len(q.select) == 1
    assert q.select[0].expr == ColumnRef(None, "x")
    assert q.table.table == "t" and q.table.alias is None
    assert q.joins == () and q.where == ()
    assert q.group_by == () and q.order_by == ()


def test_q1_shape():
    q = parse_query(query_text(1))
    assert len(q.select) == 2
    assert q.select[0].expr == Aggregate("COUNT", ColumnRef(None, "Actor_id"))
    assert q.select[1].expr == ColumnRef(None, "Nationality")
    assert q.group_by == (ColumnRef(None, "Nationality"),)
    assert len(q.order_by) == 1
    assert q.order_by[0].expr == Aggregate("COUNT", ColumnRef(None, "Actor_id"))
    assert q.order_by[0].descending


def test_q6_shape():
    q = parse_query(query_text(6))
    assert len(q.joins) == 5
    assert len(q.where) == 4
    assert q.where[2].left == ColumnRef(None, "U/A", quoted=True)
    assert q.where[2].right == Literal(1)
    assert not q.order_by[0].descending


def test_q4_string_alias_and_quoted_aggregate_arg():
    q = parse_query(query_text(4))
    assert q.select[1].alias == "TOTAL"
    agg = q.select[1].expr
    assert agg == Aggregate("SUM", ColumnRef(None, "views/mo", quoted=True))


def test_table_alias_with_and_without_as():
    q = parse_query("SELECT a.x FROM t AS a JOIN u b ON a.x = b.y")
    assert q.table.alias == "a"
    assert q.joins[0].table.alias == "b"


def test_dot_space_quoted_column():
    # the bundled q3 writes "b. `Writer`"
    q = parse_query("SELECT b. `Writer` FROM t b")
    assert q.select[0].expr == ColumnRef("b", "Writer", quoted=True)


def test_decimal_literal():
    q = parse_query("SELECT x FROM t WHERE y = 7.5")
    from decimal import Decimal

    assert q.where[0].right == Literal(Decimal("7.5"))


def test_optional_semicolon():
    assert parse_query("SELECT x FROM t;") == parse_query("SELECT x FROM t")


def test_unexpected_token_position():
    with pytest.raises(UnexpectedTokenError) as info:
        parse_query("SELEC x FROM t")
    assert (info.value.line, info.value.column) == (1, 1)


def test_missing_from():
    with pytest.raises(UnexpectedTokenError):
        parse_query("SELECT x")


def test_trailing_input():
    with pytest.raises(TrailingInputError):
        parse_query("SELECT x FROM t; SELECT y FROM t")


def test_no_expression_arithmetic():
    # '+' is not even a token of the dialect
    from ottdb.errors import SqlError

    with pytest.raises(SqlError):
        parse_query("SELECT x FROM t WHERE y = 1 + 2")
    # a second predicate must be a fresh comparison, not a continuation
    with pytest.raises(UnexpectedTokenError):
        parse_query("SELECT x FROM t WHERE y = 1 AND 2")


def test_all_reference_queries_parse():
    for n in range(1, 7):
        parse_query(query_text(n))


def test_parse_determinism_golden_serialization():
    texts = [query_text(n) for n in range(1, 7)]
    first = [ast_text(parse_query(t)) for t in texts]
    second = [ast_text(parse_query(t)) for t in texts]
    assert first == second


def test_ast_text_golden_q2():
    expected = (
        "query\n"
        "  select\n"
        "    b.`show name`\n"
        "    a.`IMDB rating`\n"
        "  from Critics_Rating as a\n"
        "  join `Show_id-name` as b on a.show_id = b.show_id\n"
        "  where\n"
        "    `IMDB rating` = 10\n"
    )
    assert ast_text(parse_query(query_text(2))) == expected


def test_create_table_form():
    stmt = parse(tokenize(
        "CREATE TABLE Watchlist ("
        "  User_id INT, Show_id INT, Note TEXT,"
        "  PRIMARY KEY (User_id, Show_id),"
        "  FOREIGN KEY (Show_id) REFERENCES Collections_of_shows (Show_id)"
        ")"
    ))
    assert isinstance(stmt, CreateTable)
    assert stmt.name == "Watchlist"
    assert stmt.columns == (("User_id", "INT"), ("Show_id", "INT"), ("Note", "TEXT"))
    assert stmt.primary_key == ("User_id", "Show_id")
    assert stmt.foreign_keys == (
        (("Show_id",), "Collections_of_shows", ("Show_id",)),
    )

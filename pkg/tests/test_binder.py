import pytest

from ottdb import bind, parse_query, query_text
from ottdb.errors import (
    AmbiguousColumnError,
    BindError,
    UngroupedColumnError,
    UnknownColumnError,
    UnknownTableError,
)
from ottdb.sql.binder import BoundAggregate, BoundColumn


def _bind(text, db):
    return bind(parse_query(text), db)


def test_all_reference_queries_bind(schema_db):
    for n in range(1, 7):
        _bind(query_text(n), schema_db)


def test_q6_bare_age_binds_to_actors(schema_db):
    bound = _bind(query_text(6), schema_db)
    age_pred = bound.where[0]
    actors_index = next(
        t.index for t in bound.tables if t.name == "Actors"
    )
    assert age_pred.left.table == actors_index
    assert age_pred.left.column == 3  # Age


def test_ambiguous_show_id(schema_db):
    with pytest.raises(AmbiguousColumnError):
        _bind(
            "SELECT Show_id FROM `Show_id-name` a "
            "JOIN Critics_Rating b ON a.Show_id = b.Show_id",
            schema_db,
        )


def test_ungrouped_column(schema_db):
    with pytest.raises(UngroupedColumnError):
        _bind("SELECT COUNT(Actor_id), Nationality FROM Actors", schema_db)


def test_ungrouped_order_by_column(schema_db):
    with pytest.raises(UngroupedColumnError):
        _bind(
            "SELECT COUNT(Actor_id) FROM Actors ORDER BY Age",
            schema_db,
        )


def test_whole_table_aggregate_is_fine(schema_db):
    bound = _bind("SELECT COUNT(Actor_id), SUM(Age) FROM Actors", schema_db)
    assert bound.grouped and not bound.group_by
    assert len(bound.aggregates) == 2


def test_aggregate_in_order_by_forces_grouping(schema_db):
    with pytest.raises(UngroupedColumnError):
        _bind("SELECT Nationality FROM Actors ORDER BY COUNT(Actor_id)", schema_db)


def test_group_by_without_aggregates_allowed(schema_db):
    bound = _bind("SELECT Nationality FROM Actors GROUP BY Nationality", schema_db)
    assert bound.grouped
    assert bound.aggregates == ()


def test_order_by_aggregate_not_in_select_is_computed(schema_db):
    bound = _bind(
        "SELECT Nationality FROM Actors GROUP BY Nationality "
        "ORDER BY SUM(Age) DESC",
        schema_db,
    )
    assert len(bound.aggregates) == 1
    assert bound.aggregates[0].func == "SUM"


def test_sum_requires_numeric(schema_db):
    with pytest.raises(BindError):
        _bind("SELECT SUM(Nationality) FROM Actors GROUP BY Age", schema_db)
    with pytest.raises(BindError):
        _bind("SELECT SUM(Relevance) FROM Relevance", schema_db)


def test_unknown_table(schema_db):
    with pytest.raises(UnknownTableError):
        _bind("SELECT x FROM Nowhere", schema_db)


def test_unknown_qualifier(schema_db):
    with pytest.raises(UnknownTableError):
        _bind("SELECT z.Age FROM Actors a", schema_db)


def test_unknown_column(schema_db):
    with pytest.raises(UnknownColumnError):
        _bind("SELECT Ages FROM Actors", schema_db)


def test_duplicate_alias_rejected(schema_db):
    with pytest.raises(BindError):
        _bind(
            "SELECT a.Age FROM Actors a JOIN Actors a ON a.Actor_id = a.Actor_id",
            schema_db,
        )


def test_join_must_link_new_table(schema_db):
    with pytest.raises(BindError):
        _bind(
            "SELECT a.Show_id FROM `Show_id-name` a "
            "JOIN Critics_Rating b ON a.Show_id = a.Show_id",
            schema_db,
        )


def test_self_join_with_aliases(schema_db):
    bound = _bind(
        "SELECT a.Genre, c.Genre FROM Collections_of_shows a "
        "JOIN Related_shows b ON a.Show_id = b.Show_id "
        "JOIN Collections_of_shows c ON b.Related_Show_id = c.Show_id",
        schema_db,
    )
    assert [t.name for t in bound.tables] == [
        "Collections_of_shows", "Related_shows", "Collections_of_shows"
    ]
    assert bound.select[0].expr.table == 0
    assert bound.select[1].expr.table == 2


def test_case_insensitive_bare_identifiers(schema_db):
    bound = _bind("SELECT nationality FROM actors", schema_db)
    assert bound.tables[0].name == "Actors"
    assert bound.select[0].expr.column == 4


def test_quoted_identifier_falls_back_to_case_insensitive(schema_db):
    # `show name` resolves to the column spelled `Show Name`
    bound = _bind("SELECT b.`show name` FROM `Show_id-name` b", schema_db)
    assert bound.select[0].expr.column == 1
    assert bound.select[0].header == "show name"  # header keeps the source text


def test_join_sides_oriented(schema_db):
    bound = _bind(query_text(2), schema_db)
    join = bound.joins[0]
    assert join.left.table == 0   # Critics_Rating side
    assert join.right.table == 1  # Show_id-name side


def test_headers_use_alias_then_source_text(schema_db):
    bound = _bind(query_text(4), schema_db)
    assert bound.headers == ["Platform name", "TOTAL"]
    bound = _bind(query_text(1), schema_db)
    assert bound.headers == ["COUNT(Actor_id)", "Nationality"]

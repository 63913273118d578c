"""The bundled dataset, cross-checked against the raw CSV files.

Every expectation here is recomputed straight from the CSVs with the
csv module, independent of the engine's ingestion and query paths.
"""

import csv

from conftest import FIXTURE_DIR
from ottdb import builtin_schema, csv_filename, load_dataset, query_text, run


def read_raw(table):
    path = FIXTURE_DIR / csv_filename(table)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_manifest_covers_all_26_tables():
    names = [
        line.strip()
        for line in (FIXTURE_DIR / "manifest.txt").read_text().splitlines()
        if line.strip()
    ]
    assert len(names) == 26
    db = builtin_schema()
    assert sorted(names) == sorted(db.tables)


def test_loaded_counts_equal_csv_line_counts(fixture_db):
    for table in fixture_db.tables:
        _, raw_rows = read_raw(table)
        assert len(list(fixture_db.scan(table))) == len(raw_rows), table


def test_fixture_integrity_clean(fixture_db):
    assert fixture_db.check_integrity() == []


def test_fixture_tables_at_most_50_rows(fixture_db):
    for table in fixture_db.tables:
        assert len(list(fixture_db.scan(table))) <= 50, table


def test_independent_fk_recount():
    # scripted recount: every Show_id mentioned anywhere exists in the hub
    _, hub_rows = read_raw("Collections_of_shows")
    show_ids = {row[0] for row in hub_rows}
    for table in ["Show_id-name", "Critics_Rating", "PG_Rating", "TV_series",
                  "Director", "Statistics", "Actor_id-Show_id"]:
        header, raw_rows = read_raw(table)
        col = header.index("Show_id")
        for row in raw_rows:
            assert row[col] in show_ids, (table, row)


def test_q3_rows_recounted_from_raw_csv(fixture_db):
    # oracle: recount writer='S.S. Wilson' straight from the files
    name_header, name_rows = read_raw("Show_id-name")
    hub_header, hub_rows = read_raw("Collections_of_shows")
    names = {row[0]: row[1] for row in name_rows}
    expected = [
        (names[row[0]], row[2], int(row[1]))
        for row in hub_rows
        if row[2] == "S.S. Wilson"
    ]
    assert len(expected) == 2
    rs = run(fixture_db, query_text(3))
    assert rs.rows == expected


def test_q2_rows_recounted_from_raw_csv(fixture_db):
    from collections import Counter
    from decimal import Decimal

    rating_header, rating_rows = read_raw("Critics_Rating")
    name_header, name_rows = read_raw("Show_id-name")
    names = {row[0]: row[1] for row in name_rows}
    expected = Counter(
        (names[row[0]], Decimal(10))
        for row in rating_rows
        if Decimal(row[1]) == 10
    )
    rs = run(fixture_db, query_text(2))
    assert Counter(rs.rows) == expected
    assert ("Make Room for Granddaddy", Decimal(10)) in expected


def test_q5_rows_recounted_from_raw_csv(fixture_db):
    from collections import Counter

    tv_header, tv_rows = read_raw("TV_series")
    name_header, name_rows = read_raw("Show_id-name")
    prod_header, prod_rows = read_raw("Productions")
    names = {row[0]: row[1] for row in name_rows}
    productions = {row[0]: row[1] for row in prod_rows}
    sid = tv_header.index("Show_id")
    pid = tv_header.index("Production_id")
    seasons = tv_header.index("Seasons")
    episodes = tv_header.index("Episodes")
    expected = Counter(
        (int(r[sid]), names[r[sid]], productions[r[pid]],
         int(r[seasons]), int(r[episodes]))
        for r in tv_rows
        if int(r[seasons]) < 2 and int(r[episodes]) < 6
    )
    rs = run(fixture_db, query_text(5))
    assert Counter(rs.rows) == expected
    assert any(
        row[1:] == ("Three Men of the City", "Forward Media", 1, 5)
        for row in rs.rows
    )


def test_load_order_parents_before_children():
    manifest = [
        line.strip()
        for line in (FIXTURE_DIR / "manifest.txt").read_text().splitlines()
        if line.strip()
    ]
    position = {name: i for i, name in enumerate(manifest)}
    defs = {t.defn.name: t.defn for t in builtin_schema().tables.values()}
    for name, defn in defs.items():
        for fk in defn.foreign_keys:
            assert position[fk.foreign_table] < position[name], (
                f"{fk.foreign_table} must load before {name}"
            )


def test_fresh_load_is_idempotent_per_database():
    db1 = builtin_schema()
    db2 = builtin_schema()
    load_dataset(db1, FIXTURE_DIR)
    load_dataset(db2, FIXTURE_DIR)
    for table in db1.tables:
        assert list(db1.scan(table)) == list(db2.scan(table))

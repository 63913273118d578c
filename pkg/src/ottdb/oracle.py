"""Brute-force query evaluator and random query generator.

`evaluate` is the obviously-correct reference for differential testing:
nested-loop joins over fully materialized scans, grouping by linear
search over the distinct keys, definition-level aggregation, and the
same deterministic tie-break rule as the planned executor. It shares the
bound AST and the value helpers with the engine and nothing else; in
particular it never touches the planner, the hash join, or the compiled
predicate closures. Meant for desk-size instances only.
"""

from __future__ import annotations

import random

from .errors import ArithmeticOverflowError
from .result import ResultSet
from .sql.binder import BoundAggregate, BoundColumn, BoundQuery
from .values import INT64_MAX, INT64_MIN, SqlType, compare


def evaluate(db, bound: BoundQuery) -> ResultSet:
    starts = bound.offsets()

    def position(col: BoundColumn) -> int:
        return starts[col.table] + col.column

    def holds(op: str, a, b) -> bool:
        c = compare(a, b)
        if op == "=":
            return c == 0
        if op == "<>":
            return c != 0
        if op == "<":
            return c < 0
        if op == "<=":
            return c <= 0
        if op == ">":
            return c > 0
        return c >= 0

    # Nested-loop join in FROM/JOIN order: each level scans its table in
    # full against every accumulated row, keeping the pairs its ON
    # equality admits. The result equals filtering the whole Cartesian
    # product, one table at a time.
    rows: list[tuple] = []
    for index, table in enumerate(bound.tables):
        scanned = list(db.scan(table.name))
        if index == 0:
            rows = scanned
            continue
        on = bound.joins[index - 1]
        left_pos = position(on.left)       # inside the accumulated row
        right_pos = on.right.column        # inside the newly scanned row
        joined: list[tuple] = []
        append = joined.append
        for acc in rows:
            left_value = acc[left_pos]
            for row in scanned:
                # native equality agrees with compare() == 0 on every
                # value pair, including bool/int/Decimal mixes
                if row[right_pos] == left_value:
                    append(acc + row)
        rows = joined

    for pred in bound.where:
        lp = position(pred.left)
        if isinstance(pred.right, BoundColumn):
            rp = position(pred.right)
            rows = [r for r in rows if holds(pred.op, r[lp], r[rp])]
        else:
            literal = pred.right.value
            rows = [r for r in rows if holds(pred.op, r[lp], literal)]

    def aggregate_over(group: list[tuple], agg: BoundAggregate):
        if agg.func == "COUNT":
            return len(group)
        pos = position(agg.arg)
        total = 0
        int_typed = agg.arg.col_type is SqlType.INT
        for row in group:
            total = total + row[pos]
            if int_typed and not INT64_MIN <= total <= INT64_MAX:
                raise ArithmeticOverflowError(agg.display)
        return total

    if bound.grouped:
        # Distinct key tuples by linear search, in first-appearance order
        # (tuple equality agrees with elementwise compare() == 0).
        key_positions = [position(c) for c in bound.group_by]
        keys: list[tuple] = []
        members: list[list[tuple]] = []
        for row in rows:
            key = tuple(row[p] for p in key_positions)
            for i, seen in enumerate(keys):
                if seen == key:
                    members[i].append(row)
                    break
            else:
                keys.append(key)
                members.append([row])
        if not bound.group_by and not keys:
            keys.append(())
            members.append([])

        key_position = {
            (c.table, c.column): i for i, c in enumerate(bound.group_by)
        }

        def output_value(key: tuple, group: list[tuple], expr):
            if isinstance(expr, BoundAggregate):
                return aggregate_over(group, expr)
            return key[key_position[(expr.table, expr.column)]]

        projected = []
        order_values = []
        for key, group in zip(keys, members):
            projected.append(
                tuple(output_value(key, group, item.expr) for item in bound.select)
            )
            order_values.append(
                tuple(output_value(key, group, item.expr) for item in bound.order_by)
            )
    else:
        select_positions = [position(item.expr) for item in bound.select]
        order_positions = [position(item.expr) for item in bound.order_by]
        projected = [tuple(row[p] for p in select_positions) for row in rows]
        order_values = [tuple(row[p] for p in order_positions) for row in rows]

    if bound.order_by:
        decorated = [ov + p for ov, p in zip(order_values, projected)]
        # Repeated stable sorts: final ascending pass over the whole row as
        # tie-break, then each key from last to first with its direction.
        decorated.sort(key=_total_key)
        for offset in range(len(bound.order_by) - 1, -1, -1):
            descending = bound.order_by[offset].descending
            decorated.sort(
                key=lambda r, _o=offset: _value_key(r[_o]), reverse=descending
            )
        nk = len(bound.order_by)
        projected = [r[nk:] for r in decorated]

    return ResultSet(bound.headers, projected)


def _value_key(v):
    # (family, value): text after numerics, matching values.compare.
    return (1, v) if isinstance(v, str) else (0, v)


def _total_key(row: tuple):
    return tuple(_value_key(v) for v in row)


# ── random query generation ─────────────────────────────────────────────

_TEXT_POOL = [
    "Adventure", "Drama", "Comedy", "Male", "Female", "India", "USA",
    "France", "Japan", "Netflix", "4K", "1080p", "S.S. Wilson", "English",
]

_NUMERIC_OPS = ["=", "<>", "<", "<=", ">", ">="]
_EXACT_OPS = ["=", "<>"]


def generate_queries(seed: int, db, count: int = 500) -> list[str]:
    """Deterministic list of dialect query texts, valid under bind.

    Joins follow declared single-column foreign keys (in either
    direction), aggregates respect the group-by rule, and every column
    reference is qualified unless its name is unique in scope. Covers
    0-6 joins, 0-4 predicates, and optional GROUP BY / ORDER BY.
    """
    rng = random.Random(seed)
    defs = [t.defn for t in db.tables.values()]
    by_name = {d.name: d for d in defs}

    # Single-column FK edges in both directions. Joining toward the parent
    # lands on its primary key (at most one match per row); joining toward
    # the child fans out. Generation prefers the bounded direction, the
    # way the bundled queries do, but still exercises both.
    to_parent: list[tuple[str, str, str, str]] = []
    to_child: list[tuple[str, str, str, str]] = []
    for d in defs:
        for fk in d.foreign_keys:
            if len(fk.local_columns) != 1:
                continue
            to_parent.append(
                (d.name, fk.local_columns[0], fk.foreign_table, fk.foreign_columns[0])
            )
            to_child.append(
                (fk.foreign_table, fk.foreign_columns[0], d.name, fk.local_columns[0])
            )

    return [_generate_one(rng, defs, by_name, to_parent, to_child) for _ in range(count)]


def _generate_one(rng, defs, by_name, to_parent, to_child) -> str:
    n_joins = rng.choice([0, 0, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6])

    aliases = "abcdefgh"
    scope: list[tuple[str, str]] = []  # (alias, table name)

    if n_joins:
        joinable = sorted({e[0] for e in to_parent + to_child})
        start = rng.choice(joinable)
    else:
        start = rng.choice([d.name for d in defs])
    scope.append((aliases[0], start))

    join_clauses: list[str] = []
    fanouts = 0
    for k in range(1, n_joins + 1):
        pool = to_parent if (fanouts >= 2 or rng.random() < 0.75) else to_child
        options = [
            (i, e)
            for i, (alias, table) in enumerate(scope)
            for e in pool
            if e[0] == table
        ]
        if not options:
            pool = to_child if pool is to_parent else to_parent
            options = [
                (i, e)
                for i, (alias, table) in enumerate(scope)
                for e in pool
                if e[0] == table
            ]
        if not options:
            break
        if pool is to_child:
            fanouts += 1
        src_idx, (_, src_col, dst_table, dst_col) = rng.choice(options)
        alias = aliases[k]
        scope.append((alias, dst_table))
        src_alias = scope[src_idx][0]
        join_clauses.append(
            f"JOIN {_quote(dst_table)} {alias} "
            f"ON {src_alias}.{_quote(src_col)} = {alias}.{_quote(dst_col)}"
        )

    # Visible columns: (alias, column name, type)
    visible = [
        (alias, col.name, col.col_type)
        for alias, table in scope
        for col in by_name[table].columns
    ]

    def colref(alias: str, name: str) -> str:
        lowered = name.lower()
        unique = sum(1 for _, n, _t in visible if n.lower() == lowered) == 1
        if unique and rng.random() < 0.3:
            text = name if rng.random() < 0.8 else name.lower()
            return _quote(text)
        return f"{alias}.{_quote(name)}"

    where_parts: list[str] = []
    for _ in range(rng.choice([0, 0, 1, 1, 2, 2, 3, 4])):
        alias, name, col_type = rng.choice(visible)
        ref = colref(alias, name)
        if rng.random() < 0.15:
            partners = [
                (a2, n2)
                for a2, n2, t2 in visible
                if t2 is col_type and (a2, n2) != (alias, name)
            ]
            if partners:
                a2, n2 = rng.choice(partners)
                op = rng.choice(_NUMERIC_OPS if col_type is not SqlType.TEXT else _EXACT_OPS)
                where_parts.append(f"{ref} {op} {colref(a2, n2)}")
                continue
        where_parts.append(f"{ref} {_random_comparison(rng, col_type)}")

    mode = rng.choice(["plain", "plain", "plain", "grouped", "grouped", "whole"])
    order_parts: list[str] = []

    if mode == "plain":
        k = rng.randint(1, min(4, len(visible)))
        chosen = rng.sample(visible, k)
        select_parts = [colref(a, n) for a, n, _t in chosen]
        for a, n, _t in rng.sample(chosen, rng.randint(0, min(2, k))):
            order_parts.append(f"{colref(a, n)}{_direction(rng)}")
    else:
        if mode == "grouped":
            keys = rng.sample(visible, rng.randint(1, 2))
        else:
            keys = []
        agg_parts: list[str] = []
        agg_pool: list[str] = []
        for _ in range(rng.randint(1, 2)):
            func = rng.choice(["COUNT", "COUNT", "SUM"])
            if func == "SUM":
                numeric = [
                    (a, n) for a, n, t in visible if t in (SqlType.INT, SqlType.DECIMAL)
                ]
                if not numeric:
                    func = "COUNT"
            if func == "SUM":
                a, n = rng.choice(numeric)
            else:
                a, n, _t = rng.choice(visible)
            text = f"{func}({colref(a, n)})"
            agg_parts.append(text)
            agg_pool.append(text)
        select_parts = [colref(a, n) for a, n, _t in keys] + agg_parts
        rng.shuffle(select_parts)
        # ORDER BY may use the group keys, a selected aggregate, or a fresh
        # aggregate that the engine must compute independently.
        for _ in range(rng.randint(0, 2)):
            roll = rng.random()
            if keys and roll < 0.5:
                a, n, _t = rng.choice(keys)
                order_parts.append(f"{colref(a, n)}{_direction(rng)}")
            elif roll < 0.85 or not keys:
                order_parts.append(f"{rng.choice(agg_pool)}{_direction(rng)}")
            else:
                a, n, _t = rng.choice(visible)
                order_parts.append(f"COUNT({colref(a, n)}){_direction(rng)}")

    lines = ["SELECT " + ", ".join(select_parts)]
    lines.append(f"FROM {_quote(scope[0][1])} {scope[0][0]}")
    lines.extend(join_clauses)
    if where_parts:
        lines.append("WHERE " + "\nAND ".join(where_parts))
    if mode == "grouped":
        lines.append("GROUP BY " + ", ".join(colref(a, n) for a, n, _t in keys))
    if order_parts:
        lines.append("ORDER BY " + ", ".join(order_parts))
    return "\n".join(lines) + (";" if rng.random() < 0.5 else "")


def _direction(rng) -> str:
    return rng.choice(["", " ASC", " DESC"])


def _random_comparison(rng, col_type: SqlType) -> str:
    if col_type is SqlType.TEXT:
        value = rng.choice(_TEXT_POOL).replace("'", "''")
        return f"{rng.choice(_EXACT_OPS)} '{value}'"
    if col_type is SqlType.BOOL:
        return f"{rng.choice(_EXACT_OPS)} {rng.randint(0, 1)}"
    if col_type is SqlType.DECIMAL:
        return f"{rng.choice(_NUMERIC_OPS)} {rng.randint(0, 10)}.{rng.randint(0, 9)}"
    return f"{rng.choice(_NUMERIC_OPS)} {rng.randint(0, 60)}"


def _quote(name: str) -> str:
    from .catalog import quote_identifier

    return quote_identifier(name)

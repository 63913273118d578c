"""Planner and executor: scans, pushed-down filters, hash equi-joins,
grouped aggregation, deterministic sorting, projection.

The plan is a left-deep join chain in FROM/JOIN order with exactly one
Project at the root beneath an optional Sort. Filter predicates that
touch a single table sit below the join on that table's scan.

Execution compiles bound predicates and projections into closures over
tuple positions, so the per-row work is native comparisons and tuple
indexing. Correctness on small instances is pinned by the independent
brute-force evaluator in :mod:`ottdb.oracle`.
"""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass
from operator import itemgetter

from .errors import ArithmeticOverflowError
from .result import ResultSet
from .sql.binder import (
    BoundAggregate,
    BoundColumn,
    BoundOrderItem,
    BoundPredicate,
    BoundQuery,
    BoundSelectItem,
    BoundTable,
    bind,
)
from .sql.parser import parse_query
from .values import INT64_MAX, INT64_MIN, SqlType, family, value_family

_OPS = {
    "=": operator.eq,
    "<>": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


# ── plan nodes ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Scan:
    table: BoundTable


@dataclass(frozen=True)
class Filter:
    child: object
    predicates: tuple[BoundPredicate, ...]


@dataclass(frozen=True)
class HashJoin:
    left: object
    right: object
    left_key: BoundColumn
    right_key: BoundColumn


@dataclass(frozen=True)
class Aggregate:
    child: object
    group_keys: tuple[BoundColumn, ...]
    aggregates: tuple[BoundAggregate, ...]


@dataclass(frozen=True)
class Project:
    child: object
    items: tuple[BoundSelectItem, ...]


@dataclass(frozen=True)
class Sort:
    child: Project
    keys: tuple[BoundOrderItem, ...]


@dataclass(frozen=True)
class Plan:
    root: object
    query: BoundQuery


# ── planning ────────────────────────────────────────────────────────────

def plan(bound: BoundQuery) -> Plan:
    """Deterministic plan: left-deep joins, predicates pushed down."""
    scan_filters: dict[int, list[BoundPredicate]] = {}
    join_filters: dict[int, list[BoundPredicate]] = {}
    for pred in bound.where:
        tables = pred.tables()
        if len(tables) == 1:
            scan_filters.setdefault(next(iter(tables)), []).append(pred)
        else:
            join_filters.setdefault(max(tables), []).append(pred)

    def scan_of(index: int):
        node = Scan(bound.tables[index])
        preds = scan_filters.get(index)
        return Filter(node, tuple(preds)) if preds else node

    node = scan_of(0)
    for k, join in enumerate(bound.joins, start=1):
        node = HashJoin(node, scan_of(k), join.left, join.right)
        preds = join_filters.get(k)
        if preds:
            node = Filter(node, tuple(preds))

    if bound.grouped:
        node = Aggregate(node, bound.group_by, bound.aggregates)
    node = Project(node, bound.select)
    if bound.order_by:
        node = Sort(node, bound.order_by)
    return Plan(node, bound)


# ── core operators (also exposed for direct testing) ───────────────────

def hash_join(left_rows, right_rows, left_key: int, right_key: int) -> list[tuple]:
    """Equi-join two row lists; output rows are left + right concatenated.

    Builds over the smaller input and probes with the larger, so output
    order is probe-side order with build insertion order within a key.
    The output multiset equals the nested-loop equi-join's.
    """
    if len(right_rows) <= len(left_rows):
        index: dict = {}
        for row in right_rows:
            index.setdefault(row[right_key], []).append(row)
        out = []
        append = out.append
        for left in left_rows:
            matches = index.get(left[left_key])
            if matches:
                for right in matches:
                    append(left + right)
        return out
    index = {}
    for row in left_rows:
        index.setdefault(row[left_key], []).append(row)
    out = []
    append = out.append
    for right in right_rows:
        matches = index.get(right[right_key])
        if matches:
            for left in matches:
                append(left + right)
    return out


@dataclass(frozen=True)
class AggSpec:
    func: str          # COUNT or SUM
    position: int      # input column position, relative to the rows given
    display: str       # for overflow messages
    int_typed: bool    # SUM over Int gets 64-bit overflow detection


def aggregate_rows(rows, key_positions: tuple[int, ...], specs) -> list[tuple]:
    """Group rows by the key columns and fold COUNT/SUM per group.

    Output rows are key values followed by aggregate values, one row per
    distinct key in first-seen order. With no key columns there is always
    exactly one output row, even over zero input rows (COUNT=0, SUM=0).
    """
    if not key_positions:
        get_key = lambda r: ()
    elif len(key_positions) == 1:
        p = key_positions[0]
        get_key = lambda r: (r[p],)
    else:
        get_key = itemgetter(*key_positions)

    groups: dict[tuple, list] = {}
    for row in rows:
        key = get_key(row)
        accs = groups.get(key)
        if accs is None:
            accs = [0] * len(specs)
            groups[key] = accs
        for i, spec in enumerate(specs):
            if spec.func == "COUNT":
                accs[i] += 1
            else:
                accs[i] += row[spec.position]
                if spec.int_typed and not INT64_MIN <= accs[i] <= INT64_MAX:
                    raise ArithmeticOverflowError(spec.display)

    if not key_positions and not groups:
        groups[()] = [0] * len(specs)

    return [key + tuple(accs) for key, accs in groups.items()]


def sort_rows(rows, key_positions, descending) -> list[tuple]:
    """Stable sort by the keyed columns with the stated directions; the
    full row is appended as a final ascending tie-break for determinism."""
    pairs = list(zip(key_positions, descending))

    def compare(a, b):
        for pos, desc in pairs:
            av, bv = a[pos], b[pos]
            if av == bv:
                continue
            c = -1 if av < bv else 1
            return -c if desc else c
        if a == b:
            return 0
        return -1 if a < b else 1

    return sorted(rows, key=functools.cmp_to_key(compare))


# ── execution ───────────────────────────────────────────────────────────

def execute(db, p: Plan) -> ResultSet:
    query = p.query
    widths = [t.defn.width for t in query.tables]

    root = p.root
    sort_node = None
    if isinstance(root, Sort):
        sort_node = root
        project = root.child
    else:
        project = root

    base_rows = _materialize(db, project.child, widths)
    position = _output_positions(project.child, query, widths)

    select_positions = [position(item.expr) for item in query.select]
    extract = _tuple_extractor(select_positions)

    if sort_node is None:
        rows = [extract(r) for r in base_rows]
        return ResultSet(query.headers, rows)

    key_positions = [position(item.expr) for item in sort_node.keys]
    descending = [item.descending for item in sort_node.keys]
    nk = len(key_positions)
    decorate = _tuple_extractor(key_positions)
    decorated = [decorate(r) + extract(r) for r in base_rows]
    ordered = sort_rows(decorated, list(range(nk)), descending)
    return ResultSet(query.headers, [r[nk:] for r in ordered])


def run(db, text: str) -> ResultSet:
    """Parse, bind, plan, and execute a query in one call."""
    bound = bind(parse_query(text), db)
    return execute(db, plan(bound))


def _tuple_extractor(positions):
    if len(positions) == 1:
        p = positions[0]
        return lambda r: (r[p],)
    if not positions:
        return lambda r: ()
    return itemgetter(*positions)


def _covered(node) -> list[int]:
    """Scope indexes of the tables a node's output rows concatenate."""
    if isinstance(node, Scan):
        return [node.table.index]
    if isinstance(node, Filter):
        return _covered(node.child)
    if isinstance(node, HashJoin):
        return _covered(node.left) + _covered(node.right)
    raise TypeError(f"not a row-producing node: {type(node).__name__}")


def _flat_position(col: BoundColumn, covered: list[int], widths) -> int:
    offset = 0
    for t in covered:
        if t == col.table:
            return offset + col.column
        offset += widths[t]
    raise AssertionError(f"column {col.display} not available at this node")


def _output_positions(child, query: BoundQuery, widths):
    """Map a bound expression to its position in `child`'s output rows."""
    if isinstance(child, Aggregate):
        key_index = {
            (c.table, c.column): i for i, c in enumerate(child.group_keys)
        }
        agg_index = {
            agg.identity: len(child.group_keys) + i
            for i, agg in enumerate(child.aggregates)
        }

        def position(expr):
            if isinstance(expr, BoundAggregate):
                return agg_index[expr.identity]
            return key_index[(expr.table, expr.column)]

        return position

    covered = _covered(child)

    def position(expr):
        if isinstance(expr, BoundAggregate):
            raise AssertionError("aggregate outside an Aggregate node")
        return _flat_position(expr, covered, widths)

    return position


def _compile_predicate(pred: BoundPredicate, pos_of):
    lp = pos_of(pred.left)
    op = _OPS[pred.op]
    left_family = family(pred.left.col_type)

    if isinstance(pred.right, BoundColumn):
        rp = pos_of(pred.right)
        if left_family == family(pred.right.col_type):
            return lambda r: op(r[lp], r[rp])
        const = _cross_family_result(pred.op, left_family, family(pred.right.col_type))
        return lambda r: const

    lit = pred.right.value
    if left_family == value_family(lit):
        return lambda r: op(r[lp], lit)
    const = _cross_family_result(pred.op, left_family, value_family(lit))
    return lambda r: const


def _cross_family_result(op: str, left_family: int, right_family: int) -> bool:
    # Values of different families are never equal; ordering ranks the
    # numeric family before text. Keeps every comparison total.
    if op == "=":
        return False
    if op == "<>":
        return True
    if op in ("<", "<="):
        return left_family < right_family
    return left_family > right_family


def _materialize(db, node, widths) -> list[tuple]:
    if isinstance(node, Scan):
        return db.table(node.table.name).store.rows
    if isinstance(node, Filter):
        rows = _materialize(db, node.child, widths)
        covered = _covered(node.child)
        for pred in node.predicates:
            test = _compile_predicate(pred, lambda c: _flat_position(c, covered, widths))
            rows = [r for r in rows if test(r)]
        return rows
    if isinstance(node, HashJoin):
        left_rows = _materialize(db, node.left, widths)
        right_rows = _materialize(db, node.right, widths)
        left_covered = _covered(node.left)
        right_covered = _covered(node.right)
        lk = _flat_position(node.left_key, left_covered, widths)
        rk = _flat_position(node.right_key, right_covered, widths)
        return hash_join(left_rows, right_rows, lk, rk)
    if isinstance(node, Aggregate):
        rows = _materialize(db, node.child, widths)
        covered = _covered(node.child)
        key_positions = tuple(
            _flat_position(c, covered, widths) for c in node.group_keys
        )
        specs = [
            AggSpec(
                agg.func,
                _flat_position(agg.arg, covered, widths),
                agg.display,
                agg.arg.col_type is SqlType.INT,
            )
            for agg in node.aggregates
        ]
        return aggregate_rows(rows, key_positions, specs)
    raise TypeError(f"cannot materialize node: {type(node).__name__}")


# ── explain ─────────────────────────────────────────────────────────────

def explain(p: Plan) -> str:
    """Stable indented rendering of the operator tree."""
    lines: list[str] = []

    def emit(node, depth: int) -> None:
        pad = "  " * depth
        if isinstance(node, Sort):
            keys = ", ".join(
                f"{k.expr.display} {'DESC' if k.descending else 'ASC'}"
                for k in node.keys
            )
            lines.append(f"{pad}Sort [{keys}]")
            emit(node.child, depth + 1)
        elif isinstance(node, Project):
            lines.append(f"{pad}Project [{', '.join(i.header for i in node.items)}]")
            emit(node.child, depth + 1)
        elif isinstance(node, Aggregate):
            keys = ", ".join(c.display for c in node.group_keys)
            aggs = ", ".join(a.display for a in node.aggregates)
            lines.append(f"{pad}Aggregate group=[{keys}] aggregates=[{aggs}]")
            emit(node.child, depth + 1)
        elif isinstance(node, Filter):
            preds = " AND ".join(pr.describe() for pr in node.predicates)
            lines.append(f"{pad}Filter {preds}")
            emit(node.child, depth + 1)
        elif isinstance(node, HashJoin):
            lines.append(f"{pad}HashJoin {node.left_key.display} = {node.right_key.display}")
            emit(node.left, depth + 1)
            emit(node.right, depth + 1)
        elif isinstance(node, Scan):
            lines.append(f"{pad}Scan {node.table.describe()}")
        else:
            raise TypeError(f"unknown node: {type(node).__name__}")

    emit(p.root, 0)
    return "\n".join(lines) + "\n"

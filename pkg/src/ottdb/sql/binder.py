"""Name resolution: attach schema positions to every column reference.

Bare identifiers resolve case-insensitively (the dialect mixes spellings
like ``show_id`` and ``Show_id``). Quoted identifiers resolve exactly
first, falling back to a unique case-insensitive match, so quoting stays
purely syntactic. Ambiguity at any point is an error, never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog import TableDef, quote_identifier
from ..errors import (
    AmbiguousColumnError,
    BindError,
    UngroupedColumnError,
    UnknownColumnError,
    UnknownTableError,
)
from ..values import SqlType
from .ast import Aggregate, ColumnRef, Literal, Query


@dataclass(frozen=True)
class BoundTable:
    index: int
    name: str            # resolved table name
    alias: str | None
    defn: TableDef

    @property
    def key(self) -> str:
        """The qualifier this table answers to."""
        return self.alias if self.alias is not None else self.name

    def describe(self) -> str:
        text = quote_identifier(self.name)
        if self.alias:
            text += f" as {self.alias}"
        return text


@dataclass(frozen=True)
class BoundColumn:
    table: int           # scope index
    column: int          # position within the table's row
    col_type: SqlType
    display: str         # canonical qualified form, e.g. b.Seasons


@dataclass(frozen=True)
class BoundAggregate:
    func: str
    arg: BoundColumn
    display: str         # as written in the query, e.g. COUNT(Actor_id)

    @property
    def identity(self) -> tuple:
        return (self.func, self.arg.table, self.arg.column)


@dataclass(frozen=True)
class BoundPredicate:
    left: BoundColumn
    op: str
    right: BoundColumn | Literal

    def describe(self) -> str:
        right = self.right.display if isinstance(self.right, BoundColumn) else self.right.sql_text()
        return f"{self.left.display} {self.op} {right}"

    def tables(self) -> set[int]:
        out = {self.left.table}
        if isinstance(self.right, BoundColumn):
            out.add(self.right.table)
        return out


@dataclass(frozen=True)
class BoundJoin:
    table: BoundTable            # the newly joined table
    left: BoundColumn            # key into the tables already in scope
    right: BoundColumn           # key into the new table

    def describe(self) -> str:
        return f"{self.left.display} = {self.right.display}"


@dataclass(frozen=True)
class BoundSelectItem:
    expr: BoundColumn | BoundAggregate
    header: str


@dataclass(frozen=True)
class BoundOrderItem:
    expr: BoundColumn | BoundAggregate
    descending: bool


@dataclass(frozen=True)
class BoundQuery:
    tables: tuple[BoundTable, ...]
    select: tuple[BoundSelectItem, ...]
    joins: tuple[BoundJoin, ...]
    where: tuple[BoundPredicate, ...]
    group_by: tuple[BoundColumn, ...]
    order_by: tuple[BoundOrderItem, ...]
    grouped: bool
    aggregates: tuple[BoundAggregate, ...]  # deduplicated, select before order

    @property
    def headers(self) -> list[str]:
        return [item.header for item in self.select]

    def offsets(self) -> list[int]:
        """Start position of each table inside the concatenated row."""
        starts = []
        total = 0
        for t in self.tables:
            starts.append(total)
            total += t.defn.width
        return starts

    @property
    def width(self) -> int:
        return sum(t.defn.width for t in self.tables)


class _Scope:
    def __init__(self):
        self.entries: list[BoundTable] = []

    def add(self, entry: BoundTable) -> None:
        key = entry.key.lower()
        if any(e.key.lower() == key for e in self.entries):
            raise BindError(f"duplicate table name or alias in scope: {entry.key!r}")
        self.entries.append(entry)

    def _entry_for(self, qualifier: str) -> BoundTable:
        exact = [e for e in self.entries if e.key == qualifier]
        if len(exact) == 1:
            return exact[0]
        lowered = qualifier.lower()
        ci = [e for e in self.entries if e.key.lower() == lowered]
        if len(ci) == 1:
            return ci[0]
        if ci:
            raise BindError(f"qualifier {qualifier!r} matches several tables")
        raise UnknownTableError(qualifier)

    @staticmethod
    def _column_in(entry: BoundTable, name: str) -> int | None:
        names = entry.defn.column_names
        if name in names:
            return names.index(name)
        lowered = name.lower()
        hits = [i for i, n in enumerate(names) if n.lower() == lowered]
        if len(hits) == 1:
            return hits[0]
        if len(hits) > 1:
            raise AmbiguousColumnError(
                name, [f"{entry.key}.{names[i]}" for i in hits]
            )
        return None

    def resolve(self, ref: ColumnRef) -> BoundColumn:
        if ref.qualifier is not None:
            entry = self._entry_for(ref.qualifier)
            idx = self._column_in(entry, ref.name)
            if idx is None:
                raise UnknownColumnError(ref.name, entry.name)
            return self._bound(entry, idx)

        exact: list[tuple[BoundTable, int]] = []
        ci: list[tuple[BoundTable, int]] = []
        lowered = ref.name.lower()
        for entry in self.entries:
            for i, n in enumerate(entry.defn.column_names):
                if n == ref.name:
                    exact.append((entry, i))
                elif n.lower() == lowered:
                    ci.append((entry, i))
        hits = exact if exact else ci
        if len(hits) == 1:
            return self._bound(*hits[0])
        if len(hits) > 1:
            raise AmbiguousColumnError(
                ref.name,
                [f"{e.key}.{e.defn.column_names[i]}" for e, i in hits],
            )
        raise UnknownColumnError(ref.name)

    @staticmethod
    def _bound(entry: BoundTable, column: int) -> BoundColumn:
        col = entry.defn.columns[column]
        display = f"{quote_identifier(entry.key)}.{quote_identifier(col.name)}"
        return BoundColumn(entry.index, column, col.col_type, display)


def bind(query: Query, db) -> BoundQuery:
    """Resolve a parsed query against a database's schema."""
    scope = _Scope()
    from_defn = db.table(query.table.table).defn
    scope.add(BoundTable(0, from_defn.name, query.table.alias, from_defn))

    joins: list[BoundJoin] = []
    for k, join in enumerate(query.joins, start=1):
        defn = db.table(join.table.table).defn
        entry = BoundTable(k, defn.name, join.table.alias, defn)
        scope.add(entry)
        left = scope.resolve(join.left)
        right = scope.resolve(join.right)
        sides = {left.table, right.table}
        if k not in sides or sides == {k}:
            raise BindError(
                f"join condition must link {entry.key!r} to an earlier table: "
                f"{join.left.display()} = {join.right.display()}"
            )
        if left.table == k:
            left, right = right, left
        joins.append(BoundJoin(entry, left, right))

    where = []
    for pred in query.where:
        left = scope.resolve(pred.left)
        right = scope.resolve(pred.right) if isinstance(pred.right, ColumnRef) else pred.right
        where.append(BoundPredicate(left, pred.op, right))

    group_by = [scope.resolve(ref) for ref in query.group_by]
    group_keys = {(c.table, c.column) for c in group_by}

    def bind_aggregate(agg: Aggregate) -> BoundAggregate:
        arg = scope.resolve(agg.arg)
        if agg.func == "SUM" and arg.col_type not in (SqlType.INT, SqlType.DECIMAL):
            raise BindError(f"SUM requires a numeric column, got {arg.display}")
        return BoundAggregate(agg.func, arg, agg.display())

    select: list[BoundSelectItem] = []
    for item in query.select:
        if isinstance(item.expr, Aggregate):
            expr = bind_aggregate(item.expr)
            header = item.alias if item.alias is not None else expr.display
        else:
            expr = scope.resolve(item.expr)
            header = item.alias if item.alias is not None else item.expr.name
        select.append(BoundSelectItem(expr, header))

    order_by: list[BoundOrderItem] = []
    for item in query.order_by:
        if isinstance(item.expr, Aggregate):
            order_by.append(BoundOrderItem(bind_aggregate(item.expr), item.descending))
        else:
            order_by.append(BoundOrderItem(scope.resolve(item.expr), item.descending))

    has_aggregate = any(isinstance(i.expr, BoundAggregate) for i in select) or any(
        isinstance(i.expr, BoundAggregate) for i in order_by
    )
    grouped = bool(group_by) or has_aggregate
    if grouped:
        for item, source in zip(select, query.select):
            if isinstance(item.expr, BoundColumn):
                if (item.expr.table, item.expr.column) not in group_keys:
                    raise UngroupedColumnError(source.expr.display())
        for item, source in zip(order_by, query.order_by):
            if isinstance(item.expr, BoundColumn):
                if (item.expr.table, item.expr.column) not in group_keys:
                    raise UngroupedColumnError(source.expr.display())

    aggregates: list[BoundAggregate] = []
    seen = set()
    for item in list(select) + list(order_by):
        if isinstance(item.expr, BoundAggregate) and item.expr.identity not in seen:
            seen.add(item.expr.identity)
            aggregates.append(item.expr)

    return BoundQuery(
        tables=tuple(scope.entries),
        select=tuple(select),
        joins=tuple(joins),
        where=tuple(where),
        group_by=tuple(group_by),
        order_by=tuple(order_by),
        grouped=grouped,
        aggregates=tuple(aggregates),
    )

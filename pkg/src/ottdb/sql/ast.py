"""AST for the query dialect, plus its stable debug rendering."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from ..catalog import quote_identifier


@dataclass(frozen=True)
class ColumnRef:
    qualifier: str | None  # table name or alias as written, None if bare
    name: str              # column name as written (without backticks)
    quoted: bool = False   # name was backtick-quoted in the source

    def sql_text(self) -> str:
        name = quote_identifier(self.name) if not self.quoted else f"`{self.name}`"
        if self.qualifier is None:
            return name
        return f"{self.qualifier}.{name}"

    def display(self) -> str:
        """Source form without quoting: 'qualifier.name' or 'name'."""
        return self.name if self.qualifier is None else f"{self.qualifier}.{self.name}"


@dataclass(frozen=True)
class Aggregate:
    func: str  # COUNT or SUM
    arg: ColumnRef

    def sql_text(self) -> str:
        return f"{self.func}({self.arg.sql_text()})"

    def display(self) -> str:
        return f"{self.func}({self.arg.display()})"


@dataclass(frozen=True)
class Literal:
    value: int | Decimal | str

    def sql_text(self) -> str:
        if isinstance(self.value, str):
            escaped = self.value.replace("'", "''")
            return f"'{escaped}'"
        return str(self.value)


@dataclass(frozen=True)
class SelectItem:
    expr: ColumnRef | Aggregate
    alias: str | None = None


@dataclass(frozen=True)
class TableRef:
    table: str
    alias: str | None = None


@dataclass(frozen=True)
class Join:
    table: TableRef
    left: ColumnRef
    right: ColumnRef


@dataclass(frozen=True)
class Predicate:
    left: ColumnRef
    op: str  # = <> < <= > >=
    right: ColumnRef | Literal

    def sql_text(self) -> str:
        return f"{self.left.sql_text()} {self.op} {self.right.sql_text()}"


@dataclass(frozen=True)
class OrderItem:
    expr: ColumnRef | Aggregate
    descending: bool = False


@dataclass(frozen=True)
class Query:
    select: tuple[SelectItem, ...]
    table: TableRef
    joins: tuple[Join, ...] = ()
    where: tuple[Predicate, ...] = ()
    group_by: tuple[ColumnRef, ...] = ()
    order_by: tuple[OrderItem, ...] = ()


@dataclass(frozen=True)
class CreateTable:
    """Admin DDL statement: CREATE TABLE with typed columns and keys."""

    name: str
    columns: tuple[tuple[str, str], ...]  # (column name, type word)
    primary_key: tuple[str, ...]
    foreign_keys: tuple[tuple[tuple[str, ...], str, tuple[str, ...]], ...] = ()


def _table_text(ref: TableRef) -> str:
    text = quote_identifier(ref.table)
    if ref.alias:
        text += f" as {ref.alias}"
    return text


def ast_text(query: Query) -> str:
    """Stable indented rendering, used by --parse-only and golden tests."""
    lines = ["query", "  select"]
    for item in query.select:
        entry = f"    {item.expr.sql_text()}"
        if item.alias is not None:
            entry += f" as {item.alias}"
        lines.append(entry)
    lines.append(f"  from {_table_text(query.table)}")
    for join in query.joins:
        lines.append(
            f"  join {_table_text(join.table)} on "
            f"{join.left.sql_text()} = {join.right.sql_text()}"
        )
    if query.where:
        lines.append("  where")
        for pred in query.where:
            lines.append(f"    {pred.sql_text()}")
    if query.group_by:
        lines.append("  group by")
        for col in query.group_by:
            lines.append(f"    {col.sql_text()}")
    if query.order_by:
        lines.append("  order by")
        for item in query.order_by:
            direction = "desc" if item.descending else "asc"
            lines.append(f"    {item.expr.sql_text()} {direction}")
    return "\n".join(lines) + "\n"

"""Three-role authorization gating every engine entry point.

Clients read (query, dump), contributors additionally add rows (still
subject to row validation — the "prespecified constraints"), admins do
everything including DDL. There is no authentication: the role is picked
at session start, because this is an embedded engine, not a server.

``authorize`` returns a decision value (deny is not an exception); the
Session wrapper raises PermissionDeniedError on deny so callers cannot
ignore it by accident. Every decision is appended to the audit log.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import engine
from .database import Database, load_dataset
from .errors import PermissionDeniedError
from .result import ResultSet
from .sql.ast import CreateTable, Query
from .sql.binder import bind
from .sql.lexer import tokenize
from .sql.parser import parse


class Role(enum.Enum):
    CLIENT = "client"
    CONTRIBUTOR = "contributor"
    ADMIN = "admin"

    @property
    def rank(self) -> int:
        return _RANKS[self]

    def __ge__(self, other: "Role") -> bool:
        return self.rank >= other.rank

    def __gt__(self, other: "Role") -> bool:
        return self.rank > other.rank

    def __le__(self, other: "Role") -> bool:
        return self.rank <= other.rank

    def __lt__(self, other: "Role") -> bool:
        return self.rank < other.rank


_RANKS = {Role.CLIENT: 0, Role.CONTRIBUTOR: 1, Role.ADMIN: 2}


class Action(enum.Enum):
    QUERY = "query"
    INSERT = "insert"
    LOAD_CSV = "load_csv"
    CREATE_TABLE = "create_table"
    DELETE_ROW = "delete_row"
    UPDATE_ROW = "update_row"
    DUMP_CSV = "dump_csv"


ROLE_ACTIONS: dict[Role, frozenset[Action]] = {
    Role.CLIENT: frozenset({Action.QUERY, Action.DUMP_CSV}),
    Role.CONTRIBUTOR: frozenset(
        {Action.QUERY, Action.DUMP_CSV, Action.INSERT, Action.LOAD_CSV}
    ),
    Role.ADMIN: frozenset(Action),
}


@dataclass(frozen=True)
class Decision:
    allowed: bool
    role: Role
    action: Action
    reason: str


class AuditLog:
    """Appends one line per authorization decision to a file."""

    def __init__(self, path):
        self.path = Path(path)

    def record(self, decision: Decision) -> None:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        line = (
            f"{stamp} role={decision.role.value} action={decision.action.value} "
            f"verdict={'allow' if decision.allowed else 'deny'}\n"
        )
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(line)


def authorize(session: "Session", action: Action) -> Decision:
    """Pure decision over (role, action), plus an audit-log side entry."""
    role = session.role
    allowed = action in ROLE_ACTIONS[role]
    if allowed:
        reason = f"{role.value} may {action.value}"
    else:
        reason = f"{action.value} requires a higher role than {role.value}"
    decision = Decision(allowed, role, action, reason)
    if session.audit is not None:
        session.audit.record(decision)
    return decision


@dataclass(frozen=True)
class Session:
    """One role bound to one database; the role never changes afterwards."""

    role: Role
    db: Database
    audit: AuditLog | None = None

    def _require(self, action: Action) -> None:
        decision = authorize(self, action)
        if not decision.allowed:
            raise PermissionDeniedError(self.role.value, action.value)

    # ── read side ───────────────────────────────────────────────────────

    def query(self, text: str) -> ResultSet:
        self._require(Action.QUERY)
        return engine.run(self.db, text)

    def explain(self, text: str) -> str:
        self._require(Action.QUERY)
        bound = bind(_expect_query(text), self.db)
        return engine.explain(engine.plan(bound))

    def parse_only(self, text: str) -> str:
        from .sql.ast import ast_text

        self._require(Action.QUERY)
        return ast_text(_expect_query(text))

    def check(self):
        self._require(Action.QUERY)
        return self.db.check_integrity()

    def dump_csv(self, table: str) -> bytes:
        self._require(Action.DUMP_CSV)
        return self.db.dump_csv(table)

    # ── write side ──────────────────────────────────────────────────────

    def insert(self, table: str, row) -> int:
        self._require(Action.INSERT)
        return self.db.insert(table, row)

    def load_csv(self, table: str, source) -> int:
        self._require(Action.LOAD_CSV)
        return self.db.load_csv(table, source)

    def load_dataset(self, directory) -> dict[str, int]:
        self._require(Action.LOAD_CSV)
        return load_dataset(self.db, directory)

    def create_table(self, defn) -> None:
        self._require(Action.CREATE_TABLE)
        self.db.create_table(defn)

    # ── statement routing (REPL and `query` subcommand) ────────────────

    def run_sql(self, text: str) -> ResultSet | str:
        """Execute a SELECT or a CREATE TABLE, authorized per statement."""
        stmt = parse(tokenize(text))
        if isinstance(stmt, CreateTable):
            self._require(Action.CREATE_TABLE)
            self.db.create_table(_to_table_def(stmt))
            return f"created table {stmt.name}"
        self._require(Action.QUERY)
        return engine.execute(self.db, engine.plan(bind(stmt, self.db)))


def _expect_query(text: str) -> Query:
    from .sql.parser import parse_query

    return parse_query(text)


def _to_table_def(stmt: CreateTable):
    from .catalog import ColumnDef, ForeignKey, TableDef
    from .errors import BindError
    from .values import SqlType

    type_words = {t.value.upper(): t for t in SqlType}
    columns = []
    for name, word in stmt.columns:
        if word not in type_words:
            raise BindError(f"unknown column type {word!r} (use Int, Decimal, Text, Bool)")
        columns.append(ColumnDef(name, type_words[word]))
    fks = tuple(
        ForeignKey(tuple(local), target, tuple(foreign))
        for local, target, foreign in stmt.foreign_keys
    )
    return TableDef(stmt.name, tuple(columns), stmt.primary_key, fks)

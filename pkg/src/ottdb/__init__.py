"""ottdb: an embedded relational engine for streaming-media catalogs.

The 26-table catalog schema is built in; data arrives through CSV
datasets; queries run through a small SQL dialect (SELECT with inner
joins, conjunctive filters, COUNT/SUM grouping, ORDER BY). A brute-force
evaluator ships alongside the planned executor so results can always be
cross-checked on small instances.
"""

from . import engine, oracle
from .access import Action, AuditLog, Role, Session, authorize
from .builtin_queries import query_text
from .catalog import ColumnDef, ForeignKey, TableDef, builtin_table_defs
from .database import (
    Database,
    Violation,
    builtin_schema,
    csv_filename,
    load_dataset,
)
from .engine import execute, explain, plan, run
from .errors import OttdbError
from .result import ResultSet
from .sql import ast_text, bind, parse, parse_query, tokenize
from .values import SqlType

__all__ = [
    "Action", "AuditLog", "ColumnDef", "Database", "ForeignKey", "OttdbError",
    "ResultSet", "Role", "Session", "SqlType", "TableDef", "Violation",
    "ast_text", "authorize", "bind", "builtin_schema", "builtin_table_defs",
    "csv_filename", "engine", "execute", "explain", "load_dataset", "oracle",
    "parse", "parse_query", "plan", "query_text", "run", "tokenize",
]

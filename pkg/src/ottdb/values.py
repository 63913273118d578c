"""Scalar values for the four column types: Int, Decimal, Text, Bool.

Ints are 64-bit (range-checked on the way in, overflow-checked on SUM).
Decimals use :class:`decimal.Decimal` so comparisons against integer
literals are exact (10 == 10.0). Booleans are stored as Python bools and
displayed as 0/1; because ``True == 1`` in Python, SQL literals 0/1
compare against Bool columns with no special casing.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from enum import Enum

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

_INT_RE = re.compile(r"[+-]?[0-9]+")

# A stored value is bool | int | Decimal | str (bool checked before int).
Value = object


class SqlType(Enum):
    INT = "Int"
    DECIMAL = "Decimal"
    TEXT = "Text"
    BOOL = "Bool"

    def __str__(self) -> str:
        return self.value


NUMERIC_TYPES = frozenset({SqlType.INT, SqlType.DECIMAL, SqlType.BOOL})


def matches(value, sql_type: SqlType) -> bool:
    """True iff ``value`` is a well-formed stored value for ``sql_type``."""
    if sql_type is SqlType.BOOL:
        return isinstance(value, bool)
    if sql_type is SqlType.INT:
        return (
            isinstance(value, int)
            and not isinstance(value, bool)
            and INT64_MIN <= value <= INT64_MAX
        )
    if sql_type is SqlType.DECIMAL:
        return isinstance(value, Decimal) and value.is_finite()
    # NUL and bare carriage returns cannot round-trip through the
    # line-oriented CSV interface, so they are not Text values.
    return isinstance(value, str) and "\x00" not in value and "\r" not in value


def parse_field(text: str, sql_type: SqlType):
    """Parse one CSV cell (or structured-insert field) into a stored value.

    Raises ValueError on malformed input; callers turn that into the
    appropriate type-mismatch error with context.
    """
    if sql_type is SqlType.INT:
        if not _INT_RE.fullmatch(text):
            raise ValueError(f"not an integer: {text!r}")
        v = int(text)
        if not INT64_MIN <= v <= INT64_MAX:
            raise ValueError(f"integer out of 64-bit range: {text!r}")
        return v
    if sql_type is SqlType.DECIMAL:
        try:
            v = Decimal(text)
        except InvalidOperation:
            raise ValueError(f"not a decimal: {text!r}") from None
        if not v.is_finite():
            raise ValueError(f"not a finite decimal: {text!r}")
        return v
    if sql_type is SqlType.BOOL:
        if text == "0":
            return False
        if text == "1":
            return True
        raise ValueError(f"not a boolean (expected 0 or 1): {text!r}")
    return text


def coerce(value, sql_type: SqlType):
    """Best-effort conversion of a Python value to the stored form.

    Convenience for programmatic inserts: ints become Decimals in decimal
    columns, 0/1 become bools in bool columns. Strings are parsed.
    """
    if isinstance(value, str) and sql_type is not SqlType.TEXT:
        return parse_field(value, sql_type)
    if sql_type is SqlType.BOOL and isinstance(value, int) and value in (0, 1):
        return bool(value)
    if sql_type is SqlType.DECIMAL and isinstance(value, int) and not isinstance(value, bool):
        return Decimal(value)
    return value


def display(value) -> str:
    """Canonical text form: bools as 0/1, decimals with no trailing zeros."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, Decimal):
        return format(value.normalize(), "f")
    return str(value)


def family(sql_type: SqlType) -> int:
    """Comparison family: 0 = numeric (Int/Decimal/Bool), 1 = text."""
    return 0 if sql_type in NUMERIC_TYPES else 1


def value_family(value) -> int:
    return 1 if isinstance(value, str) else 0


def compare(a, b) -> int:
    """Total order over all stored values: numeric family before text.

    Within the numeric family bool/int/Decimal compare numerically, so
    True == 1 and Decimal("10") == 10. Used by the brute-force evaluator;
    the planned executor relies on native operators instead.
    """
    fa, fb = value_family(a), value_family(b)
    if fa != fb:
        return -1 if fa < fb else 1
    if a == b:
        return 0
    return -1 if a < b else 1

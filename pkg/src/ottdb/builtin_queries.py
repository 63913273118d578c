"""The six bundled reference queries, shipped verbatim as resources."""

from __future__ import annotations

from importlib import resources

QUERY_NUMBERS = (1, 2, 3, 4, 5, 6)


def query_text(number: int) -> str:
    if number not in QUERY_NUMBERS:
        raise ValueError(f"reference query number must be 1..6, got {number}")
    return (
        resources.files("ottdb").joinpath(f"queries/q{number}.sql").read_text("utf-8")
    )

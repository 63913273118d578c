"""In-memory row store: insertion-ordered rows plus equality indexes.

Rows are plain tuples. The primary-key index maps key tuples to row
positions; secondary indexes map value tuples to lists of positions.
Insertion order is the only physical order.
"""

from __future__ import annotations

from .errors import DuplicateKeyError


class RowStore:
    def __init__(self, table_name: str, key_positions: tuple[int, ...]):
        self.table_name = table_name
        self.key_positions = key_positions
        self.rows: list[tuple] = []
        self.pk_index: dict[tuple, int] = {}
        self.secondary: dict[tuple[int, ...], dict[tuple, list[int]]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def key_of(self, row: tuple) -> tuple:
        return tuple(row[i] for i in self.key_positions)

    def append(self, row: tuple) -> int:
        """Append a validated row; updates every index. Returns the position."""
        key = self.key_of(row)
        if key in self.pk_index:
            raise DuplicateKeyError(self.table_name, key)
        pos = len(self.rows)
        self.rows.append(row)
        self.pk_index[key] = pos
        for positions, index in self.secondary.items():
            index.setdefault(tuple(row[i] for i in positions), []).append(pos)
        return pos

    def create_secondary(self, positions: tuple[int, ...]) -> None:
        if positions in self.secondary:
            return
        index: dict[tuple, list[int]] = {}
        for pos, row in enumerate(self.rows):
            index.setdefault(tuple(row[i] for i in positions), []).append(pos)
        self.secondary[positions] = index

    def lookup_secondary(self, positions: tuple[int, ...], values: tuple) -> list[int]:
        return self.secondary[positions].get(values, [])

    def rebuilt_secondary(self, positions: tuple[int, ...]) -> dict[tuple, list[int]]:
        """Recompute a secondary index from scratch (for invariant checks)."""
        index: dict[tuple, list[int]] = {}
        for pos, row in enumerate(self.rows):
            index.setdefault(tuple(row[i] for i in positions), []).append(pos)
        return index

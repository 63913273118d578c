"""Recursive-descent parser for the query dialect.

Grammar:

    stmt     := select | create_table
    select   := SELECT item (',' item)* FROM tableref join*
                where? groupby? orderby? ';'?
    item     := expr (AS alias)?         -- alias: identifier or string literal
    expr     := (COUNT | SUM) '(' colref ')' | colref
    colref   := name ('.' name)?         -- name: bare or backtick-quoted
    tableref := name (AS? identifier)?
    join     := JOIN tableref ON colref '=' colref
    where    := WHERE pred (AND pred)*
    pred     := colref op (literal | colref),  op in {=, <>, <, <=, >, >=}
    groupby  := GROUP BY colref (',' colref)*
    orderby  := ORDER BY expr (ASC|DESC)? (',' expr (ASC|DESC)?)*

CREATE TABLE is the one DDL form admins use; its words (CREATE, TABLE,
PRIMARY, KEY, FOREIGN, REFERENCES and the type names) are matched as
plain identifiers so they stay usable as column names in queries.
"""

from __future__ import annotations

from decimal import Decimal

from ..errors import TrailingInputError, UnexpectedTokenError
from .ast import (
    Aggregate,
    ColumnRef,
    CreateTable,
    Join,
    Literal,
    OrderItem,
    Predicate,
    Query,
    SelectItem,
    TableRef,
)
from .lexer import Token, TokenKind, tokenize

_COMPARISON_OPS = frozenset({"=", "<>", "<", "<=", ">", ">="})
_NAME_KINDS = (TokenKind.IDENTIFIER, TokenKind.QUOTED_IDENTIFIER)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # ── stream helpers ──────────────────────────────────────────────────

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, expected: str) -> UnexpectedTokenError:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.column + (last.end - last.start) if last else 1
            return UnexpectedTokenError(expected, "end of input", line, col)
        return UnexpectedTokenError(expected, tok.describe(), tok.line, tok.column)

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind is TokenKind.KEYWORD and tok.text.upper() == word

    def take_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self.error(word)
        return self.advance()

    def at_symbol(self, sym: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind is TokenKind.SYMBOL and tok.text == sym

    def take_symbol(self, sym: str) -> bool:
        if self.at_symbol(sym):
            self.advance()
            return True
        return False

    def expect_symbol(self, sym: str) -> Token:
        if not self.at_symbol(sym):
            raise self.error(f"'{sym}'")
        return self.advance()

    # The identifier-like word check for the DDL form: a bare identifier
    # whose upper-cased text equals `word`.
    def at_word(self, word: str) -> bool:
        tok = self.peek()
        return (
            tok is not None
            and tok.kind is TokenKind.IDENTIFIER
            and tok.text.upper() == word
        )

    def take_word(self, word: str) -> bool:
        if self.at_word(word):
            self.advance()
            return True
        return False

    def expect_word(self, word: str) -> Token:
        if not self.at_word(word):
            raise self.error(word)
        return self.advance()

    # ── shared pieces ───────────────────────────────────────────────────

    def name(self, what: str) -> tuple[str, bool]:
        """A bare or quoted identifier; returns (text, was_quoted)."""
        tok = self.peek()
        if tok is not None and tok.kind in _NAME_KINDS:
            self.advance()
            return tok.text, tok.kind is TokenKind.QUOTED_IDENTIFIER
        raise self.error(what)

    def column_ref(self) -> ColumnRef:
        first, first_quoted = self.name("column name")
        if self.take_symbol("."):
            second, second_quoted = self.name("column name")
            return ColumnRef(first, second, second_quoted)
        return ColumnRef(None, first, first_quoted)

    def expr(self) -> ColumnRef | Aggregate:
        for func in ("COUNT", "SUM"):
            if self.at_keyword(func):
                self.advance()
                self.expect_symbol("(")
                arg = self.column_ref()
                self.expect_symbol(")")
                return Aggregate(func, arg)
        return self.column_ref()

    def literal(self) -> Literal:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.NUMBER_LITERAL:
            self.advance()
            value = Decimal(tok.text) if "." in tok.text else int(tok.text)
            return Literal(value)
        if tok is not None and tok.kind is TokenKind.STRING_LITERAL:
            self.advance()
            return Literal(tok.text)
        raise self.error("literal")

    # ── SELECT ──────────────────────────────────────────────────────────

    def select_item(self) -> SelectItem:
        expr = self.expr()
        alias = None
        if self.take_keyword("AS"):
            tok = self.peek()
            if tok is not None and tok.kind in (
                TokenKind.IDENTIFIER,
                TokenKind.QUOTED_IDENTIFIER,
                TokenKind.STRING_LITERAL,  # the bundled queries alias with 'TOTAL'
            ):
                self.advance()
                alias = tok.text
            else:
                raise self.error("alias")
        return SelectItem(expr, alias)

    def table_ref(self) -> TableRef:
        table, _ = self.name("table name")
        alias = None
        if self.take_keyword("AS"):
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.IDENTIFIER:
                raise self.error("alias")
            alias = self.advance().text
        else:
            tok = self.peek()
            if tok is not None and tok.kind is TokenKind.IDENTIFIER:
                alias = self.advance().text
        return TableRef(table, alias)

    def predicate(self) -> Predicate:
        left = self.column_ref()
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.SYMBOL or tok.text not in _COMPARISON_OPS:
            raise self.error("comparison operator")
        op = self.advance().text
        nxt = self.peek()
        if nxt is not None and nxt.kind in _NAME_KINDS:
            return Predicate(left, op, self.column_ref())
        return Predicate(left, op, self.literal())

    def select_stmt(self) -> Query:
        self.expect_keyword("SELECT")
        items = [self.select_item()]
        while self.take_symbol(","):
            items.append(self.select_item())
        self.expect_keyword("FROM")
        table = self.table_ref()

        joins = []
        while self.take_keyword("JOIN"):
            ref = self.table_ref()
            self.expect_keyword("ON")
            left = self.column_ref()
            self.expect_symbol("=")
            right = self.column_ref()
            joins.append(Join(ref, left, right))

        where = []
        if self.take_keyword("WHERE"):
            where.append(self.predicate())
            while self.take_keyword("AND"):
                where.append(self.predicate())

        group_by = []
        if self.take_keyword("GROUP"):
            self.expect_keyword("BY")
            group_by.append(self.column_ref())
            while self.take_symbol(","):
                group_by.append(self.column_ref())

        order_by = []
        if self.take_keyword("ORDER"):
            self.expect_keyword("BY")
            while True:
                expr = self.expr()
                descending = False
                if self.take_keyword("DESC"):
                    descending = True
                else:
                    self.take_keyword("ASC")
                order_by.append(OrderItem(expr, descending))
                if not self.take_symbol(","):
                    break

        return Query(
            select=tuple(items),
            table=table,
            joins=tuple(joins),
            where=tuple(where),
            group_by=tuple(group_by),
            order_by=tuple(order_by),
        )

    # ── CREATE TABLE ────────────────────────────────────────────────────

    def create_table_stmt(self) -> CreateTable:
        self.expect_word("CREATE")
        self.expect_word("TABLE")
        name, _ = self.name("table name")
        self.expect_symbol("(")

        columns: list[tuple[str, str]] = []
        primary_key: tuple[str, ...] = ()
        foreign_keys: list[tuple[tuple[str, ...], str, tuple[str, ...]]] = []

        while True:
            if self.at_word("PRIMARY"):
                self.advance()
                self.expect_word("KEY")
                primary_key = self.paren_name_list()
            elif self.at_word("FOREIGN"):
                self.advance()
                self.expect_word("KEY")
                local = self.paren_name_list()
                self.expect_word("REFERENCES")
                target, _ = self.name("table name")
                foreign = self.paren_name_list()
                foreign_keys.append((local, target, foreign))
            else:
                col, _ = self.name("column name")
                tok = self.peek()
                if tok is None or tok.kind is not TokenKind.IDENTIFIER:
                    raise self.error("column type (INT, DECIMAL, TEXT, BOOL)")
                columns.append((col, self.advance().text.upper()))
            if not self.take_symbol(","):
                break
        self.expect_symbol(")")
        return CreateTable(name, tuple(columns), primary_key, tuple(foreign_keys))

    def paren_name_list(self) -> tuple[str, ...]:
        self.expect_symbol("(")
        names = [self.name("column name")[0]]
        while self.take_symbol(","):
            names.append(self.name("column name")[0])
        self.expect_symbol(")")
        return tuple(names)

    # ── entry ───────────────────────────────────────────────────────────

    def statement(self) -> Query | CreateTable:
        if self.at_word("CREATE"):
            stmt = self.create_table_stmt()
        else:
            stmt = self.select_stmt()
        self.take_symbol(";")
        if not self.at_end():
            tok = self.peek()
            raise TrailingInputError(tok.describe(), tok.line, tok.column)
        return stmt


def parse(tokens: list[Token]) -> Query | CreateTable:
    return _Parser(tokens).statement()


def parse_query(text: str) -> Query:
    """Tokenize and parse a SELECT statement."""
    stmt = parse(tokenize(text))
    if not isinstance(stmt, Query):
        raise UnexpectedTokenError("SELECT", "CREATE TABLE statement", 1, 1)
    return stmt

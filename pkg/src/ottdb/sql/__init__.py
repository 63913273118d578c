"""SQL frontend: tokenizer, recursive-descent parser, and binder."""

from .ast import (
    Aggregate,
    ColumnRef,
    Join,
    Literal,
    OrderItem,
    Predicate,
    Query,
    SelectItem,
    TableRef,
    ast_text,
)
from .binder import BoundQuery, bind
from .lexer import Token, TokenKind, tokenize
from .parser import parse, parse_query

__all__ = [
    "Aggregate", "ColumnRef", "Join", "Literal", "OrderItem", "Predicate",
    "Query", "SelectItem", "TableRef", "ast_text",
    "BoundQuery", "bind",
    "Token", "TokenKind", "tokenize",
    "parse", "parse_query",
]

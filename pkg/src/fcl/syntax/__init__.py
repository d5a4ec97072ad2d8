"""Lexing, parsing, deparsing and free-symbol analysis."""
from fcl.syntax.analysis import free_symbols
from fcl.syntax.deparse import deparse, deparse_function
from fcl.syntax.lexer import Token, tokenize
from fcl.syntax.nodes import (
    Arg, Assign, Block, BoolLit, Call, Lambda, NullLit, NumberLit, Param, Pipe,
    SourceSpan, StringLit, Symbol,
)
from fcl.syntax.parser import parse, parse_expr

__all__ = [
    "Arg", "Assign", "Block", "BoolLit", "Call", "Lambda", "NullLit", "NumberLit",
    "Param", "Pipe", "SourceSpan", "StringLit", "Symbol", "Token",
    "deparse", "deparse_function", "free_symbols", "parse", "parse_expr", "tokenize",
]

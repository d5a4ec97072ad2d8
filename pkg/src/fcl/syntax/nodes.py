"""AST node types.

Nodes are frozen dataclasses; ``span`` is excluded from equality so that two
trees compare structurally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


_span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class NumberLit:
    value: float
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class StringLit:
    value: str
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class BoolLit:
    value: bool
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class NullLit:
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Symbol:
    name: str
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Arg:
    name: Optional[str]
    expr: "Expr"


@dataclass(frozen=True)
class Param:
    name: str
    default: Optional["Expr"] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("parameter name must be nonempty")


@dataclass(frozen=True)
class Call:
    head: "Expr"
    args: Tuple[Arg, ...] = ()
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Lambda:
    params: Tuple[Param, ...]
    body: "Expr"
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Pipe:
    lhs: "Expr"
    rhs: "Expr"
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Assign:
    target: str
    value: "Expr"
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Block:
    exprs: Tuple["Expr", ...]
    # Top-level programs are unbraced; ``{ ... }`` bodies are braced.
    braced: bool = False
    span: Optional[SourceSpan] = _span


Expr = Union[NumberLit, StringLit, BoolLit, NullLit, Symbol, Call, Lambda, Pipe, Assign, Block]

BINARY_OPS = ("+", "-", "*", "/", ">", "<", ">=", "<=", "==", "!=")


def call(name: str, *args, **kwargs) -> Call:
    """Build ``name(args..., k = v...)`` from already-built expressions."""
    built = [Arg(None, a) for a in args] + [Arg(k, v) for k, v in kwargs.items()]
    return Call(Symbol(name), tuple(built))


def is_operator_call(e) -> bool:
    if not (isinstance(e, Call) and isinstance(e.head, Symbol)):
        return False
    if any(a.name is not None for a in e.args):
        return False
    name = e.head.name
    if name in BINARY_OPS and len(e.args) == 2:
        return True
    return name == "-" and len(e.args) == 1

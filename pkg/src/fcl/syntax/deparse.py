"""Render ASTs back to canonical source text."""
from __future__ import annotations

import math

from fcl.syntax.nodes import (
    Assign, Block, BoolLit, Call, Lambda, NullLit, NumberLit, Param, Pipe,
    StringLit, Symbol, is_operator_call,
)

INDENT = "    "

# Binding strength; higher binds tighter.
_ASSIGN, _PIPE, _CMP, _ADD, _MUL, _UNARY, _POSTFIX, _ATOM = range(8)

_BINARY_PREC = {
    ">": _CMP, "<": _CMP, ">=": _CMP, "<=": _CMP, "==": _CMP, "!=": _CMP,
    "+": _ADD, "-": _ADD, "*": _MUL, "/": _MUL,
}

_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t"}


def format_number(value: float) -> str:
    if math.isfinite(value) and value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def quote(text: str) -> str:
    return '"' + "".join(_STRING_ESCAPES.get(ch, ch) for ch in text) + '"'


def _prec(e) -> int:
    if isinstance(e, Assign):
        return _ASSIGN
    if isinstance(e, Pipe):
        return _PIPE
    if isinstance(e, Lambda):
        # A lambda body swallows everything to its right.
        return _ASSIGN
    if is_operator_call(e):
        return _UNARY if len(e.args) == 1 else _BINARY_PREC[e.head.name]
    if isinstance(e, Call):
        return _POSTFIX
    return _ATOM


def _wrap(e, minimum: int, depth: int) -> str:
    text = _deparse(e, depth)
    return f"({text})" if _prec(e) < minimum else text


def _params(params) -> str:
    parts = []
    for p in params:
        if p.default is None:
            parts.append(p.name)
        else:
            parts.append(f"{p.name} = {_deparse(p.default, 0)}")
    return ", ".join(parts)


def deparse_function(params, body, depth: int = 0) -> str:
    return f"function ({_params(params)}) {_deparse(body, depth)}"


def _deparse(e, depth: int) -> str:
    if isinstance(e, NumberLit):
        return format_number(e.value)
    if isinstance(e, StringLit):
        return quote(e.value)
    if isinstance(e, BoolLit):
        return "TRUE" if e.value else "FALSE"
    if isinstance(e, NullLit):
        return "NULL"
    if isinstance(e, Symbol):
        return e.name
    if isinstance(e, Lambda):
        return deparse_function(e.params, e.body, depth)
    if isinstance(e, Assign):
        return f"{e.target} <- {_deparse(e.value, depth)}"
    if isinstance(e, Pipe):
        return f"{_wrap(e.lhs, _PIPE, depth)} %>% {_wrap(e.rhs, _PIPE + 1, depth)}"
    if isinstance(e, Block):
        if not e.braced:
            return "\n".join(_deparse(x, depth) for x in e.exprs)
        if not e.exprs:
            return "{\n" + INDENT * depth + "}"
        inner = INDENT * (depth + 1)
        lines = [inner + _deparse(x, depth + 1) for x in e.exprs]
        return "{\n" + "\n".join(lines) + "\n" + INDENT * depth + "}"
    if isinstance(e, Call):
        if is_operator_call(e):
            op = e.head.name
            if len(e.args) == 1:
                return f"-{_wrap(e.args[0].expr, _UNARY, depth)}"
            prec = _BINARY_PREC[op]
            lhs = _wrap(e.args[0].expr, prec, depth)
            rhs = _wrap(e.args[1].expr, prec + 1, depth)
            # R writes division tight: nrow(x)/2
            return f"{lhs}/{rhs}" if op == "/" else f"{lhs} {op} {rhs}"
        head = _wrap(e.head, _POSTFIX, depth)
        args = ", ".join(
            _deparse(a.expr, depth) if a.name is None else f"{a.name} = {_deparse(a.expr, depth)}"
            for a in e.args
        )
        return f"{head}({args})"
    raise TypeError(f"cannot deparse {e!r}")


def deparse(e) -> str:
    """Canonical source text for an expression."""
    return _deparse(e, 0)


def deparse_param(p: Param) -> str:
    return _params((p,))

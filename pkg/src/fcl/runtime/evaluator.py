"""Tree-walking evaluator and the function call protocol."""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from fcl.errors import ArityError, ValueTypeError
from fcl.runtime.environment import Deferred, Environment
from fcl.runtime.values import (
    MISSING, NULL, BoolVec, Builtin, Closure, NumberVec, SpecialForm, StringVec, type_name,
)
from fcl.syntax.nodes import (
    Assign, Block, BoolLit, Call, Lambda, NullLit, NumberLit, Pipe, StringLit, Symbol,
)

CALLABLE = (Closure, Builtin, SpecialForm)

ArgList = Sequence[Tuple[Optional[str], object]]


def evaluate(e, env: Environment):
    t = type(e)
    if t is Call:
        head = e.head
        if type(head) is Symbol:
            f = env.lookup_function(head.name, CALLABLE)
        else:
            f = evaluate(head, env)
        if type(f) is SpecialForm:
            return f.handler(e.args, env)
        return apply(f, [(a.name, evaluate(a.expr, env)) for a in e.args])
    if t is Symbol:
        return env.lookup(e.name)
    if t is NumberLit:
        return NumberVec((e.value,))
    if t is StringLit:
        return StringVec((e.value,))
    if t is BoolLit:
        return BoolVec((e.value,))
    if t is NullLit:
        return NULL
    if t is Lambda:
        return Closure(e.params, e.body, env)
    if t is Assign:
        value = evaluate(e.value, env)
        env.define(e.target, value)
        return value
    if t is Block:
        value = NULL
        for x in e.exprs:
            value = evaluate(x, env)
        return value
    if t is Pipe:
        from fcl.compose import pipe

        return pipe(e.lhs, e.rhs, env)
    raise TypeError(f"not an expression: {e!r}")


def match_args(formals: Tuple[str, ...], args: ArgList, fname: str) -> dict:
    """Bind arguments to formals: exact names first, then positions in order.

    Formals left unfilled map to MISSING.
    """
    slots = dict.fromkeys(formals, MISSING)
    positional: List = []
    named = set()
    for name, value in args:
        if name is None:
            positional.append(value)
        elif name not in slots:
            raise ArityError(f"unused argument ({name} = ...) in call to {fname}")
        elif name in named:
            raise ArityError(f"formal argument \"{name}\" matched by multiple actual arguments")
        else:
            named.add(name)
            slots[name] = value
    if positional:
        free = [f for f in formals if f not in named]
        if len(positional) > len(free):
            raise ArityError(
                f"{fname} takes at most {len(free)} positional argument(s) here, "
                f"got {len(positional)}")
        for name, value in zip(free, positional):
            slots[name] = value
    return slots


def apply(f, args: ArgList):
    t = type(f)
    if t is Closure:
        slots = match_args(f.formal_names, args, "function")
        frame = Environment(parent=f.env)
        bindings = frame.bindings
        for p in f.params:
            value = slots[p.name]
            bindings[p.name] = Deferred(p.name, p.default) if value is MISSING else value
        return evaluate(f.body, frame)
    if t is Builtin:
        if f.variadic:
            return f.impl(list(args))
        return f.impl(**match_args(f.formal_names, args, f.name))
    raise ValueTypeError(f"attempt to apply non-function ({type_name(f)})")


def call_value(f, *values):
    """Apply ``f`` to positional values."""
    return apply(f, [(None, v) for v in values])

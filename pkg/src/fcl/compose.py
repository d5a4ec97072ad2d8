"""Partial function composition and valuation (``fc``) and the pipe-forward operator.

``fc(f, a = expr, ...)`` returns a genuine closure whose body is a single call
to ``f``. Its parameters are the default-free formals of ``f`` left
unassigned, followed by the unbound symbols of the argument expressions.
Sub-compositions are evaluated once, when the closure is built, and stored
under generated ``internal_anon_func`` names in the closure's environment.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from fcl.errors import FcError, PipeError, ValueTypeError
from fcl.runtime.environment import Environment
from fcl.runtime.evaluator import evaluate
from fcl.runtime.values import Builtin, Closure, SpecialForm, is_function, type_name
from fcl.syntax.analysis import free_symbols
from fcl.syntax.nodes import Arg, Assign, Block, Call, Lambda, Param, Symbol

UNNAMED_MESSAGE = "All parameter arguments must be named."
INTERNAL_NAME = "internal_anon_func"


@dataclass
class FcBuild:
    """State of one ``fc`` construction."""

    call_env: Environment
    fc_ret_env: Environment = None
    func: object = None
    func_name: Optional[str] = None
    ret_fun_sig: Tuple[Param, ...] = ()
    ret_fun_body: Optional[Call] = None
    issued: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.fc_ret_env is None:
            self.fc_ret_env = self.call_env

    def fresh_env(self) -> Environment:
        # Bindings never leak into the caller's frame.
        if self.fc_ret_env is self.call_env:
            self.fc_ret_env = Environment(parent=self.call_env)
        return self.fc_ret_env

    def bind(self, value) -> str:
        env = self.fresh_env()
        name = internal_name(self)
        env.define(name, value)
        return name


def internal_name(build: FcBuild) -> str:
    """Next unused generated name: internal_anon_func, internal_anon_func_2, ..."""
    k = len(build.issued) + 1
    while True:
        name = INTERNAL_NAME if k == 1 else f"{INTERNAL_NAME}_{k}"
        if name not in build.issued and not build.fc_ret_env.has(name):
            build.issued.append(name)
            return name
        k += 1


def formals_of(f) -> Optional[Tuple[Param, ...]]:
    """Formals of a function value; None when they are open-ended."""
    if isinstance(f, Closure):
        return f.params
    if isinstance(f, Builtin):
        return None if f.variadic else f.formals
    raise ValueTypeError(f"not a function: {type_name(f)}")


def _is_fc_call(e, env: Environment) -> bool:
    if not (isinstance(e, Call) and isinstance(e.head, Symbol) and e.head.name == "fc"):
        return False
    try:
        return isinstance(env.lookup("fc"), SpecialForm)
    except Exception:
        return False


def _rewrite(e, build: FcBuild):
    """Pre-evaluate every ``fc(...)`` that sits in call-head position."""
    if isinstance(e, Call):
        if _is_fc_call(e.head, build.call_env):
            head = Symbol(build.bind(evaluate(e.head, build.call_env)))
        elif isinstance(e.head, Lambda):
            head = e.head
        else:
            head = _rewrite(e.head, build)
        args = tuple(Arg(a.name, _rewrite(a.expr, build)) for a in e.args)
        return Call(head, args, span=e.span)
    if isinstance(e, Block):
        return Block(tuple(_rewrite(x, build) for x in e.exprs), e.braced, span=e.span)
    if isinstance(e, Assign):
        return Assign(e.target, _rewrite(e.value, build), span=e.span)
    return e


def _resolve_func(func_expr, build: FcBuild):
    env = build.call_env
    if isinstance(func_expr, Symbol):
        value = env.lookup(func_expr.name)
        if not is_function(value):
            raise ValueTypeError(f"'{func_expr.name}' is not a function ({type_name(value)})")
        build.func, build.func_name = value, func_expr.name
    elif isinstance(func_expr, Lambda) or _is_fc_call(func_expr, env):
        value = evaluate(func_expr, env)
        build.func = value
        build.func_name = build.bind(value)
    else:
        raise ValueTypeError(
            "the first argument to fc() must be a function name, an anonymous function "
            "or a call to fc()")


def _assemble(build: FcBuild, named: Sequence[Tuple[str, object]]) -> Closure:
    formals = formals_of(build.func)
    assigned = {name for name, _ in named}
    if formals is not None:
        known = {p.name for p in formals}
        for name, _ in named:
            if name not in known:
                raise FcError(f"'{name}' is not a parameter of {build.func_name}")
        promoted = [p.name for p in formals if p.name not in assigned and p.default is None]
    else:
        promoted = []
    signature = list(promoted)
    for _, expr in named:
        for sym in free_symbols(expr):
            if sym not in signature:
                signature.append(sym)
    if build.func_name in signature:
        # The callee's name would be shadowed by a parameter of the same name.
        build.func_name = build.bind(build.func)
    args = []
    # A promoted formal goes positionally only while every earlier formal is
    # either named or already passed positionally; otherwise name it.
    positional_ok = True
    for p in formals or ():
        if p.name in assigned:
            continue
        if p.name in promoted and positional_ok:
            args.append(Arg(None, Symbol(p.name)))
        elif p.name in promoted:
            args.append(Arg(p.name, Symbol(p.name)))
        else:
            positional_ok = False
    args.extend(Arg(name, expr) for name, expr in named)
    build.ret_fun_sig = tuple(Param(s) for s in signature)
    build.ret_fun_body = Call(Symbol(build.func_name), tuple(args))
    return Closure(build.ret_fun_sig, build.ret_fun_body, build.fc_ret_env)


def fc(func_expr, named_args: Sequence[Tuple[Optional[str], object]], call_env: Environment) -> Closure:
    """Compose ``func_expr`` with the (unevaluated) named argument expressions."""
    if any(name is None for name, _ in named_args):
        raise FcError(UNNAMED_MESSAGE)
    build = FcBuild(call_env)
    _resolve_func(func_expr, build)
    named = []
    for name, expr in named_args:
        if isinstance(expr, Lambda):
            raise FcError(
                f"argument '{name}' is an anonymous function declaration; "
                "bind it to a name or call it inline")
        named.append((name, _rewrite(expr, build)))
    return _assemble(build, named)


def _fc_form(args: Tuple[Arg, ...], env: Environment) -> Closure:
    if not args:
        raise FcError("fc() needs a function to compose")
    first, rest = args[0], args[1:]
    if first.name is not None:
        raise FcError("the first argument to fc() must be the function, passed unnamed")
    return fc(first.expr, [(a.name, a.expr) for a in rest], env)


FC_FORM = SpecialForm("fc", _fc_form)


def pipe_parameter(g) -> str:
    """Parameter of ``g`` that receives the left-hand side: first default-free formal."""
    formals = formals_of(g)
    if not formals:
        raise PipeError("the right-hand side of %>% must take at least one named parameter")
    for p in formals:
        if p.default is None:
            return p.name
    return formals[0].name


def _operand(expr, build: FcBuild, side: str):
    value = evaluate(expr, build.call_env)
    if not is_function(value):
        raise PipeError(
            f"the {side}-hand side of %>% must be a function, not {type_name(value)}; "
            "compose first, then apply the result to data")
    if isinstance(expr, Symbol):
        return value, expr.name
    return value, build.bind(value)


def pipe(lhs, rhs, call_env: Environment) -> Closure:
    """``lhs %>% rhs``: the composition rhs(p = lhs(p))."""
    build = FcBuild(call_env)
    left, left_name = _operand(lhs, build, "left")
    right, right_name = _operand(rhs, build, "right")
    p = pipe_parameter(right)
    if left_name == p:
        left_name = build.bind(left)
    build.func, build.func_name = right, right_name
    return _assemble(build, [(p, Call(Symbol(left_name), (Arg(None, Symbol(p)),)))])

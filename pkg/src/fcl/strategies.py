"""Pipeline execution strategies compared by the benchmark harness.

* ``chain`` / ``freduce``: a stored list of per-stage wrapper functions,
  applied one after another (the function-list model).
* ``nest``: one closure whose body is the hand-written nested call.
* ``compose_fc``: one ``fc`` composition, ``fc(fk, p = f(k-1)(...f1(x)))``.
* ``compose_pipe``: ``f1 %>% f2 %>% ... %>% fk``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from fcl import compose
from fcl.errors import FclError, StageError
from fcl.runtime.environment import Environment
from fcl.runtime.evaluator import apply, call_value
from fcl.runtime.values import Closure, StageList, is_function
from fcl.syntax.nodes import Arg, Call, Param, Pipe, Symbol

_IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9._]*\Z")
INPUT = "x"


@dataclass(frozen=True)
class Pipeline:
    stages: Tuple
    labels: Tuple[str, ...]

    def __post_init__(self):
        if not self.stages or len(self.stages) != len(self.labels):
            raise ValueError("a pipeline needs at least one stage and one label per stage")
        for s in self.stages:
            if not is_function(s):
                raise ValueError(f"pipeline stage is not a function: {s!r}")

    @classmethod
    def of(cls, *stages, labels: Sequence[str] = None) -> "Pipeline":
        if labels is None:
            labels = [getattr(s, "name", None) or f"stage{i}" for i, s in enumerate(stages, 1)]
        return cls(tuple(stages), tuple(labels))

    @classmethod
    def from_stage_list(cls, sl: StageList) -> "Pipeline":
        return cls(sl.functions, sl.labels)

    def __len__(self):
        return len(self.stages)


def stage_bindings(p: Pipeline) -> Tuple[Environment, List[str]]:
    """A frame binding each stage under a callable name; labels are used when usable."""
    env = Environment()
    names = []
    for i, (stage, label) in enumerate(zip(p.stages, p.labels), 1):
        name = label
        if (not _IDENTIFIER.match(label) or label in (INPUT, ".", "fc")
                or (label in env.bindings and env.bindings[label] is not stage)):
            name = f"stage_{i}"
        env.define(name, stage)
        names.append(name)
    return env, names


@dataclass(frozen=True)
class ChainedFunction:
    function_list: Tuple
    labels: Tuple[str, ...]

    def __call__(self, x):
        return freduce(x, self)


def chain(p: Pipeline) -> ChainedFunction:
    """Store one ``function (.) stage(.)`` wrapper per stage; nothing is composed."""
    env, names = stage_bindings(p)
    wrappers = tuple(
        Closure((Param("."),), Call(Symbol(name), (Arg(None, Symbol(".")),)), env)
        for name in names
    )
    return ChainedFunction(wrappers, p.labels)


def freduce(x, fl: ChainedFunction):
    value = x
    for i, f in enumerate(fl.function_list):
        try:
            value = apply(f, [(None, value)])
        except StageError:
            raise
        except FclError as exc:
            raise StageError(i + 1, fl.labels[i], exc) from exc
    return value


def nest(p: Pipeline) -> Closure:
    """``function (x) fk(...f1(x))``."""
    env, names = stage_bindings(p)
    body = Symbol(INPUT)
    for name in names:
        body = Call(Symbol(name), (Arg(None, body),))
    return Closure((Param(INPUT),), body, env)


def compose_fc(p: Pipeline) -> Closure:
    """A single fc composition of the whole pipeline."""
    env, names = stage_bindings(p)
    inner = Symbol(INPUT)
    for name in names[:-1]:
        inner = Call(Symbol(name), (Arg(None, inner),))
    last = p.stages[-1]
    return compose.fc(Symbol(names[-1]), [(compose.pipe_parameter(last), inner)], env)


def compose_pipe(p: Pipeline) -> Closure:
    """Left-to-right ``%>%`` fold over the stages."""
    env, names = stage_bindings(p)
    if len(names) == 1:
        return compose.fc(Symbol(names[0]), [], env)
    expr = Symbol(names[0])
    for name in names[1:]:
        expr = Pipe(expr, Symbol(name))
    return compose.pipe(expr.lhs, expr.rhs, env)


def _closure_runner(f) -> Callable:
    return lambda x: call_value(f, x)


STRATEGIES: Dict[str, Callable[[Pipeline], Callable]] = {
    "fc": lambda p: _closure_runner(compose_fc(p)),
    "list": chain,
    "nested": lambda p: _closure_runner(nest(p)),
    "pipe": lambda p: _closure_runner(compose_pipe(p)),
}

DEFAULT_STRATEGIES = ("fc", "list", "nested")


def build(strategy: str, p: Pipeline) -> Callable:
    """A Python callable running ``p`` with the named strategy."""
    try:
        return STRATEGIES[strategy](p)
    except KeyError:
        raise ValueError(f"unknown strategy '{strategy}' (choose from {', '.join(STRATEGIES)})") from None

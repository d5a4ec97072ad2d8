from __future__ import annotations

from typing import Dict, Iterator, Optional

from fcl.errors import MissingArgError, UnboundNameError


class Deferred:
    """A binding resolved on first lookup: a default expression or a missing formal."""

    __slots__ = ("name", "default", "forcing")

    def __init__(self, name: str, default=None):
        self.name = name
        self.default = default
        self.forcing = False

    def force(self, env: "Environment"):
        if self.default is None:
            raise MissingArgError(f'argument "{self.name}" is missing, with no default')
        if self.forcing:
            raise MissingArgError(f'default for argument "{self.name}" refers to itself')
        from fcl.runtime.evaluator import evaluate

        self.forcing = True
        try:
            value = evaluate(self.default, env)
        finally:
            self.forcing = False
        env.bindings[self.name] = value
        return value


class Environment:
    __slots__ = ("bindings", "parent")

    def __init__(self, bindings: Optional[Dict] = None, parent: Optional["Environment"] = None):
        self.bindings = {} if bindings is None else bindings
        self.parent = parent

    def lookup(self, name: str):
        env = self
        while env is not None:
            value = env.bindings.get(name, _ABSENT)
            if value is not _ABSENT:
                if type(value) is Deferred:
                    return value.force(env)
                return value
            env = env.parent
        raise UnboundNameError(f"object '{name}' not found")

    def lookup_function(self, name: str, callable_types: tuple):
        """Like lookup, but skip bindings that are not functions (call-head resolution)."""
        env = self
        while env is not None:
            value = env.bindings.get(name, _ABSENT)
            if value is not _ABSENT:
                if type(value) is Deferred:
                    value = value.force(env)
                if isinstance(value, callable_types):
                    return value
            env = env.parent
        raise UnboundNameError(f"could not find function \"{name}\"")

    def has(self, name: str) -> bool:
        env = self
        while env is not None:
            if name in env.bindings:
                return True
            env = env.parent
        return False

    def define(self, name: str, value) -> None:
        self.bindings[name] = value

    def child(self) -> "Environment":
        return Environment(parent=self)

    def local_items(self) -> Iterator:
        return iter(self.bindings.items())

    def __repr__(self):
        return f"<environment {len(self.bindings)} bindings>"


_ABSENT = object()

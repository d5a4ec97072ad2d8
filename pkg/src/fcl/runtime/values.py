"""Runtime values.

Vectors hold tuples so that values are immutable and compare structurally.
Functions (closures, builtins) compare by identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Dict, Optional, Tuple

from fcl.errors import ValueTypeError

if TYPE_CHECKING:
    from fcl.runtime.environment import Environment


def _check_names(elements, names):
    if names is not None and len(names) != len(elements):
        raise ValueError(f"{len(names)} names for {len(elements)} elements")


@dataclass(frozen=True)
class NumberVec:
    elements: Tuple[float, ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        _check_names(self.elements, self.names)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class StringVec:
    elements: Tuple[str, ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        _check_names(self.elements, self.names)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class BoolVec:
    elements: Tuple[bool, ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        _check_names(self.elements, self.names)

    def __len__(self):
        return len(self.elements)


VECTOR_TYPES = (NumberVec, StringVec, BoolVec)


@dataclass(frozen=True)
class Matrix:
    """Numeric matrix stored column-major."""

    data: Tuple[float, ...]
    nrow: int
    ncol: int

    def __post_init__(self):
        if self.nrow < 0 or self.ncol < 0 or len(self.data) != self.nrow * self.ncol:
            raise ValueError(f"{len(self.data)} values for a {self.nrow}x{self.ncol} matrix")

    def at(self, i: int, j: int) -> float:
        return self.data[j * self.nrow + i]

    def row(self, i: int) -> Tuple[float, ...]:
        return tuple(self.at(i, j) for j in range(self.ncol))


@dataclass(frozen=True, eq=False)
class Table:
    columns: Dict[str, object]

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError("table columns must have equal length")
        for v in self.columns.values():
            if not isinstance(v, VECTOR_TYPES):
                raise ValueError("table columns must be vectors")

    @property
    def nrow(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    @property
    def ncol(self) -> int:
        return len(self.columns)

    def __eq__(self, other):
        if not isinstance(other, Table):
            return NotImplemented
        return list(self.columns.items()) == list(other.columns.items())


@dataclass(frozen=True)
class Null:
    pass


NULL = Null()


class _MissingType:
    """Marker for a formal that received no argument at the call site."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MISSING"

    def __bool__(self):
        return False


MISSING = _MissingType()


@dataclass(eq=False)
class Closure:
    params: Tuple
    body: object
    env: "Environment"
    formal_names: Tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        self.formal_names = tuple(p.name for p in self.params)

    @property
    def formals(self):
        return self.params


@dataclass(eq=False)
class Builtin:
    """A host-implemented function.

    ``impl`` receives one keyword argument per formal (``MISSING`` when the
    caller supplied nothing); variadic builtins receive a list of
    ``(name, value)`` pairs instead.
    """

    name: str
    formals: Tuple
    impl: Callable
    variadic: bool = False
    formal_names: Tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        self.formal_names = tuple(p.name for p in self.formals)


@dataclass(eq=False)
class SpecialForm:
    """A callable that receives its operands unevaluated."""

    name: str
    handler: Callable


@dataclass(frozen=True, eq=False)
class StageList:
    functions: Tuple
    labels: Tuple[str, ...]

    def __len__(self):
        return len(self.functions)


FUNCTION_TYPES = (Closure, Builtin)


def is_function(v) -> bool:
    return isinstance(v, FUNCTION_TYPES)


def type_name(v) -> str:
    return {
        NumberVec: "numeric", StringVec: "character", BoolVec: "logical",
        Matrix: "matrix", Table: "table", Null: "NULL", Closure: "function",
        Builtin: "function", SpecialForm: "special form", StageList: "stage list",
    }.get(type(v), type(v).__name__)


def num(*xs, names=None) -> NumberVec:
    return NumberVec(tuple(float(x) for x in xs), None if names is None else tuple(names))


def strs(*xs, names=None) -> StringVec:
    return StringVec(tuple(xs), None if names is None else tuple(names))


def bools(*xs) -> BoolVec:
    return BoolVec(tuple(bool(x) for x in xs))


def expect_vector(v, what="argument"):
    if not isinstance(v, VECTOR_TYPES):
        raise ValueTypeError(f"{what} must be a vector, not {type_name(v)}")
    return v


def as_numbers(v, what="argument") -> Tuple[float, ...]:
    if isinstance(v, NumberVec):
        return v.elements
    if isinstance(v, BoolVec):
        return tuple(float(b) for b in v.elements)
    raise ValueTypeError(f"non-numeric {what} ({type_name(v)})")


def as_strings(v, what="argument") -> Tuple[str, ...]:
    if isinstance(v, StringVec):
        return v.elements
    raise ValueTypeError(f"{what} must be character, not {type_name(v)}")


def scalar_number(v, what="argument") -> float:
    xs = as_numbers(v, what)
    if len(xs) != 1:
        raise ValueTypeError(f"{what} must have length 1, not {len(xs)}")
    return xs[0]


def scalar_bool(v, what="argument") -> bool:
    if isinstance(v, BoolVec) and len(v) == 1:
        return v.elements[0]
    if isinstance(v, NumberVec) and len(v) == 1:
        return v.elements[0] != 0
    raise ValueTypeError(f"{what} must be a single logical value")


def scalar_string(v, what="argument") -> str:
    xs = as_strings(v, what)
    if len(xs) != 1:
        raise ValueTypeError(f"{what} must be a single string")
    return xs[0]

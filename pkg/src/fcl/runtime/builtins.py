"""Builtin function library and the base environment.

Each builtin is declared with a signature string written in the language
itself, e.g. ``head(x, n = 6)``; the default expressions are shown when the
function is printed, but default values are applied by the host code, which
also sees which formals were left missing.
"""
from __future__ import annotations

import functools
import math
import re
import warnings
from typing import Dict

from fcl.errors import FclWarning, ValueTypeError
from fcl.runtime.environment import Environment
from fcl.runtime.values import (
    MISSING, NULL, BoolVec, Builtin, Matrix, Null, NumberVec, StageList, StringVec, Table,
    VECTOR_TYPES, as_numbers, as_strings, expect_vector, is_function, scalar_bool,
    scalar_number, scalar_string, type_name,
)
from fcl.syntax.nodes import Param
from fcl.syntax.parser import parse_expr

BUILTINS: Dict[str, Builtin] = {}


def _signature(sig: str):
    call = parse_expr(sig)
    params = []
    for a in call.args:
        if a.name is None:
            params.append(Param(a.expr.name))
        else:
            params.append(Param(a.name, a.expr))
    return call.head.name, tuple(params)


def builtin(sig: str, bind_as: str = None):
    def register(fn):
        name, params = _signature(sig)
        variadic = len(params) == 1 and params[0].name == "..."
        b = Builtin(name, () if variadic else params, fn, variadic=variadic)
        BUILTINS[bind_as or name] = b
        return fn

    return register


def warn(message: str) -> None:
    warnings.warn(message, FclWarning, stacklevel=3)


def _names(v):
    return getattr(v, "names", None)


def _count(v, what) -> int:
    n = scalar_number(v, what)
    if n != int(n):
        raise ValueTypeError(f"{what} must be a whole number")
    return int(n)


def _rebuild(v, elements, names=MISSING):
    return type(v)(tuple(elements), _names(v) if names is MISSING else names)


# elementwise numeric functions

def _map_numbers(x, fn, fname):
    xs = as_numbers(x, f"argument to {fname}")
    nan_made = False
    out = []
    for v in xs:
        r = fn(v)
        if r != r and v == v:
            nan_made = True
        out.append(r)
    if nan_made:
        warn(f"In {fname}(x): NaNs produced")
    return NumberVec(tuple(out), _names(x))


def _log(v):
    if v > 0:
        return math.log(v)
    if v == 0:
        return -math.inf
    return math.nan


def _sqrt(v):
    return math.sqrt(v) if v >= 0 else math.nan


def _exp(v):
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


@builtin("log(x)")
def _b_log(x):
    return _map_numbers(_required(x, "x", "log"), _log, "log")


@builtin("sqrt(x)")
def _b_sqrt(x):
    return _map_numbers(_required(x, "x", "sqrt"), _sqrt, "sqrt")


@builtin("abs(x)")
def _b_abs(x):
    return _map_numbers(_required(x, "x", "abs"), abs, "abs")


@builtin("exp(x)")
def _b_exp(x):
    return _map_numbers(_required(x, "x", "exp"), _exp, "exp")


@builtin("round(x, digits = 0)")
def _b_round(x, digits):
    d = 0 if digits is MISSING else _count(digits, "digits")
    return _map_numbers(_required(x, "x", "round"), lambda v: float(round(v, d)) if math.isfinite(v) else v,
                        "round")


@builtin("identity(x)")
def _b_identity(x):
    return _required(x, "x", "identity")


def _required(v, name, fname):
    if v is MISSING:
        raise ValueTypeError(f'argument "{name}" is missing, with no default in {fname}')
    return v


# arithmetic and comparison

def _broadcast(a, b, op):
    xs, ys = a.elements, b.elements
    if len(xs) == len(ys):
        pairs = zip(xs, ys)
    elif len(xs) == 1:
        pairs = ((xs[0], y) for y in ys)
    elif len(ys) == 1:
        pairs = ((x, ys[0]) for x in xs)
    else:
        raise ValueTypeError(f"operands of '{op}' have lengths {len(xs)} and {len(ys)}; "
                             "recycling is not supported")
    n = max(len(xs), len(ys))
    names = _names(a) if len(xs) == n and _names(a) is not None else (
        _names(b) if len(ys) == n else None)
    return list(pairs), names


def _divide(x, y):
    if y == 0:
        if x == 0 or x != x:
            return math.nan
        return math.copysign(math.inf, x) * math.copysign(1.0, y)
    return x / y


_ARITH = {
    "+": lambda x, y: x + y,
    "-": lambda x, y: x - y,
    "*": lambda x, y: x * y,
    "/": _divide,
}

_COMPARE = {
    ">": lambda x, y: x > y,
    "<": lambda x, y: x < y,
    ">=": lambda x, y: x >= y,
    "<=": lambda x, y: x <= y,
    "==": lambda x, y: x == y,
    "!=": lambda x, y: x != y,
}


def _numeric_operand(v, op):
    if isinstance(v, BoolVec):
        return NumberVec(tuple(float(b) for b in v.elements), v.names)
    if isinstance(v, NumberVec):
        return v
    raise ValueTypeError(f"non-numeric argument to binary operator '{op}' ({type_name(v)})")


def _make_arith(op):
    fn = _ARITH[op]

    def impl(e1, e2):
        if e2 is MISSING:
            if op == "-":
                x = _numeric_operand(e1, op)
                return NumberVec(tuple(-v for v in x.elements), x.names)
            raise ValueTypeError(f"operator '{op}' needs two operands")
        a, b = _numeric_operand(e1, op), _numeric_operand(e2, op)
        pairs, names = _broadcast(a, b, op)
        return NumberVec(tuple(fn(x, y) for x, y in pairs), names)

    return impl


def _make_compare(op):
    fn = _COMPARE[op]

    def impl(e1, e2):
        if isinstance(e1, StringVec) and isinstance(e2, StringVec):
            a, b = e1, e2
        else:
            a, b = _numeric_operand(e1, op), _numeric_operand(e2, op)
        pairs, names = _broadcast(a, b, op)
        return BoolVec(tuple(fn(x, y) for x, y in pairs), names)

    return impl


for _op in _ARITH:
    builtin("op(e1, e2)", bind_as=_op)(_make_arith(_op))
    BUILTINS[_op].name = _op
for _op in _COMPARE:
    builtin("op(e1, e2)", bind_as=_op)(_make_compare(_op))
    BUILTINS[_op].name = _op


# vectors

@builtin("c(...)")
def _b_c(args):
    parts = [(name, v) for name, v in args if not isinstance(v, Null)]
    if not parts:
        return NULL
    for _, v in parts:
        if not isinstance(v, VECTOR_TYPES):
            raise ValueTypeError(f"cannot combine a {type_name(v)} with c(); use stage_list() for functions")
    elements, names, any_names = [], [], False
    for name, v in parts:
        inner = _names(v)
        for i, x in enumerate(v.elements):
            if name is not None:
                label = name if len(v) == 1 else f"{name}{i + 1}"
                any_names = True
            elif inner is not None:
                label = inner[i]
                any_names = True
            else:
                label = ""
            elements.append(x)
            names.append(label)
    kinds = {type(v) for _, v in parts}
    if StringVec in kinds:
        if kinds != {StringVec}:
            raise ValueTypeError("c() cannot mix character and non-character values")
        out = StringVec
    elif NumberVec in kinds:
        out = NumberVec
        elements = [float(x) for x in elements]
    else:
        out = BoolVec
    return out(tuple(elements), tuple(names) if any_names else None)


@builtin("length(x)")
def _b_length(x):
    x = _required(x, "x", "length")
    if isinstance(x, VECTOR_TYPES) or isinstance(x, StageList):
        n = len(x)
    elif isinstance(x, Matrix):
        n = x.nrow * x.ncol
    elif isinstance(x, Table):
        n = x.ncol
    elif isinstance(x, Null):
        n = 0
    else:
        n = 1
    return NumberVec((float(n),))


@builtin("seq(from, to)")
def _b_seq(**kw):
    start = _count(_required(kw["from"], "from", "seq"), "from")
    stop = _count(_required(kw["to"], "to", "seq"), "to")
    step = 1 if stop >= start else -1
    return NumberVec(tuple(float(i) for i in range(start, stop + step, step)))


@builtin("sum(x)")
def _b_sum(x):
    return NumberVec((math.fsum(as_numbers(_required(x, "x", "sum"))),))


@builtin("mean(x)")
def _b_mean(x):
    xs = as_numbers(_required(x, "x", "mean"))
    if not xs:
        raise ValueTypeError("mean of an empty vector")
    return NumberVec((math.fsum(xs) / len(xs),))


def _head_count(n, total):
    n = 6 if n is MISSING else _count(n, "n")
    return min(n, total) if n >= 0 else max(total + n, 0)


@builtin("head(x, n = 6)")
def _b_head(x, n):
    x = _required(x, "x", "head")
    if isinstance(x, VECTOR_TYPES):
        k = _head_count(n, len(x))
        names = _names(x)
        return type(x)(x.elements[:k], None if names is None else names[:k])
    if isinstance(x, Table):
        k = _head_count(n, x.nrow)
        return Table({c: _take(v, range(k)) for c, v in x.columns.items()})
    if isinstance(x, Matrix):
        k = _head_count(n, x.nrow)
        data = tuple(x.at(i, j) for j in range(x.ncol) for i in range(k))
        return Matrix(data, k, x.ncol)
    raise ValueTypeError(f"head() does not support {type_name(x)}")


def _take(v, idx):
    idx = list(idx)
    names = _names(v)
    return type(v)(tuple(v.elements[i] for i in idx),
                   None if names is None else tuple(names[i] for i in idx))


@builtin("nrow(x)")
def _b_nrow(x):
    x = _required(x, "x", "nrow")
    if isinstance(x, (Table, Matrix)):
        return NumberVec((float(x.nrow),))
    raise ValueTypeError(f"nrow() needs a table or matrix, not {type_name(x)}")


@builtin("ncol(x)")
def _b_ncol(x):
    x = _required(x, "x", "ncol")
    if isinstance(x, (Table, Matrix)):
        return NumberVec((float(x.ncol),))
    raise ValueTypeError(f"ncol() needs a table or matrix, not {type_name(x)}")


@builtin("matrix(data = NA, nrow = 1, ncol = 1, byrow = FALSE)")
def _b_matrix(data, nrow, ncol, byrow):
    if data is MISSING:
        raise ValueTypeError("matrix() needs 'data'; NA filling is not supported")
    xs = as_numbers(data, "matrix data")
    length = len(xs)
    nr = None if nrow is MISSING else _count(nrow, "nrow")
    nc = None if ncol is MISSING else _count(ncol, "ncol")
    for dim, label in ((nr, "nrow"), (nc, "ncol")):
        if dim is not None and dim < 0:
            raise ValueTypeError(f"invalid '{label}' value (< 0)")
    if nr is None and nc is None:
        nr, nc = length, 1
    elif nr is None or nc is None:
        known, label = (nc, "columns") if nr is None else (nr, "rows")
        if known == 0:
            if length:
                raise ValueTypeError(f"cannot fit {length} values into 0 {label}")
            other = 0
        else:
            if length % known:
                raise ValueTypeError(
                    f"data length [{length}] is not a multiple of the number of {label} [{known}]")
            other = length // known
        nr, nc = (other, nc) if nr is None else (nr, other)
    else:
        size = nr * nc
        if size < length:
            warn(f"data length [{length}] exceeds matrix size [{nr} x {nc}]; "
                 f"using the first {size} values")
            xs = xs[:size]
        elif size > length:
            raise ValueTypeError(
                f"data length [{length}] is smaller than matrix size [{nr} x {nc}]; "
                "recycling is not supported")
    if byrow is not MISSING and scalar_bool(byrow, "byrow"):
        xs = tuple(xs[i * nc + j] for j in range(nc) for i in range(nr))
    return Matrix(tuple(xs), nr, nc)


# strings and regular expressions

_POSIX_CLASSES = {
    "[:alpha:]": "a-zA-Z", "[:digit:]": "0-9", "[:alnum:]": "a-zA-Z0-9",
    "[:upper:]": "A-Z", "[:lower:]": "a-z", "[:space:]": " \\t\\r\\n\\f\\v",
    "[:punct:]": "!-/:-@\\[-`{-~",
}


@functools.lru_cache(maxsize=256)
def compile_pattern(pattern: str):
    for cls, body in _POSIX_CLASSES.items():
        pattern = pattern.replace(cls, body)
    try:
        return re.compile(pattern)
    except re.error as exc:
        raise ValueTypeError(f"invalid regular expression '{pattern}': {exc}") from None


@functools.lru_cache(maxsize=256)
def _replacement(template: str):
    """Split a replacement string into literal text and group numbers."""
    parts = []
    i = 0
    literal = []
    while i < len(template):
        ch = template[i]
        if ch == "\\" and i + 1 < len(template):
            nxt = template[i + 1]
            if nxt in "123456789":
                if literal:
                    parts.append("".join(literal))
                    literal = []
                parts.append(int(nxt))
            else:
                literal.append(nxt)
            i += 2
            continue
        literal.append(ch)
        i += 1
    if literal:
        parts.append("".join(literal))
    return tuple(parts)


def substitute(pattern: str, replacement: str, text: str) -> str:
    rx = compile_pattern(pattern)
    parts = _replacement(replacement)

    def expand(m):
        out = []
        for p in parts:
            if isinstance(p, int):
                out.append((m.group(p) if p <= rx.groups else None) or "")
            else:
                out.append(p)
        return "".join(out)

    return rx.sub(expand, text)


@builtin("grep(x, pattern, value = FALSE)")
def _b_grep(x, pattern, value):
    xs = as_strings(_required(x, "x", "grep"), "grep input")
    rx = compile_pattern(scalar_string(_required(pattern, "pattern", "grep"), "pattern"))
    hits = [i for i, s in enumerate(xs) if rx.search(s)]
    if value is not MISSING and scalar_bool(value, "value"):
        return _take(x, hits)
    return NumberVec(tuple(float(i + 1) for i in hits))


@builtin("gsub(pattern, replacement, x)")
def _b_gsub(pattern, replacement, x):
    pat = scalar_string(_required(pattern, "pattern", "gsub"), "pattern")
    rep = scalar_string(_required(replacement, "replacement", "gsub"), "replacement")
    xs = as_strings(_required(x, "x", "gsub"), "gsub input")
    return _rebuild(x, (substitute(pat, rep, s) for s in xs))


@builtin("trimws(x)")
def _b_trimws(x):
    xs = as_strings(_required(x, "x", "trimws"), "trimws input")
    return _rebuild(x, (s.strip(" \t\r\n") for s in xs))


@builtin("toupper(x)")
def _b_toupper(x):
    xs = as_strings(_required(x, "x", "toupper"), "toupper input")
    return _rebuild(x, (s.upper() for s in xs))


# tables

def _table(x, fname) -> Table:
    if not isinstance(x, Table):
        raise ValueTypeError(f"{fname}() needs a table, not {type_name(x)}")
    return x


@builtin("data_frame(...)")
def _b_data_frame(args):
    columns = {}
    for name, v in args:
        if name is None:
            raise ValueTypeError("data_frame() columns must be named")
        if name in columns:
            raise ValueTypeError(f"duplicate column name '{name}'")
        columns[name] = type(expect_vector(v, f"column '{name}'"))(v.elements)
    try:
        return Table(columns)
    except ValueError as exc:
        raise ValueTypeError(str(exc)) from None


@builtin("colnames(x)")
def _b_colnames(x):
    x = _table(_required(x, "x", "colnames"), "colnames")
    return StringVec(tuple(x.columns))


@builtin("grepl_cols(x, pattern)")
def _b_grepl_cols(x, pattern):
    x = _table(_required(x, "x", "grepl_cols"), "grepl_cols")
    rx = compile_pattern(scalar_string(_required(pattern, "pattern", "grepl_cols"), "pattern"))
    return StringVec(tuple(c for c in x.columns if rx.search(c)))


def _indices(idx, n, what):
    out = []
    for v in as_numbers(idx, what):
        if v != int(v) or not 1 <= v <= n:
            raise ValueTypeError(f"{what} {v:g} out of range 1..{n}")
        out.append(int(v) - 1)
    return out


@builtin("select_cols(x, cols)")
def _b_select_cols(x, cols):
    x = _table(_required(x, "x", "select_cols"), "select_cols")
    cols = _required(cols, "cols", "select_cols")
    names = list(x.columns)
    if isinstance(cols, StringVec):
        for c in cols.elements:
            if c not in x.columns:
                raise ValueTypeError(f"undefined column '{c}'")
        picked = list(cols.elements)
    else:
        picked = [names[i] for i in _indices(cols, len(names), "column index")]
    return Table({c: x.columns[c] for c in picked})


@builtin("reorder_rows(x, idx)")
def _b_reorder_rows(x, idx):
    x = _required(x, "x", "reorder_rows")
    idx = _required(idx, "idx", "reorder_rows")
    if isinstance(x, Table):
        rows = _indices(idx, x.nrow, "row index")
        return Table({c: _take(v, rows) for c, v in x.columns.items()})
    if isinstance(x, VECTOR_TYPES):
        return _take(x, _indices(idx, len(x), "index"))
    raise ValueTypeError(f"reorder_rows() does not support {type_name(x)}")


@builtin("rev_index(n)")
def _b_rev_index(n):
    k = _count(_required(n, "n", "rev_index"), "n")
    return NumberVec(tuple(float(i) for i in range(k, 0, -1)))


# summaries

SUMMARY_LABELS = ("Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max.")


def quantile(sorted_xs, p: float) -> float:
    """Linear-interpolation quantile of already sorted data."""
    h = (len(sorted_xs) - 1) * p
    lo = math.floor(h)
    hi = min(lo + 1, len(sorted_xs) - 1)
    return sorted_xs[lo] + (h - lo) * (sorted_xs[hi] - sorted_xs[lo])


def six_numbers(xs):
    if not xs:
        raise ValueTypeError("summary of an empty vector")
    s = sorted(xs)
    return (s[0], quantile(s, 0.25), quantile(s, 0.5), math.fsum(s) / len(s),
            quantile(s, 0.75), s[-1])


@builtin("summary(object)")
def _b_summary(object):
    obj = _required(object, "object", "summary")
    if isinstance(obj, (NumberVec, BoolVec)):
        return NumberVec(six_numbers(as_numbers(obj)), SUMMARY_LABELS)
    if isinstance(obj, Table):
        columns = {"stat": StringVec(SUMMARY_LABELS)}
        for name, col in obj.columns.items():
            if isinstance(col, NumberVec):
                columns[name] = NumberVec(six_numbers(col.elements))
        return Table(columns)
    raise ValueTypeError(f"summary() does not support {type_name(obj)}")


# pipelines

@builtin("stage_list(...)")
def _b_stage_list(args):
    if not args:
        raise ValueTypeError("stage_list() needs at least one function")
    functions, labels = [], []
    for i, (name, f) in enumerate(args, 1):
        if not is_function(f):
            raise ValueTypeError(f"stage {i} is a {type_name(f)}, not a function")
        functions.append(f)
        labels.append(name or getattr(f, "name", None) or f"stage{i}")
    return StageList(tuple(functions), tuple(labels))


def base_environment() -> Environment:
    """A fresh global frame whose parent holds every builtin, the operators and ``fc``.

    Keeping user bindings one level down means ``c <- 5`` shadows ``c`` as a
    value without removing the builtin from call-head lookup.
    """
    from fcl.compose import FC_FORM

    base = Environment(dict(BUILTINS))
    base.define("fc", FC_FORM)
    return Environment(parent=base)


def get(name: str) -> Builtin:
    return BUILTINS[name]

"""R-style textual rendering of values."""
from __future__ import annotations

import math
from typing import List, Sequence

from fcl.runtime.values import (
    BoolVec, Builtin, Closure, Matrix, Null, NumberVec, SpecialForm, StageList, StringVec, Table,
)
from fcl.syntax.deparse import deparse_function, deparse_param, quote

DIGITS = 7
WIDTH = 80


def _sig_and_exp(x: float, digits: int):
    """Significant digits needed to show ``x`` at ``digits`` precision, and its exponent."""
    mantissa, exp = f"{abs(x):.{digits - 1}e}".split("e")
    mantissa = mantissa.replace(".", "").rstrip("0") or "0"
    return len(mantissa), int(exp)


def format_numbers(xs: Sequence[float], digits: int = DIGITS) -> List[str]:
    """Common formatting for a numeric vector: fixed or scientific, shared decimals."""
    finite = [x for x in xs if math.isfinite(x)]
    special = {math.inf: "Inf", -math.inf: "-Inf"}

    def render_special(x):
        return "NaN" if x != x else special[x]

    if not finite:
        return [render_special(x) for x in xs]
    decimals, sci_digits, fixed_w, sci_w = 0, 1, 0, 0
    for x in finite:
        if x == 0:
            continue
        sig, exp = _sig_and_exp(x, digits)
        # Rounding may bump the exponent (9.9999999 -> 1e+01).
        decimals = max(decimals, sig - 1 - exp)
        sci_digits = max(sci_digits, sig)
    for x in finite:
        fixed_w = max(fixed_w, len(f"{x:.{decimals}f}"))
        sci_w = max(sci_w, len(_sci(x, sci_digits)))
    if fixed_w <= sci_w:
        return [f"{x:.{decimals}f}" if math.isfinite(x) else render_special(x) for x in xs]
    return [_sci(x, sci_digits) if math.isfinite(x) else render_special(x) for x in xs]


def _sci(x: float, sig: int) -> str:
    mantissa, exp = f"{x:.{sig - 1}e}".split("e")
    e = int(exp)
    return f"{mantissa}e{'-' if e < 0 else '+'}{abs(e):02d}"


def _elements(v) -> List[str]:
    if isinstance(v, NumberVec):
        return format_numbers(v.elements)
    if isinstance(v, StringVec):
        return [quote(s) for s in v.elements]
    return ["TRUE" if b else "FALSE" for b in v.elements]


_EMPTY = {NumberVec: "numeric(0)", StringVec: "character(0)", BoolVec: "logical(0)"}


def format_vector(v, width: int = WIDTH) -> str:
    if not len(v):
        return _EMPTY[type(v)]
    items = _elements(v)
    left = isinstance(v, StringVec)
    if v.names is not None:
        return _format_named(items, v.names, width)
    cell = max(len(s) for s in items)
    label_w = len(f"[{len(items)}]")
    per_line = max(1, (width - label_w) // (cell + 1))
    lines = []
    for start in range(0, len(items), per_line):
        chunk = items[start:start + per_line]
        cells = [s.ljust(cell) if left else s.rjust(cell) for s in chunk]
        lines.append((f"[{start + 1}]".rjust(label_w) + " " + " ".join(cells)).rstrip())
    return "\n".join(lines)


def _format_named(items, names, width) -> str:
    cell = max(max(len(s) for s in items), max(len(n) for n in names))
    per_line = max(1, width // (cell + 1))
    lines = []
    for start in range(0, len(items), per_line):
        lines.append(" ".join(n.rjust(cell) for n in names[start:start + per_line]).rstrip())
        lines.append(" ".join(s.rjust(cell) for s in items[start:start + per_line]))
    return "\n".join(lines)


def format_matrix(m: Matrix) -> str:
    if m.nrow == 0 or m.ncol == 0:
        return f"<{m.nrow} x {m.ncol} matrix>"
    row_labels = [f"[{i + 1},]" for i in range(m.nrow)]
    label_w = max(len(s) for s in row_labels)
    columns = []
    for j in range(m.ncol):
        cells = format_numbers([m.at(i, j) for i in range(m.nrow)])
        header = f"[,{j + 1}]"
        w = max(len(header), max(len(c) for c in cells))
        columns.append([header.rjust(w)] + [c.rjust(w) for c in cells])
    lines = [" " * label_w + " " + " ".join(col[0] for col in columns)]
    for i in range(m.nrow):
        lines.append(row_labels[i].ljust(label_w) + " " + " ".join(col[i + 1] for col in columns))
    return "\n".join(lines)


def format_table(t: Table) -> str:
    if not t.columns:
        return "<table with 0 columns>"
    row_labels = [str(i + 1) for i in range(t.nrow)]
    label_w = max([len(s) for s in row_labels] + [0])
    columns = []
    for name, col in t.columns.items():
        if isinstance(col, NumberVec):
            cells = format_numbers(col.elements)
        elif isinstance(col, StringVec):
            cells = list(col.elements)
        else:
            cells = ["TRUE" if b else "FALSE" for b in col.elements]
        w = max([len(name)] + [len(c) for c in cells])
        columns.append([name.rjust(w)] + [c.rjust(w) for c in cells])
    lines = [" " * label_w + " " + " ".join(col[0] for col in columns)]
    for i in range(t.nrow):
        lines.append(row_labels[i].ljust(label_w) + " " + " ".join(col[i + 1] for col in columns))
    return "\n".join(lines)


def format_function(f) -> str:
    if isinstance(f, Closure):
        return deparse_function(f.params, f.body)
    if isinstance(f, Builtin):
        params = "..." if f.variadic else ", ".join(deparse_param(p) for p in f.formals)
        return f"function ({params}) <builtin {f.name}>"
    return f"<special form {f.name}>"


def format_value(v) -> str:
    if isinstance(v, (NumberVec, StringVec, BoolVec)):
        return format_vector(v)
    if isinstance(v, Matrix):
        return format_matrix(v)
    if isinstance(v, Table):
        return format_table(v)
    if isinstance(v, Null):
        return "NULL"
    if isinstance(v, (Closure, Builtin, SpecialForm)):
        return format_function(v)
    if isinstance(v, StageList):
        blocks = [f"[[{i}]] {label}\n{format_function(f)}"
                  for i, (label, f) in enumerate(zip(v.labels, v.functions), 1)]
        return "\n\n".join(blocks)
    return repr(v)

from __future__ import annotations

from typing import List

from fcl.syntax.nodes import Assign, Block, Call, Lambda, Pipe, Symbol


def free_symbols(e) -> List[str]:
    """Unbound symbol leaves of ``e`` in first-occurrence order.

    Call heads, named-argument names and lambda-bound names are excluded.
    No environment is consulted.
    """
    found: dict = {}
    _walk(e, frozenset(), found)
    return list(found)


def _walk(e, bound, found):
    if isinstance(e, Symbol):
        if e.name not in bound:
            found.setdefault(e.name, None)
    elif isinstance(e, Call):
        if not isinstance(e.head, Symbol):
            _walk(e.head, bound, found)
        for a in e.args:
            _walk(a.expr, bound, found)
    elif isinstance(e, Lambda):
        inner = bound | {p.name for p in e.params}
        for p in e.params:
            if p.default is not None:
                _walk(p.default, inner, found)
        _walk(e.body, inner, found)
    elif isinstance(e, Pipe):
        _walk(e.lhs, bound, found)
        _walk(e.rhs, bound, found)
    elif isinstance(e, Assign):
        _walk(e.value, bound, found)
    elif isinstance(e, Block):
        for x in e.exprs:
            _walk(x, bound, found)

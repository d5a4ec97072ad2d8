"""An interpreter for a small R-like language built around ``fc``, standard-evaluation
partial function composition and valuation."""
from fcl.compose import fc, pipe
from fcl.runtime.builtins import base_environment
from fcl.runtime.evaluator import apply, evaluate
from fcl.runtime.printing import format_value
from fcl.syntax import deparse, free_symbols, parse, parse_expr, tokenize


def run(source: str, env=None):
    """Evaluate ``source`` in ``env`` (a fresh base environment by default)."""
    return evaluate(parse(source), base_environment() if env is None else env)


__all__ = [
    "apply", "base_environment", "deparse", "evaluate", "fc", "format_value", "free_symbols",
    "parse", "parse_expr", "pipe", "run", "tokenize",
]

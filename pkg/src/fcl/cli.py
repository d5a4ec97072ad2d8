"""Command-line entry point ``fcl``.

Exit status: 0 on success, 1 on a language error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
import warnings
from pathlib import Path
from typing import List, Optional, TextIO

from fcl import bench, strategies
from fcl.errors import FclError, FclWarning, ParseError
from fcl.runtime.builtins import base_environment
from fcl.runtime.environment import Environment
from fcl.runtime.evaluator import evaluate
from fcl.runtime.printing import format_value
from fcl.runtime.values import Closure, Null
from fcl.syntax.deparse import deparse
from fcl.syntax.nodes import (
    Arg, Assign, Block, BoolLit, Call, Lambda, NullLit, NumberLit, Pipe, StringLit, Symbol,
)
from fcl.syntax.parser import parse

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


@contextlib.contextmanager
def diagnostics(stream: TextIO):
    """Route language warnings to ``stream`` as ``warning: ...`` lines."""
    def show(message, category, filename, lineno, file=None, line=None):
        if issubclass(category, FclWarning):
            print(f"warning: {message}", file=stream)
        else:
            original(message, category, filename, lineno, file, line)

    original = warnings.showwarning
    with warnings.catch_warnings():
        warnings.simplefilter("always", FclWarning)
        warnings.showwarning = show
        try:
            yield
        finally:
            warnings.showwarning = original


def report_error(exc: FclError, stream: TextIO) -> None:
    print(f"Error: {exc.message}", file=stream)


def evaluate_program(source: str, env: Environment, out: TextIO) -> None:
    """Evaluate a program and print its final value unless it is NULL or an assignment."""
    program = parse(source)
    value = evaluate(program, env)
    if not program.exprs or isinstance(program.exprs[-1], Assign) or isinstance(value, Null):
        return
    print(format_value(value), file=out)


def _run_source(source: str, out: TextIO, err: TextIO) -> int:
    with diagnostics(err):
        try:
            evaluate_program(source, base_environment(), out)
        except FclError as exc:
            report_error(exc, err)
            return EXIT_ERROR
        except RecursionError:
            print("Error: evaluation nested too deeply", file=err)
            return EXIT_ERROR
    return EXIT_OK


def _read(path: str, err: TextIO) -> Optional[str]:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"fcl: cannot read {path}: {exc}", file=err)
        return None


def dump_ast(e, indent: int = 0) -> List[str]:
    """Indented one-node-per-line rendering of a syntax tree."""
    pad = "  " * indent
    if isinstance(e, Block):
        lines = [pad + ("Block {}" if e.braced else "Block")]
        for x in e.exprs:
            lines += dump_ast(x, indent + 1)
        return lines
    if isinstance(e, (NumberLit, StringLit, BoolLit)):
        return [f"{pad}{type(e).__name__} {deparse(e)}"]
    if isinstance(e, NullLit):
        return [f"{pad}NullLit"]
    if isinstance(e, Symbol):
        return [f"{pad}Symbol {e.name}"]
    if isinstance(e, Call):
        lines = [f"{pad}Call"] + dump_ast(e.head, indent + 1)
        for a in e.args:
            lines += _dump_arg(a, indent + 1)
        return lines
    if isinstance(e, Lambda):
        params = ", ".join(p.name if p.default is None else f"{p.name} = {deparse(p.default)}"
                           for p in e.params)
        return [f"{pad}Lambda ({params})"] + dump_ast(e.body, indent + 1)
    if isinstance(e, Pipe):
        return [f"{pad}Pipe"] + dump_ast(e.lhs, indent + 1) + dump_ast(e.rhs, indent + 1)
    return [f"{pad}Assign {e.target}"] + dump_ast(e.value, indent + 1)


def _dump_arg(a: Arg, indent: int) -> List[str]:
    inner = dump_ast(a.expr, indent + 1)
    label = "  " * indent + (f"Arg {a.name} =" if a.name else "Arg")
    return [label] + inner


# REPL

HELP = """commands:
  :ast <expr>   show the syntax tree
  :env <fn>     list the bindings held in a function's environment
  :quit         leave"""


def environment_listing(f, global_env: Environment) -> str:
    if not isinstance(f, Closure):
        return "(not a closure)"
    if f.env is global_env or f.env.parent is None:
        return "(global environment)"
    items = sorted(f.env.local_items())
    if not items:
        return "(no bindings)"
    return "\n".join(f"{name}: {format_value(v)}" for name, v in items)


def repl(stdin: TextIO = None, out: TextIO = None, err: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    env = base_environment()
    pending = ""
    with diagnostics(err):
        while True:
            out.write("+ " if pending else "> ")
            out.flush()
            line = stdin.readline()
            if not line:
                out.write("\n")
                return EXIT_OK
            line = line.rstrip("\n")
            stripped = line.strip()
            if not pending and stripped.startswith(":"):
                command, _, rest = stripped.partition(" ")
                if command in (":quit", ":q"):
                    return EXIT_OK
                try:
                    if command == ":ast":
                        print("\n".join(dump_ast(parse(rest))), file=out)
                    elif command == ":env":
                        f = evaluate(parse(rest), env)
                        print(environment_listing(f, env), file=out)
                    else:
                        print(HELP, file=out)
                except FclError as exc:
                    report_error(exc, err)
                continue
            source = pending + line
            try:
                evaluate_program(source, env, out)
                pending = ""
            except ParseError as exc:
                if exc.incomplete and stripped:
                    pending = source + "\n"
                else:
                    pending = ""
                    report_error(exc, err)
            except FclError as exc:
                pending = ""
                report_error(exc, err)
            except RecursionError:
                pending = ""
                print("Error: evaluation nested too deeply", file=err)


# argument parsing

def _strategy_list(text: str) -> List[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in strategies.STRATEGIES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown strategy {', '.join(unknown) or '(none)'}; "
            f"choose from {', '.join(strategies.STRATEGIES)}")
    return names


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fcl", description="fc composition language")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="evaluate a program file")
    p.add_argument("file")
    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("-e", "--expr", required=True)
    sub.add_parser("repl", help="interactive session")
    p = sub.add_parser("ast", help="print the syntax tree of an expression")
    p.add_argument("-e", "--expr", required=True)
    p = sub.add_parser("deparse", help="print an expression in canonical form")
    p.add_argument("-e", "--expr", required=True)
    p = sub.add_parser("bench", help="time pipeline strategies")
    p.add_argument("file")
    p.add_argument("--iters", type=_positive, default=bench.DEFAULT_ITERS)
    p.add_argument("--warmup", type=_non_negative, default=bench.DEFAULT_WARMUP)
    p.add_argument("--strategies", type=_strategy_list,
                   default=list(strategies.DEFAULT_STRATEGIES))
    p.add_argument("--order", choices=bench.ORDERS, default="random",
                   help="interleave strategies in a seeded shuffle, or time them one block each")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="one JSON object per strategy")
    return parser


def main(argv: Optional[List[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.command in ("run", "bench"):
        source = _read(args.file, err)
        if source is None:
            return EXIT_USAGE
    if args.command == "run":
        return _run_source(source, out, err)
    if args.command == "eval":
        return _run_source(args.expr, out, err)
    if args.command == "repl":
        return repl(out=out, err=err)
    if args.command in ("ast", "deparse"):
        try:
            tree = parse(args.expr)
        except FclError as exc:
            report_error(exc, err)
            return EXIT_ERROR
        text = "\n".join(dump_ast(tree)) if args.command == "ast" else deparse(tree)
        print(text, file=out)
        return EXIT_OK
    with diagnostics(err):
        try:
            pipeline, input_value = bench.load_pipeline(source)
            reports = bench.run_bench(pipeline, input_value, args.strategies,
                                      iters=args.iters, warmup=args.warmup,
                                      order=args.order, seed=args.seed)
        except FclError as exc:
            report_error(exc, err)
            return EXIT_ERROR
    if args.json:
        for r in reports:
            print(r.to_json(), file=out)
    else:
        print(bench.format_table(reports), file=out)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())

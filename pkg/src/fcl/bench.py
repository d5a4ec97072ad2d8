"""Microbenchmark harness: warm up, then time each application on a monotonic clock."""
from __future__ import annotations

import gc
import json
import math
import random
import statistics
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable, List, Sequence, Tuple

from fcl import strategies
from fcl.errors import EvalError
from fcl.runtime.builtins import base_environment
from fcl.runtime.evaluator import evaluate
from fcl.runtime.values import StageList, type_name
from fcl.syntax.parser import parse

DEFAULT_ITERS = 10_000
DEFAULT_WARMUP = 100
ORDERS = ("random", "block")


@dataclass(frozen=True)
class BenchReport:
    strategy: str
    iterations: int
    warmup: int
    mean_ns: float
    stderr_ns: float
    median_ns: float
    min_ns: int

    def __post_init__(self):
        if self.iterations <= 0:
            raise ValueError("iterations must be positive")
        if self.stderr_ns < 0 or self.min_ns > self.median_ns:
            raise ValueError("inconsistent timing statistics")

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def summarize(strategy: str, samples: Sequence[int], warmup: int) -> BenchReport:
    n = len(samples)
    mean = statistics.fmean(samples)
    stderr = statistics.stdev(samples) / math.sqrt(n) if n > 1 else 0.0
    return BenchReport(
        strategy=strategy,
        iterations=n,
        warmup=warmup,
        mean_ns=round(mean, 1),
        stderr_ns=round(stderr, 1),
        median_ns=round(float(statistics.median(samples)), 1),
        min_ns=min(samples),
    )


def schedule(n_fns: int, iters: int, order: str, seed: int) -> List[int]:
    """Which callable to time at each step.

    ``block`` times each callable ``iters`` times in a row. ``random``
    interleaves them in a seeded shuffle so that slow drift of the host
    (frequency scaling, noisy neighbours) hits every callable alike.
    """
    if order not in ORDERS:
        raise ValueError(f"unknown order '{order}' (choose from {', '.join(ORDERS)})")
    steps = [i for i in range(n_fns) for _ in range(iters)]
    if order == "random":
        random.Random(seed).shuffle(steps)
    return steps


def time_callables(fns: Sequence[Callable], arg, iters: int, warmup: int,
                   order: str = "random", seed: int = 0) -> List[List[int]]:
    """Warm up every callable, then time ``iters`` applications of each."""
    for fn in fns:
        for _ in range(warmup):
            fn(arg)
    steps = schedule(len(fns), iters, order, seed)
    clock = time.perf_counter_ns
    samples: List[List[int]] = [[] for _ in fns]
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for i in steps:
            fn = fns[i]
            t0 = clock()
            fn(arg)
            samples[i].append(clock() - t0)
    finally:
        if gc_was_enabled:
            gc.enable()
    return samples


def time_callable(fn: Callable, arg, iters: int, warmup: int) -> List[int]:
    return time_callables([fn], arg, iters, warmup, order="block")[0]


def load_pipeline(source: str) -> Tuple[strategies.Pipeline, object]:
    """Evaluate a pipeline program and return its ``stages`` and ``input`` bindings."""
    env = base_environment()
    evaluate(parse(source), env)
    stages = env.lookup("stages")
    if not isinstance(stages, StageList):
        raise EvalError(f"'stages' must be built with stage_list(), not {type_name(stages)}")
    return strategies.Pipeline.from_stage_list(stages), env.lookup("input")


def load_pipeline_file(path) -> Tuple[strategies.Pipeline, object]:
    return load_pipeline(Path(path).read_text(encoding="utf-8"))


def run_bench(pipeline: strategies.Pipeline, input_value,
              names: Iterable[str] = strategies.DEFAULT_STRATEGIES,
              iters: int = DEFAULT_ITERS, warmup: int = DEFAULT_WARMUP,
              order: str = "random", seed: int = 0) -> List[BenchReport]:
    if iters <= 0 or warmup < 0:
        raise ValueError("iters must be positive and warmup non-negative")
    names = list(names)
    # Build every callable up front so construction is never timed.
    fns = [strategies.build(name, pipeline) for name in names]
    samples = time_callables(fns, input_value, iters, warmup, order, seed)
    return [summarize(name, s, warmup) for name, s in zip(names, samples)]


COLUMNS = ("strategy", "iterations", "warmup", "mean_ns", "stderr_ns", "median_ns", "min_ns")


def format_table(reports: Sequence[BenchReport]) -> str:
    rows = [COLUMNS] + [tuple(str(getattr(r, c)) for c in COLUMNS) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(COLUMNS))]
    lines = []
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells))
    return "\n".join(lines)

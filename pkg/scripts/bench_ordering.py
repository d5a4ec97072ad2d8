"""Repeat the strategy benchmark over pipelines of increasing depth.

For each depth k a pipeline of k sqrt stages is timed with every strategy;
the output is one JSON line per (depth, repeat, strategy) plus a summary of
how often median(fc) <= median(list) held.

    python scripts/bench_ordering.py --depths 1 2 5 10 --repeats 3 --iters 5000
"""
import argparse
import json
from collections import Counter

from fcl.bench import load_pipeline, run_bench
from fcl.strategies import STRATEGIES


def sqrt_pipeline(depth: int) -> str:
    return f"stages <- stage_list({', '.join(['sqrt'] * depth)})\ninput <- c(2, 1024, 65536)\n"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depths", type=int, nargs="+", default=[1, 2, 5, 10])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--iters", type=int, default=5000)
    ap.add_argument("--warmup", type=int, default=100)
    ap.add_argument("--strategies", nargs="+", default=sorted(STRATEGIES))
    args = ap.parse_args()

    held = Counter()
    for depth in args.depths:
        pipeline, x = load_pipeline(sqrt_pipeline(depth))
        for rep in range(args.repeats):
            reports = run_bench(pipeline, x, args.strategies, iters=args.iters, warmup=args.warmup)
            by_name = {}
            for r in reports:
                by_name[r.strategy] = r.median_ns
                print(json.dumps({"depth": depth, "repeat": rep, **json.loads(r.to_json())}))
            if "fc" in by_name and "list" in by_name:
                held[depth] += by_name["fc"] <= by_name["list"]
    for depth in args.depths:
        print(f"depth {depth}: median(fc) <= median(list) in {held[depth]}/{args.repeats} runs")


if __name__ == "__main__":
    main()

"""Compiled kernels vs pure-Python engines on the chain families.

    python3 benchmarks/bench_backends.py [--repeat 5] [--d-list 256,512,1024,2048]

Both backends must report the same opCount and outcome; only wall time differs.
"""

from __future__ import annotations

import argparse
import statistics
import time

from gscsp.acids import run_acids
from gscsp.backend import compiled_available
from gscsp.oracle import diff_chain, infeasible_chain, planted_chain
from gscsp.solver import solve_dscsp

FAMILIES = {
    "diff-chain": lambda d: diff_chain(16, d),
    "planted-chain": lambda d: planted_chain(16, d, 8),
    "infeasible-chain": lambda d: infeasible_chain(16, d),
}


def timed(fn, repeat: int):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return result, statistics.median(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--d-list", default="256,512,1024,2048")
    args = ap.parse_args()
    if not compiled_available():
        raise SystemExit("compiled kernels not built: run 'python3 setup.py build_ext --inplace'")
    d_list = [int(x) for x in args.d_list.split(",")]
    print(f"{'family':<17}{'engine':<7}{'d':>6}{'opCount':>10}{'python ms':>11}{'compiled ms':>13}{'speedup':>9}")
    for name, make in FAMILIES.items():
        for d in d_list:
            inst = make(d)
            inst.tables
            runs = {
                "acids": lambda b: run_acids(inst, backend=b),
                "dscsp": lambda b: solve_dscsp(inst, backend=b),
            }
            for engine, run in runs.items():
                py, py_ms = timed(lambda: run("python"), args.repeat)
                cc, cc_ms = timed(lambda: run("compiled"), args.repeat)
                assert py == cc, f"backends disagree on {name} d={d} ({engine})"
                print(
                    f"{name:<17}{engine:<7}{d:>6}{py.op_count:>10}{py_ms:>11.2f}{cc_ms:>13.3f}"
                    f"{py_ms / max(cc_ms, 1e-9):>8.1f}x"
                )


if __name__ == "__main__":
    main()

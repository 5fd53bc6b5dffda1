"""Compare the pure-Python and compiled kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs through both backends; results are checked for
equality before timings are printed.
"""

from __future__ import annotations

import argparse
import statistics
import time

from circrank import kernels
from circrank.instances import eight_node_conflict_example, random_suite
from circrank.kemeny import kemeny_exact
from circrank.minmax import minmax_exact
from circrank.strong import algorithm1, perturbation


def _strong_suite():
    suite = random_suite(200, seed=0)

    def run():
        return [(perturbation(g).strong_arcs, algorithm1(g).strong_arcs) for g in suite]

    return run


def _kemeny_suite():
    suite = random_suite(60, seed=2, n_min=7, n_max=8)

    def run():
        return [kemeny_exact(g).removed_weight for g in suite]

    return run


def _minmax_suite():
    suite = random_suite(150, seed=0, n_max=6)
    suite.append(eight_node_conflict_example())

    def run():
        return [minmax_exact(g).weight for g in suite]

    return run


WORKLOADS = {
    "strong (200 graphs, both routes)": _strong_suite,
    "kemeny (60 graphs, n=7..8)": _kemeny_suite,
    "minmax (151 graphs, n<=6)": _minmax_suite,
}


def _time(fn, repeat: int):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is timed")
    print(f"{'workload':<36}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, make in WORKLOADS.items():
        fn = make()
        results, times = [], []
        for b in backends:
            prev = kernels.use_backend(b)
            try:
                res, t = _time(fn, args.repeat)
            finally:
                kernels.use_backend(prev)
            results.append(res)
            times.append(t)
        if any(r != results[0] for r in results):
            raise SystemExit(f"{name}: backends disagree")
        row = f"{name:<36}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()

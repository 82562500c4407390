"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import sys
import time

from vtue import _backend


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases(args):
    yield f"vt_fixed_p n={args.n}", lambda b: b.vt_fixed_p(args.n, 0.3)
    yield f"hamming_fixed_p r={args.r}", lambda b: b.hamming_fixed_p(args.r, 0.3)

    def sim(b):
        stream = b.make_stream(0)
        b.simulate_chunk(stream, args.sim_n, 0, 0.5, 0, args.trials, args.trials)

    yield f"simulate_chunk n={args.sim_n} trials={args.trials}", sim


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, default=127, help="VT length for the fixed-p DP")
    ap.add_argument("--r", type=int, default=7, help="Hamming redundancy for the fixed-p DP")
    ap.add_argument("--sim-n", type=int, default=25)
    ap.add_argument("--trials", type=int, default=200_000)
    args = ap.parse_args(argv)

    if not _backend.compiled_available():
        print("compiled extension not built; run `python setup.py build_ext --inplace`", file=sys.stderr)
        return 1
    fast, slow = _backend.get("cython"), _backend.get("numpy")
    print(f"{'kernel':<40}{'cython s':>12}{'numpy s':>12}{'speedup':>10}")
    for label, fn in cases(args):
        tc = best_of(lambda: fn(fast), args.repeat)
        tn = best_of(lambda: fn(slow), args.repeat)
        print(f"{label:<40}{tc:>12.4f}{tn:>12.4f}{tn / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled and pure-Python carry kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Times three workloads on each backend: raw carry counts, the admissible-range
minimum scan on large differential problems, and a full verification sweep.
"""

import argparse
import random
import time

from polytors import _kernels_py
from polytors.digits import decompose, primes_up_to
from polytors.oracle import DifferentialProblem

try:
    from polytors import _kernels as _compiled
except ImportError:
    _compiled = None


def carry_workload(mod, pairs):
    cc = mod.carry_count
    for N, n, p in pairs:
        cc(N, n, p)


def scan_workload(mod, problems):
    for pr in problems:
        mod.min_carry_scan(pr.N, pr.S, pr.p, 1)


def sweep_workload(mod, problems):
    for pr in problems:
        mod.min_carry_scan(pr.N, pr.S, pr.p, pr.step)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(1)
    primes = primes_up_to(31)
    pairs = []
    for _ in range(200_000):
        N = rng.randint(0, 10**12)
        pairs.append((N, rng.randint(0, N), rng.choice(primes)))

    big = [
        DifferentialProblem.from_run(dec, run.alpha, multiples_only=False)
        for l in (99_999, 262_143, 524_287, 999_999)
        for p in (2, 3)
        for dec in [decompose(l, p)]
        for run in dec
    ]
    sweep = [
        DifferentialProblem.from_run(dec, run.alpha)
        for p in primes
        for l in range(1, 2001)
        for dec in [decompose(l, p)]
        for run in dec
    ]

    workloads = [
        ("carry_count x200k", lambda m: carry_workload(m, pairs)),
        (f"full scans ({sum(pr.S for pr in big)} n)", lambda m: scan_workload(m, big)),
        (f"verify sweep ({len(sweep)} runs)", lambda m: sweep_workload(m, sweep)),
    ]
    backends = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    print(f"{'workload':34s}" + "".join(f"{name:>12s}" for name, _ in backends) + ("     speedup" if _compiled else ""))
    for label, fn in workloads:
        times = [best_of(lambda: fn(mod), args.repeat) for _, mod in backends]
        row = f"{label:34s}" + "".join(f"{t:11.3f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if _compiled is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()

"""Time the jet-count kernels: numba search against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each task is counted once to warm the JIT cache, then timed per backend; the
counts must agree.
"""

import argparse
import os
import time

from toriczeta.oracle import count_image_jets, count_jets, singularity_task
from toriczeta.oracle.kernels import HAVE_NUMBA

TASKS = [
    ("count (1,2) n=4 GF(3)", lambda: count_jets(singularity_task(1, 2, 4, 3))),
    ("count (3,7) n=3 GF(3)", lambda: count_jets(singularity_task(3, 7, 3, 3))),
    ("count (2,7) n=2 GF(5)", lambda: count_jets(singularity_task(2, 7, 2, 5))),
    ("count (1,3) n=6 GF(2)", lambda: count_jets(singularity_task(1, 3, 6, 2))),
    ("image x1x2x4=x3^2 n=2 m=4 GF(3)",
     lambda: count_image_jets([[(1, {0: 1, 1: 1, 3: 1}), (-1, {2: 2})]], 2, 4, 3, 4)),
]


def timed(fn, backend, repeat):
    os.environ["TORICZETA_KERNELS"] = backend
    value = fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        again = fn()
        best = min(best, time.perf_counter() - t0)
        assert again == value
    return value, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    print(f"{'task':36s} {'count':>12s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in TASKS:
        results = [timed(fn, b, args.repeat) for b in backends]
        values = {v for v, _ in results}
        if len(values) != 1:
            raise SystemExit(f"{name}: backends disagree {values}")
        times = [t for _, t in results]
        speed = f"{times[1] / times[0]:8.1f}x" if len(times) == 2 and times[0] > 0 else "-"
        print(f"{name:36s} {results[0][0]:12d} " + " ".join(f"{t:9.4f}s" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()

"""Compare the compiled kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--quick]

Workloads mirror production shapes: integer distance matrices in units
of 2**-21, symmetric with a zero diagonal.
"""

from __future__ import annotations

import argparse
import random
import time

from perimetric import _kernels_py as pure

try:
    from perimetric import _kernels as compiled
except ImportError:
    compiled = None


def random_matrix(rng: random.Random, n: int) -> list[int]:
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            value = rng.randint(1, 1 << 22)
            flat[i * n + j] = value
            flat[j * n + i] = value
    return flat


def random_ultrametric_matrix(rng: random.Random, n: int, depth: int = 12) -> list[int]:
    """Distances from random leaf paths: longer shared prefix, smaller value.

    Violation-free by construction, so the triple scan runs its full cube
    instead of bailing at the cap.
    """
    paths = [tuple(rng.randint(0, 1) for _ in range(depth)) for _ in range(n)]
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            lcp = 0
            while lcp < depth and paths[i][lcp] == paths[j][lcp]:
                lcp += 1
            value = 1 << (depth - lcp + 2)
            flat[i * n + j] = value
            flat[j * n + i] = value
    return flat


def timed(fn) -> float:
    started = time.perf_counter()
    fn()
    return time.perf_counter() - started


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    rng = random.Random(1)
    nn_n = 600 if args.quick else 1500
    scan_n = 150 if args.quick else 400
    brute_n, brute_reps = 9, (10 if args.quick else 60)

    workloads = []

    nn_matrix = random_matrix(rng, nn_n)
    workloads.append(
        (f"nn_tour n={nn_n}", lambda impl: impl.nn_tour_ints(nn_matrix, nn_n, 0))
    )

    brute_matrices = [random_matrix(rng, brute_n) for _ in range(brute_reps)]

    def run_brute(impl):
        for flat in brute_matrices:
            impl.brute_force_ints(flat, brute_n)

    workloads.append((f"brute_force n={brute_n} x{brute_reps}", run_brute))

    scan_matrix = random_ultrametric_matrix(rng, scan_n)
    workloads.append(
        (
            f"triple_scan n={scan_n}",
            lambda impl: impl.triple_violations_ints(scan_matrix, scan_n, 100),
        )
    )

    print(f"{'workload':<28} {'pure-python':>12} {'compiled':>12} {'speedup':>9}")
    for name, runner in workloads:
        pure_s = timed(lambda: runner(pure))
        if compiled is None:
            print(f"{name:<28} {pure_s:>11.3f}s {'n/a':>12} {'n/a':>9}")
            continue
        fast_s = timed(lambda: runner(compiled))
        ratio = pure_s / fast_s if fast_s else float("inf")
        print(f"{name:<28} {pure_s:>11.3f}s {fast_s:>11.3f}s {ratio:>8.1f}x")

    if compiled is None:
        print("\ncompiled extension not built; showing fallback timings only")
    else:
        # paranoia: identical results on a shared workload
        sample = random_matrix(rng, 64)
        assert compiled.nn_tour_ints(sample, 64, 0) == pure.nn_tour_ints(sample, 64, 0)
        assert compiled.triple_violations_ints(sample, 64, 50) == pure.triple_violations_ints(
            sample, 64, 50
        )
        print("\nresult parity on a shared 64-point workload: ok")


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python kernels on the algebraic solver's hot loops.

    python benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel on both backends with identical inputs and checks
that the results agree.
"""

import argparse
import random
import timeit

from nlmopt import kernels


def workloads(rng: random.Random):
    a = [[rng.randint(-3, 3) for _ in range(8)] for _ in range(4)]
    big = [[rng.randint(-10**20, 10**20) for _ in range(12)] for _ in range(12)]
    rect = [[rng.randint(-2, 2) for _ in range(20)] for _ in range(8)]
    diag = [rng.randint(1, 400) ** rng.randint(0, 60) for _ in range(8)]
    nodes = list(range(1, 290))
    coeffs = [rng.randint(0, 50) for _ in nodes]
    values = [sum(c * t**k for k, c in enumerate(coeffs)) for t in nodes]
    return [
        ("bareiss_det 12x12, 67-bit entries", "bareiss_det", (big,)),
        ("bareiss_rank 8x20", "bareiss_rank", (rect,)),
        ("gram_det 4x8, huge diagonal", "gram_det", (a, diag)),
        ("newton_monomial, 289 nodes", "newton_monomial", (nodes, values)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    names = sorted(backends)
    print(f"{'kernel':40s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn, inputs in workloads(random.Random(0)):
        times, results = {}, {}
        for name in names:
            impl = getattr(backends[name], fn)
            results[name] = impl(*inputs)
            times[name] = min(timeit.repeat(lambda: impl(*inputs), number=1, repeat=args.repeat))
        if len({repr(list(r)) if isinstance(r, list) else repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        row = f"{label:40s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.2f}x"
        print(row)


if __name__ == "__main__":
    main()

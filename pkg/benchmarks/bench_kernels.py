"""Time the compiled kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat N]

Both variants are imported directly, so the CNLOGIC_NO_NUMBA flag does not
matter here.  The first numba call of each kernel (compilation) is done
before timing starts.
"""

import argparse
from timeit import default_timer as timer

import numpy as np

from cnlogic import _kernels as K


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = timer()
        fn(*args)
        best = min(best, timer() - start)
    return best


def cases():
    rng = np.random.default_rng(0)
    yield "valid_family_flags(4)", "valid_family_flags", (4,)
    w = rng.integers(1, 1000, size=12).astype(np.int64)
    yield "subset_sums(12)", "subset_sums", (w,)
    sums = K.subset_sums_numpy(w)
    yield "induced_membership(12)", "induced_membership", (sums,)
    big = rng.integers(1, 100, size=100_000).astype(np.int64)
    mask = rng.random(100_000) < 0.5
    yield "masked_sum(100k)", "masked_sum", (big, mask)
    c = 12
    flags = K.induced_membership_numpy(sums)[(1 << c) - 1].copy()
    yield "check_family(12)", "check_family", (flags, (1 << c) - 1, c)
    yield "derived_check(12)", "derived_check", (flags, (1 << c) - 1, c)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba available: {K.NUMBA_AVAILABLE}")
    print(f"{'kernel':<26}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for label, name, fargs in cases():
        fast = getattr(K, name + "_numba")
        slow = getattr(K, name + "_numpy")
        a, b = fast(*fargs), slow(*fargs)
        if isinstance(a, tuple):
            assert tuple(map(int, a)) == tuple(map(int, b)), label
        else:
            assert np.array_equal(np.asarray(a), np.asarray(b)), label
        t_slow = best_of(slow, fargs, args.repeat)
        t_fast = best_of(fast, fargs, args.repeat)
        print(f"{label:<26}{t_slow * 1e3:>12.3f}{t_fast * 1e3:>12.3f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()

"""Compiled vs pure-Python kernels.

    python bench/bench_kernels.py [--repeat N]

Times each kernel directly, on integers (the int64 fast path) and on
Fractions, then two end-to-end workloads in subprocesses, one of them with
``LAFT_PURE_PYTHON=1``: a deep transform and an operator-lab check.

The "frac" rows feed Fractions straight in and so time the object fallback;
the library clears denominators first and lands on the int rows.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from laft import _kernels_py

try:
    from laft import _kernels
except ImportError:
    _kernels = None

END_TO_END = """
import time
from fractions import Fraction
from laft.series import PuiseuxSeries
from laft.oplab import verify_star_coefficient
from laft.fourier import fourier_0_inf
from laft.classes import normalize
from laft.kernels import BACKEND
t0 = time.perf_counter()
f = normalize(PuiseuxSeries({Fraction(-5, 2): -128, -2: 3, -1: 1, 0: Fraction(1, 3)}))
fourier_0_inf(f, target_trunc=Fraction(30))
t1 = time.perf_counter()
verify_star_coefficient(PuiseuxSeries({-2: 3, -1: 1}), (-16, 16))
t2 = time.perf_counter()
print(BACKEND, t1 - t0, t2 - t1)
"""


def _rationals(rng, n):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]


def cases(rng):
    a, b = _rationals(rng, 120), _rationals(rng, 120)
    a[0] = Fraction(3, 2)
    ia = [rng.randint(-999, 999) for _ in range(400)]
    ib = [rng.randint(-999, 999) for _ in range(400)]
    m = [_rationals(rng, 40) for _ in range(40)]
    for row in m:  # banded, like the operator matrices
        for j in range(len(row)):
            if rng.random() < 0.7:
                row[j] = 0
    im = [[int(x * 2520) for x in row] for row in m]
    return {
        "convolve int n=400": lambda k: k.convolve(ia, ib, 400),
        "convolve frac n=120": lambda k: k.convolve(a, b, 120),
        "series_pow n=120": lambda k: k.series_pow(a, Fraction(-2, 3), Fraction(1), 120),
        "matmul int 40x40": lambda k: k.matmul(im, im),
        "matmul frac 40x40": lambda k: k.matmul(m, m),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<22}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}")
    for name, fn in cases(rng).items():
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:<22}{tp:>12.4f}{'-':>14}{'-':>10}")
            continue
        assert fn(_kernels) == fn(_kernels_py)
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.2f}x")
    print(f"\n{'end to end':<22}{'transform [s]':>14}{'star check [s]':>16}")
    for pure in ("1", ""):
        env = dict(os.environ, LAFT_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        backend, t_transform, t_star = out.stdout.split()
        print(f"{backend:<22}{float(t_transform):>14.3f}{float(t_star):>16.3f}")


if __name__ == "__main__":
    main()

"""Kernel selection.

The compiled extension is used when it was built; otherwise the pure-Python
fallback is imported.  Setting ``LAFT_PURE_PYTHON=1`` forces the fallback.
"""

import math
import os
from fractions import Fraction

from . import _kernels_py

if os.environ.get("LAFT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

convolve = _impl.convolve
series_pow = _impl.series_pow
matmul = _impl.matmul


def _denominator(mat):
    d = 1
    for row in mat:
        for x in row:
            if x and type(x) is Fraction and x.denominator != 1:
                d = math.lcm(d, x.denominator)
    return d


def matmul_rational(A, B):
    """Product of two rational matrices, multiplied in integers after
    clearing one common denominator per factor."""
    da, db = _denominator(A), _denominator(B)
    ia = [[int(x * da) for x in row] for row in A]
    ib = [[int(x * db) for x in row] for row in B]
    d = da * db
    return [[Fraction(x, d) if x else 0 for x in row] for row in _impl.matmul(ia, ib)]

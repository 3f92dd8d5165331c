"""Pure-Python kernels; same contract as the compiled ``_kernels`` module.

All kernels operate on plain lists of field elements (ints, Fractions or mpc)
and skip zero entries, which keeps sparse Puiseux data cheap.
"""


def convolve(a, b, n):
    """First ``n`` coefficients of the product of two dense series."""
    c = [0] * n
    lb = len(b)
    for i, ai in enumerate(a):
        if i >= n:
            break
        if not ai:
            continue
        lim = min(lb, n - i)
        for j in range(lim):
            bj = b[j]
            if bj:
                c[i + j] += ai * bj
    return c


def series_pow(a, e, p0, n):
    """First ``n`` coefficients of ``a**e`` given ``p0 = a[0]**e``.

    J. C. P. Miller's recurrence; ``e`` must already be a field element and
    ``a[0]`` must be nonzero.
    """
    if n <= 0:
        return []
    a0 = a[0]
    la = len(a)
    p = [p0] + [0] * (n - 1)
    e1 = e + 1
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                pk = p[k - i]
                if pk:
                    acc += (e1 * i - k) * ai * pk
        p[k] = acc / (k * a0)
    return p


def matmul(A, B):
    """Dense product of two square matrices given as lists of rows."""
    n = len(A)
    m = len(B[0]) if B else 0
    C = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Ci = C[i]
        for k, aik in enumerate(Ai):
            if not aik:
                continue
            Bk = B[k]
            for j in range(m):
                bkj = Bk[j]
                if bkj:
                    Ci[j] += aik * bkj
    return C

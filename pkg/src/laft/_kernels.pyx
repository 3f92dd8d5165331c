# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract and results as ``_kernels_py``.

Integer inputs that fit in 64 bits run in C with overflow checks, and the
power recurrence on rationals runs on GMP ``mpq_t``.  Anything else (mpc,
big ints in the products, an overflow) takes the object path.
"""

from fractions import Fraction

from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    static inline int laft_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int laft_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    bint laft_mul_ovf(long long a, long long b, long long *r) nogil
    bint laft_add_ovf(long long a, long long b, long long *r) nogil

cdef long long _LIM = (1 << 62)


cdef bint _load(list xs, long long *out):
    cdef Py_ssize_t i
    cdef object x
    for i in range(len(xs)):
        x = xs[i]
        if type(x) is not int or not (-_LIM < x < _LIM):
            return False
        out[i] = x
    return True


cdef list _convolve_obj(list a, list b, Py_ssize_t n):
    cdef list c = [0] * n
    cdef Py_ssize_t i, j, lim, la = len(a), lb = len(b)
    cdef object ai, bj
    for i in range(min(la, n)):
        ai = a[i]
        if not ai:
            continue
        lim = min(lb, n - i)
        for j in range(lim):
            bj = b[j]
            if bj:
                c[i + j] = c[i + j] + ai * bj
    return c


cpdef list convolve(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, lim
    if n <= 0:
        return []
    cdef long long *xa = <long long *> calloc(la + 1, sizeof(long long))
    cdef long long *xb = <long long *> calloc(lb + 1, sizeof(long long))
    cdef long long *xc = <long long *> calloc(n, sizeof(long long))
    cdef long long t, ai
    cdef bint ok
    try:
        ok = _load(a, xa) and _load(b, xb)
        if ok:
            with nogil:
                for i in range(min(la, n)):
                    ai = xa[i]
                    if ai == 0:
                        continue
                    lim = min(lb, n - i)
                    for j in range(lim):
                        if xb[j] == 0:
                            continue
                        if laft_mul_ovf(ai, xb[j], &t) or laft_add_ovf(xc[i + j], t, &xc[i + j]):
                            ok = False
                            break
                    if not ok:
                        break
        if ok:
            return [xc[i] for i in range(n)]
        return _convolve_obj(a, b, n)
    finally:
        free(xa)
        free(xb)
        free(xc)


cdef extern from "gmp.h":
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpq_struct mpq_t[1]
    void mpq_init(mpq_t)
    void mpq_clear(mpq_t)
    int mpq_set_str(mpq_t, const char *, int)
    char *mpq_get_str(char *, int, const mpq_t)
    void mpq_set_si(mpq_t, long, unsigned long)
    void mpq_add(mpq_t, const mpq_t, const mpq_t)
    void mpq_mul(mpq_t, const mpq_t, const mpq_t)
    void mpq_div(mpq_t, const mpq_t, const mpq_t)
    void mpq_canonicalize(mpq_t)
    int mpq_sgn(const mpq_t)

cdef extern from *:
    """
    #include <gmp.h>
    static void laft_gmp_free(char *p) {
        void (*freefunc)(void *, size_t);
        mp_get_memory_functions(NULL, NULL, &freefunc);
        freefunc(p, strlen(p) + 1);
    }
    """
    void laft_gmp_free(char *p)


cdef bint _set_q(mpq_t out, object x) except -1:
    cdef bytes text
    if type(x) is int:
        text = str(x).encode()
    elif type(x) is Fraction:
        text = f"{x.numerator}/{x.denominator}".encode()
    else:
        return False
    if mpq_set_str(out, text, 10) != 0:
        return False
    mpq_canonicalize(out)
    return True


cdef object _get_q(mpq_t x):
    cdef char *buf = mpq_get_str(NULL, 10, x)
    try:
        text = buf.decode()
    finally:
        laft_gmp_free(buf)
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


cdef list _series_pow_obj(list a, object e, object p0, Py_ssize_t n):
    cdef object a0 = a[0]
    cdef Py_ssize_t la = len(a), k, i, top
    cdef list p = [p0] + [0] * (n - 1)
    cdef object e1 = e + 1
    cdef object acc, ai, pk
    for k in range(1, n):
        acc = 0
        top = min(k, la - 1)
        for i in range(1, top + 1):
            ai = a[i]
            if ai:
                pk = p[k - i]
                if pk:
                    acc = acc + (e1 * i - k) * ai * pk
        p[k] = acc / (k * a0)
    return p


cpdef list series_pow(list a, object e, object p0, Py_ssize_t n):
    if n <= 0:
        return []
    cdef Py_ssize_t la = len(a), k, i, top, j
    cdef mpq_t *qa = NULL
    cdef mpq_t *qp = NULL
    cdef mpq_t q_e1, acc, t, c
    # the object path yields Fractions exactly when a[0] or e is one
    cdef bint ok = (type(p0) in (int, Fraction) and type(e) in (int, Fraction)
                    and (type(a[0]) is Fraction or type(e) is Fraction))
    if ok:
        for j in range(la):
            if type(a[j]) not in (int, Fraction):
                ok = False
                break
    if not ok:
        return _series_pow_obj(a, e, p0, n)
    qa = <mpq_t *> calloc(la, sizeof(mpq_t))
    qp = <mpq_t *> calloc(n, sizeof(mpq_t))
    for j in range(la):
        mpq_init(qa[j])
    for j in range(n):
        mpq_init(qp[j])
    mpq_init(q_e1)
    mpq_init(acc)
    mpq_init(t)
    mpq_init(c)
    try:
        for j in range(la):
            _set_q(qa[j], a[j])
        _set_q(qp[0], p0)
        _set_q(q_e1, e + 1)
        for k in range(1, n):
            mpq_set_si(acc, 0, 1)
            top = min(k, la - 1)
            for i in range(1, top + 1):
                if mpq_sgn(qa[i]) == 0 or mpq_sgn(qp[k - i]) == 0:
                    continue
                # ((e + 1) i - k) a_i p_(k-i)
                mpq_set_si(c, i, 1)
                mpq_mul(t, q_e1, c)
                mpq_set_si(c, -k, 1)
                mpq_add(t, t, c)
                mpq_mul(t, t, qa[i])
                mpq_mul(t, t, qp[k - i])
                mpq_add(acc, acc, t)
            mpq_set_si(c, k, 1)
            mpq_mul(c, c, qa[0])
            mpq_div(qp[k], acc, c)
        return [p0] + [_get_q(qp[j]) for j in range(1, n)]
    finally:
        for j in range(la):
            mpq_clear(qa[j])
        for j in range(n):
            mpq_clear(qp[j])
        mpq_clear(q_e1)
        mpq_clear(acc)
        mpq_clear(t)
        mpq_clear(c)
        free(qa)
        free(qp)


cdef list _matmul_obj(list A, list B):
    cdef Py_ssize_t n = len(A), m = len(B[0]) if B else 0
    cdef Py_ssize_t i, j, k
    cdef list C = [[0] * m for _ in range(n)]
    cdef list Ai, Bk, Ci
    cdef object aik, bkj
    for i in range(n):
        Ai = A[i]
        Ci = C[i]
        for k in range(len(Ai)):
            aik = Ai[k]
            if not aik:
                continue
            Bk = B[k]
            for j in range(m):
                bkj = Bk[j]
                if bkj:
                    Ci[j] = Ci[j] + aik * bkj
    return C


cpdef list matmul(list A, list B):
    cdef Py_ssize_t n = len(A), inner = len(B), m = len(B[0]) if B else 0
    cdef Py_ssize_t i, j, k
    if n == 0 or m == 0:
        return [[0] * m for _ in range(n)]
    cdef long long *xa = <long long *> calloc(n * inner, sizeof(long long))
    cdef long long *xb = <long long *> calloc(inner * m, sizeof(long long))
    cdef long long *xc = <long long *> calloc(n * m, sizeof(long long))
    cdef long long t, aik
    cdef bint ok = True
    try:
        for i in range(n):
            if len(A[i]) != inner or not _load(A[i], xa + i * inner):
                ok = False
                break
        if ok:
            for k in range(inner):
                if not _load(B[k], xb + k * m):
                    ok = False
                    break
        if ok:
            with nogil:
                for i in range(n):
                    for k in range(inner):
                        aik = xa[i * inner + k]
                        if aik == 0:
                            continue
                        for j in range(m):
                            if xb[k * m + j] == 0:
                                continue
                            if laft_mul_ovf(aik, xb[k * m + j], &t) or \
                                    laft_add_ovf(xc[i * m + j], t, &xc[i * m + j]):
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
        if ok:
            return [[xc[i * m + j] for j in range(m)] for i in range(n)]
        return _matmul_obj(A, B)
    finally:
        free(xa)
        free(xb)
        free(xc)

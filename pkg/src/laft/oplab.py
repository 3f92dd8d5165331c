"""Windowed matrix models of operators on ``k((z^(1/q)))``.

A :class:`TruncatedOperator` records the images of the basis monomials
``z^(n/q)``, ``lo <= n <= hi``, restricted to the same window.  Each column
carries

* ``known[c]`` -- rows ``< known[c]`` are exact; ``inf`` means the full image
  lies inside the window and is exact.  A finite value above ``hi`` means the
  in-window part is exact but the image continues past ``hi``;
* ``floor_ok[c]`` -- no part of the image was lost below ``lo``.

A column is *clipped* when its lowest-order behaviour is not determined by the
window; ``op_ord`` and every check ignore clipped columns.

Fractional roots work on :class:`OperatorSymbol`, the exact description
``P z^(n/q) = sum_i p_i(n) z^((n + shift + i)/q)`` with polynomial ``p_i``,
which is read off a matrix by exact interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import kernels
from .compose import pow_rat
from .errors import HypothesisViolated, NotUnitLeading
from .series import INF, PuiseuxSeries

# -- small exact polynomial helpers (coefficients low -> high) -------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def p_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def p_scale(a, c):
    return _trim(x * c for x in a)


def p_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def p_shift(a, c):
    """``n -> a(n + c)``."""
    if not c:
        return tuple(a)
    out = [Fraction(0)] * len(a)
    for k, ak in enumerate(a):
        if not ak:
            continue
        cp = 1
        for i in range(k, -1, -1):
            out[i] += ak * (math.comb(k, i) * cp)
            cp *= c
    return _trim(out)


def p_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def p_fit(points):
    """Lowest-degree polynomial through ``points`` that leaves at least one
    point over as a check; ``None`` if there is none."""
    n = len(points)
    for d in range(0, n - 1):
        base = points[: d + 1]
        poly = ()
        for i, (xi, yi) in enumerate(base):
            li = (Fraction(1),)
            den = Fraction(1)
            for k, (xk, _) in enumerate(base):
                if k != i:
                    li = p_mul(li, (Fraction(-xk), Fraction(1)))
                    den *= xi - xk
            poly = p_add(poly, p_scale(li, Fraction(yi) / den))
        if all(p_eval(poly, x) == y for x, y in points):
            return poly
    return None


# -- windowed matrices ------------------------------------------------------


@dataclass
class TruncatedOperator:
    q: int
    window: tuple
    matrix: list
    known: list
    floor_ok: list
    shift: int = 0  # lower bound for Ord in units of 1/q

    @property
    def lo(self) -> int:
        return self.window[0]

    @property
    def hi(self) -> int:
        return self.window[1]

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def entry(self, row: int, col: int):
        return self.matrix[row - self.lo][col - self.lo]

    def is_exact(self, row: int, col: int) -> bool:
        return self.lo <= row <= self.hi and row < self.known[col - self.lo]

    @classmethod
    def _blank(cls, q, window, shift):
        n = window[1] - window[0] + 1
        return cls(q, tuple(window), [[0] * n for _ in range(n)], [INF] * n, [True] * n, shift)

    def _compatible(self, other):
        if self.q != other.q or self.window != other.window:
            raise ValueError("operators on different windows")

    def __add__(self, other):
        self._compatible(other)
        n = self.size
        mat = [[self.matrix[i][j] + other.matrix[i][j] for j in range(n)] for i in range(n)]
        return TruncatedOperator(
            self.q, self.window, mat,
            [min(a, b) for a, b in zip(self.known, other.known)],
            [a and b for a, b in zip(self.floor_ok, other.floor_ok)],
            min(self.shift, other.shift),
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        mat = [[c * x if x else 0 for x in row] for row in self.matrix]
        return TruncatedOperator(self.q, self.window, mat, list(self.known), list(self.floor_ok), self.shift)

    def _effective_known(self, col_index):
        k = self.known[col_index]
        return k if k == INF else min(k, self.hi + 1)

    def __matmul__(self, other):
        """Composition ``self o other``."""
        self._compatible(other)
        mat = kernels.matmul_rational(self.matrix, other.matrix)
        n = self.size
        known, floor = [], []
        for c in range(n):
            col = other.lo + c
            kb = other._effective_known(c)
            kc = kb + self.shift if kb != INF else INF
            fl = other.floor_ok[c]
            if not fl:
                kc = min(kc, col + other.shift + self.shift)
            for r in range(n):
                if other.matrix[r][c]:
                    kc = min(kc, self._effective_known(r))
                    fl = fl and self.floor_ok[r]
            known.append(kc)
            floor.append(fl)
        return TruncatedOperator(self.q, self.window, mat, known, floor, self.shift + other.shift)

    def column_status(self, c: int):
        """``('ord', value)``, ``('zero', inf)`` or ``('clipped', None)``."""
        i = c - self.lo
        if not self.floor_ok[i]:
            return "clipped", None
        top = min(self.known[i], self.hi + 1)
        for row in range(self.lo, top):
            if self.matrix[row - self.lo][i]:
                return "ord", Fraction(row - c, self.q)
        if self.known[i] == INF:
            return "zero", INF
        return "clipped", None

    def clipped_columns(self):
        return [c for c in range(self.lo, self.hi + 1) if self.column_status(c)[0] == "clipped"]

    def determined_columns(self):
        return [c for c in range(self.lo, self.hi + 1) if self.column_status(c)[0] != "clipped"]

    def exact_entries(self):
        for c in range(self.lo, self.hi + 1):
            i = c - self.lo
            for row in range(self.lo, min(self.known[i], self.hi + 1)):
                yield row, c, self.matrix[row - self.lo][i]


def identity(window, q: int = 1) -> TruncatedOperator:
    op = TruncatedOperator._blank(q, window, 0)
    for i in range(op.size):
        op.matrix[i][i] = Fraction(1)
    return op


def mult_operator(f: PuiseuxSeries, window, q: int | None = None) -> TruncatedOperator:
    """Multiplication by ``f`` on the window (``f`` may carry a finite trunc)."""
    q = f.ram if q is None else q
    if any((e * q).denominator != 1 for e, _ in f.items()):
        raise ValueError(f"series is not on the 1/{q} grid")
    shift = f.valuation_bound()
    shift = int(math.floor(shift * q)) if shift != INF else 0
    op = TruncatedOperator._blank(q, window, shift)
    lo, hi = op.lo, op.hi
    for n in range(lo, hi + 1):
        c = n - lo
        known = INF
        for e, coeff in f.items():
            row = n + int(e * q)
            if row < lo:
                op.floor_ok[c] = False
            elif row > hi:
                known = min(known, hi + 1)
            else:
                op.matrix[row - lo][c] = Fraction(coeff)
        if f.trunc != INF:
            known = min(known, math.ceil(n + f.trunc * q))
        op.known[c] = known
    return op


def derivation_operator(n: int, window, q: int = 1) -> TruncatedOperator:
    """``z^n d/dz``: ``z^(m/q) -> (m/q) z^(m/q + n - 1)``."""
    step = (n - 1) * q
    op = TruncatedOperator._blank(q, window, step)
    lo, hi = op.lo, op.hi
    for m in range(lo, hi + 1):
        c = m - lo
        if m == 0:
            continue
        row = m + step
        if row < lo:
            op.floor_ok[c] = False
        elif row > hi:
            op.known[c] = hi + 1
        else:
            op.matrix[row - lo][c] = Fraction(m, q)
    return op


def euler_index_operator(window, q: int = 1) -> TruncatedOperator:
    """The diagonal operator ``z^(n/q) -> n z^(n/q)`` (that is ``q z d/dz``)."""
    return derivation_operator(1, window, q).scale(q)


def op_ord(a: TruncatedOperator):
    """``min (ord(A z^(n/q)) - n/q)`` over non-clipped columns; ``inf`` if none
    is nonzero."""
    best = INF
    for c in range(a.lo, a.hi + 1):
        status, value = a.column_status(c)
        if status == "ord":
            best = min(best, value)
    return best


def inverse(p: TruncatedOperator) -> TruncatedOperator:
    """Inverse of an operator whose leading diagonal ``P[n + shift][n]`` is
    nonzero, by triangular back-substitution column by column."""
    s = p.shift
    lo, hi = p.lo, p.hi
    out = TruncatedOperator._blank(p.q, p.window, -s)
    for g in range(lo, hi + 1):
        c = g - lo
        start = g - s
        if start < lo:
            out.floor_ok[c] = False
            out.known[c] = lo
            continue
        u = []
        k = 0
        while True:
            row_eq = g + k
            col_k = start + k
            if row_eq > hi or col_k > hi:
                break
            if not all(p.is_exact(row_eq, start + i) for i in range(k + 1)):
                break
            lead = p.entry(row_eq, col_k)
            if not lead:
                raise HypothesisViolated(
                    f"leading coefficient vanishes at z^({col_k}/{p.q}); not invertible"
                )
            acc = Fraction(1 if k == 0 else 0)
            for i in range(k):
                if u[i]:
                    acc -= p.entry(row_eq, start + i) * u[i]
            u.append(acc / lead)
            k += 1
        for i, val in enumerate(u):
            if start + i <= hi:
                out.matrix[start + i - lo][c] = val
        out.known[c] = start + len(u)
    return out


def power(a: TruncatedOperator, m: int) -> TruncatedOperator:
    if m == 0:
        return identity(a.window, a.q)
    if m < 0:
        return power(inverse(a), -m)
    result = a
    for _ in range(m - 1):
        result = result @ a
    return result


def commutator(a: TruncatedOperator, b: TruncatedOperator) -> TruncatedOperator:
    """``[a, b] = a b - b a``."""
    return a @ b - b @ a


def _all_exact_zero(op: TruncatedOperator) -> bool:
    return all(not v for _, _, v in op.exact_entries())


@dataclass
class Comparison:
    columns: list  # compared source exponents (units of 1/q)
    mismatches: list  # (row, col, left, right)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare(x: TruncatedOperator, y: TruncatedOperator) -> Comparison:
    """Entrywise comparison where both sides are exact; a column counts as
    compared when neither side lost part of it below the window and the rows
    from its declared leading degree upward are exact on both sides."""
    x._compatible(y)
    cols, bad = [], []
    lead = min(x.shift, y.shift)
    for c in range(x.lo, x.hi + 1):
        i = c - x.lo
        if not (x.floor_ok[i] and y.floor_ok[i]):
            continue
        top = min(x.known[i], y.known[i], x.hi + 1)
        if top <= max(c + lead, x.lo):
            continue
        cols.append(c)
        for row in range(x.lo, top):
            u, v = x.entry(row, c), y.entry(row, c)
            if u != v:
                bad.append((row, c, u, v))
    return Comparison(cols, bad)


class _Powers:
    """Integer powers of one operator, built on demand and shared."""

    def __init__(self, op: TruncatedOperator):
        self._pos = [identity(op.window, op.q), op]
        self._neg = [self._pos[0]]
        self._op = op
        self._inv = None

    def __call__(self, m: int) -> TruncatedOperator:
        if m >= 0:
            while len(self._pos) <= m:
                self._pos.append(self._pos[-1] @ self._op)
            return self._pos[m]
        if self._inv is None:
            self._inv = inverse(self._op)
        while len(self._neg) <= -m:
            self._neg.append(self._neg[-1] @ self._inv)
        return self._neg[-m]


def residual_operators(a: TruncatedOperator, b: TruncatedOperator, ms) -> dict:
    """``(A+B)^m - A^m - m A^(m-1) B - m(m-1)/2 A^(m-2) [B, A]`` for each ``m``,
    after checking the hypotheses of the expansion on the window."""
    pa = _Powers(a)
    ord_a, ord_b = op_ord(a), op_ord(b)
    if op_ord(pa(-1)) != -ord_a:
        raise HypothesisViolated("Ord(A^-1) differs from -Ord(A)")
    if not ord_a <= ord_b:
        raise HypothesisViolated("need Ord(A) <= Ord(B)")
    ba = commutator(b, a)
    if not _all_exact_zero(commutator(a, ba)):
        raise HypothesisViolated("[A, [B, A]] does not vanish")
    pab = _Powers(a + b)
    out = {}
    for m in ms:
        res = pab(m) - pa(m)
        if m:
            res = res - (pa(m - 1) @ b).scale(m)
        c2 = Fraction(m * (m - 1), 2)
        if c2:
            res = res - (pa(m - 2) @ ba).scale(c2)
        out[m] = res
    return out


def residual_operator(a: TruncatedOperator, b: TruncatedOperator, m: int) -> TruncatedOperator:
    return residual_operators(a, b, [m])[m]


def expansion_residual(a: TruncatedOperator, b: TruncatedOperator, m: int):
    """Ord of the residual of the second-order expansion of ``(A+B)^m``."""
    return op_ord(residual_operator(a, b, m))


# -- operator symbols -------------------------------------------------------


@dataclass
class OperatorSymbol:
    """``z^(n/q) -> sum_i coeffs[i](n) z^((n + shift + i)/q)``, known for
    ``i < len(coeffs)``."""

    q: int
    shift: int
    coeffs: list = dc_field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def truncated(self, k: int) -> "OperatorSymbol":
        return OperatorSymbol(self.q, self.shift, list(self.coeffs[:k]))

    def __matmul__(self, other: "OperatorSymbol") -> "OperatorSymbol":
        k = min(self.order, other.order)
        out = []
        for i in range(k):
            acc = ()
            for b in range(i + 1):
                a_part = p_shift(self.coeffs[i - b], b + other.shift)
                acc = p_add(acc, p_mul(a_part, other.coeffs[b]))
            out.append(acc)
        return OperatorSymbol(self.q, self.shift + other.shift, out)

    def power(self, m: int) -> "OperatorSymbol":
        if m < 0:
            return self.inverse().power(-m)
        result = OperatorSymbol(self.q, 0, [(Fraction(1),)] + [()] * (self.order - 1))
        for _ in range(m):
            result = result @ self
        return result

    def inverse(self) -> "OperatorSymbol":
        lead = self.coeffs[0] if self.coeffs else ()
        if len(lead) != 1:
            raise NotUnitLeading("leading coefficient must be a nonzero constant")
        inv0 = 1 / lead[0]
        s = self.shift
        out = [(inv0,)]
        for i in range(1, self.order):
            acc = ()
            for b in range(i):
                acc = p_add(acc, p_mul(p_shift(self.coeffs[i - b], b - s), out[b]))
            out.append(p_scale(acc, -inv0))
        return OperatorSymbol(self.q, -s, out)

    def root(self, p: int) -> "OperatorSymbol":
        """The ``p``-th root with leading coefficient 1, ``p > 0``."""
        if p <= 0:
            raise ValueError("root index must be positive")
        if not self.coeffs or self.coeffs[0] != (Fraction(1),):
            raise NotUnitLeading("p_0 must be identically 1")
        if self.shift % p:
            raise HypothesisViolated(f"shift {self.shift} is not divisible by {p}")
        t = self.shift // p
        q_coeffs = [(Fraction(1),)]
        # pows[k] holds the known coefficients of Q^(k+1)
        pows = [q_coeffs] + [[(Fraction(1),)] for _ in range(p - 1)]

        def extend(i):
            for k in range(1, p):
                prev = pows[k - 1]
                acc = ()
                for b in range(i + 1):
                    acc = p_add(acc, p_mul(p_shift(prev[i - b], b + t), q_coeffs[b]))
                if len(pows[k]) > i:
                    pows[k][i] = acc
                else:
                    pows[k].append(acc)

        for i in range(1, self.order):
            q_coeffs.append(())
            extend(i)
            rhs = p_add(self.coeffs[i], p_scale(pows[p - 1][i], -1))
            q_coeffs[i] = _solve_shift_sum(rhs, p, t)
            extend(i)
        return OperatorSymbol(self.q, t, q_coeffs)

    def evaluate(self, window) -> TruncatedOperator:
        op = TruncatedOperator._blank(self.q, window, self.shift)
        lo, hi = op.lo, op.hi
        for n in range(lo, hi + 1):
            c = n - lo
            base = n + self.shift
            if base < lo:
                op.floor_ok[c] = False
            for i, poly in enumerate(self.coeffs):
                row = base + i
                if lo <= row <= hi:
                    op.matrix[row - lo][c] = p_eval(poly, n)
            op.known[c] = base + self.order
        return op


def _solve_shift_sum(rhs, p: int, t: int):
    """Polynomial ``e`` with ``sum_{m<p} e(n + m t) = rhs(n)``."""
    rhs = list(rhs)
    e = [Fraction(0)] * len(rhs)
    for d in range(len(rhs) - 1, -1, -1):
        c = rhs[d] / p
        e[d] = c
        mono = tuple([Fraction(0)] * d + [c])
        contrib = ()
        for m in range(p):
            contrib = p_add(contrib, p_shift(mono, m * t))
        for i, v in enumerate(contrib):
            rhs[i] -= v
    return _trim(e)


def symbol_of(op: TruncatedOperator, max_order: int | None = None) -> OperatorSymbol:
    """Read ``p_i(n)`` off the exact entries by interpolation."""
    s = op.shift
    coeffs = []
    limit = op.size if max_order is None else max_order
    for i in range(limit):
        pts = []
        for n in range(op.lo, op.hi + 1):
            row = n + s + i
            if op.is_exact(row, n) and op.floor_ok[n - op.lo]:
                pts.append((n, op.entry(row, n)))
        if len(pts) < 2:
            break
        poly = p_fit(pts)
        if poly is None:
            raise HypothesisViolated(f"offset {i} coefficients are not polynomial in n")
        coeffs.append(poly)
    return OperatorSymbol(op.q, s, coeffs)


def fractional_root(p_op: TruncatedOperator, p: int, window=None) -> TruncatedOperator:
    """``Q`` with unit leading part and ``Q^p = P``, evaluated on ``window``."""
    if p == 0:
        raise ValueError("p must be nonzero")
    window = p_op.window if window is None else tuple(window)
    sym = symbol_of(p_op)
    if not sym.coeffs or sym.coeffs[0] != (Fraction(1),):
        raise NotUnitLeading("P must map z^(b/q) to z^((b+p)/q) + higher order")
    root = sym.root(abs(p))
    if p < 0:
        root = root.inverse()
    return root.evaluate(window)


# -- the starred coefficient ------------------------------------------------


@dataclass
class StarReport:
    r: int
    s: int
    checked: list  # (n, expected, observed)
    clipped: list
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def expected_formula(self) -> str:
        r, s = self.r, self.s
        return f"-a^-1 * ((n + {r})/{r + s} + {Fraction(s, 2 * (r + s))})"


def verify_star_coefficient(f: PuiseuxSeries, window) -> StarReport:
    """Compare the degree ``1 + s/r`` correction of ``(-zetahat)^(r/(r+s))``
    with ``-a^-1 [(n + r)/(r+s) + s/(2(r+s))]`` on every unclipped monomial.

    For ``s = 0`` the expansion degenerates; there the check is
    ``z = (-zetahat) o (a + n + r)`` on each monomial.
    """
    # the constant term must survive, so work with f itself on its own grid
    r = f.min_ram()
    e0, a = f.leading()
    s = int(-e0 * r)
    if s < 0:
        raise HypothesisViolated("need ord(f) <= 0")
    q = r
    rep = f.with_ram(q)
    A = mult_operator(rep.shift(-1), window, q)
    B = derivation_operator(0, window, q)
    checked, clipped, bad = [], [], []
    if s == 0:
        neg_zetahat = inverse(A + B)
        shifted = neg_zetahat @ (identity(window, q).scale(a + r) + euler_index_operator(window, q))
        z_op = mult_operator(PuiseuxSeries.monomial(1, 1), window, q)
        for n in range(A.lo, A.hi + 1):
            row = n + q
            if shifted.is_exact(row, n) and z_op.is_exact(row, n):
                got = shifted.entry(row, n)
                checked.append((n, Fraction(1), got))
                if got != 1:
                    bad.append(n)
            else:
                clipped.append(n)
        return StarReport(r, s, checked, clipped, bad)
    P = (A + B).scale(1 / Fraction(a))
    if len(P.determined_columns()) < 2:
        # too few columns to read the symbol off
        return StarReport(r, s, [], list(range(A.lo, A.hi + 1)), [])
    Q = fractional_root(P, -(r + s))
    Y = power(Q, r)
    span = Fraction(A.hi - A.lo + 2 * (r + s), q)
    alg_series = pow_rat(rep.shift(-1).scale(1 / Fraction(a)), Fraction(-r, r + s), prec=1 + span)
    alg = mult_operator(alg_series, window, q)
    D = Y - alg
    for n in range(A.lo, A.hi + 1):
        rows = range(n + r, n + r + s + 1)
        if not all(D.is_exact(row, n) for row in rows) or not D.floor_ok[n - D.lo]:
            clipped.append(n)
            continue
        lower_ok = all(not D.entry(row, n) for row in rows[:-1])
        expected = -(Fraction(n + r, r + s) + Fraction(s, 2 * (r + s))) / a
        got = D.entry(n + r + s, n)
        checked.append((n, expected, got))
        if not lower_ok or got != expected:
            bad.append(n)
    return StarReport(r, s, checked, clipped, bad)


def verify_series_consistency(f: PuiseuxSeries, window, target_trunc=None) -> StarReport:
    """Feed the series coordinate ``z = x(zetahat)`` into the operators.

    ``zetahat = -(A+B)^-1`` gives ``zetahat^(1/(r+s)) = Q / y`` with ``Q`` the
    unit-leading ``-(r+s)``-th root of ``P`` and ``y`` the branch root used by
    the series solver.  Then ``sum_k c_k (Q/y)^k - z`` must vanish below
    degree ``1 + s/r`` and equal the starred coefficient there.
    """
    from .classes import CanonicalClass
    from .fourier import TransformKind, solve_coordinate

    # no reduction: dropped constants and positive terms would change x
    r = f.min_ram()
    cls = CanonicalClass(r, f.with_ram(r))
    e0, a = f.leading()
    s = int(-e0 * r)
    if s <= 0:
        raise HypothesisViolated("need ord(f) < 0")
    n_out = r + s
    if target_trunc is None:
        target_trunc = Fraction(window[1] - window[0] + 2 * n_out, r)
    x, y = solve_coordinate(cls, TransformKind.ZERO_INF, target_trunc=target_trunc, with_root=True)
    A = mult_operator(f.with_ram(r).shift(-1), window, r)
    B = derivation_operator(0, window, r)
    T = fractional_root((A + B).scale(1 / Fraction(a)), -n_out).scale(1 / Fraction(y))
    acc = mult_operator(PuiseuxSeries.monomial(1, 1), window, r).scale(-1)
    tk = identity(window, r)
    k = 0
    while Fraction(k, n_out) < x.trunc and k <= window[1] - window[0] + r + s:
        if k:
            tk = tk @ T
        ck = x.coeff(Fraction(k, n_out))
        if ck:
            acc = acc + tk.scale(ck)
        k += 1
    checked, clipped, bad = [], [], []
    for n in range(acc.lo, acc.hi + 1):
        rows = range(n + r, n + r + s + 1)
        # the sum over k is cut at the series truncation; rows past it are unknown
        cut = n + int(x.trunc * n_out) if x.trunc != INF else INF
        if (not all(acc.is_exact(row, n) and row < cut for row in rows)
                or not acc.floor_ok[n - acc.lo]):
            clipped.append(n)
            continue
        lower_ok = all(not acc.entry(row, n) for row in rows[:-1])
        expected = -(Fraction(n + r, r + s) + Fraction(s, 2 * (r + s))) / a
        got = acc.entry(n + r + s, n)
        checked.append((n, expected, got))
        if not lower_ok or got != expected:
            bad.append(n)
    return StarReport(r, s, checked, clipped, bad)

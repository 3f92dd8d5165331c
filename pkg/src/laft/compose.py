"""Composition, rational powers and compositional inversion.

Fractional exponents make composition branch dependent: ``outer(inner)`` with
``outer`` on the grid ``(1/q) Z`` needs a ``q``-th root of the leading
coefficient of ``inner``.  :func:`compose` takes that root explicitly
(``root=``) and otherwise uses the principal one; :func:`comp_inverse` returns
the root it solved with, so ``compose(j, x, root=r)`` reproduces the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import ZeroDivisor, ZeroLeadingExponent
from .series import INF, PuiseuxSeries, Var, as_var, unity_power


def pow_rat(f: PuiseuxSeries, e, prec=None, lead=None) -> PuiseuxSeries:
    """``f**e`` for rational ``e``; principal root unless ``lead`` is given."""
    return f.pow_series(Fraction(e), prec=prec, lead=lead)


def compose(outer: PuiseuxSeries, inner: PuiseuxSeries, prec=None, root=None) -> PuiseuxSeries:
    """Substitute ``inner`` for the variable of ``outer``.

    ``root`` is the chosen ``outer.ram``-th root of the leading coefficient of
    ``inner``; term ``c v**(k/q)`` contributes ``c * inner**(k/q)`` with leading
    coefficient ``root**k``.  The result lives in ``inner``'s variable and is
    exact below its ``trunc``.
    """
    field = inner.field
    if inner.is_zero():
        if any(e < 0 for e, _ in outer.items()):
            raise ZeroDivisor("negative power of a zero inner series")
        if inner.trunc != INF:
            raise ValueError("inner series has an unknown leading term")
        c0 = outer.coeff(0) if outer.lo < 0 < outer.trunc else field.zero
        return PuiseuxSeries.constant(c0, var=inner.var, field=field)
    inner_ord = inner.ord()
    if outer.trunc != INF and not inner_ord > 0:
        raise ValueError("an inexact outer series needs an inner series of positive order")
    if outer.lo != -INF:
        raise ValueError("outer series must be ordinary (lo = -inf)")
    q = outer.ram
    if root is None and q > 1:
        root = field.nth_root(inner.leading()[1], q)
    result = PuiseuxSeries((), var=inner.var, ram=inner.ram, field=field)
    for e, c in outer.items():
        if e == 0:
            result = result + PuiseuxSeries.constant(c, var=inner.var, field=field)
            continue
        lead = None
        if e.denominator != 1:
            lead = root ** int(e * q)
        result = result + pow_rat(inner, e, prec=prec, lead=lead).scale(c)
    if outer.trunc != INF:
        result = result.truncate(outer.trunc * inner_ord)
    if prec is not None:
        result = result.truncate(prec)
    return result


def inner_trunc_for(outer: PuiseuxSeries, inner_ord, target) -> Fraction:
    """Truncation an inner series of order ``inner_ord`` needs so that
    ``compose(outer, inner)`` is exact below ``target``."""
    emin = min((e for e, _ in outer.items()), default=Fraction(0))
    return Fraction(target) + Fraction(inner_ord) - emin * Fraction(inner_ord)


@dataclass(frozen=True)
class InverseData:
    """Shape of a compositional inverse of ``j = a v**(p/q) + ...``."""

    p: int
    q: int
    sign: int          # +1: solve j(x) = w, -1: solve j(x) = 1/w
    order: Fraction    # exponent L of the leading term of x in w
    var: Var           # output variable w
    root: object       # q-th root of the leading coefficient of x

    @property
    def ram(self) -> int:
        return abs(self.p)


def _inverse_data(j: PuiseuxSeries, value_var=None, twist: int = 0) -> InverseData:
    l, a = j.leading()
    if l == 0:
        raise ZeroLeadingExponent("leading exponent is zero; no compositional inverse")
    field = j.field
    q = j.ram
    p = int(l * q)
    sign = 1 if p > 0 else -1
    value_var = j.var if value_var is None else as_var(value_var)
    out_var = value_var if sign > 0 else value_var.reciprocal
    # y**p = 1/a, y is the branch of x**(1/q)
    y = field.pow_frac(1 / a, Fraction(1, p))
    if twist:
        y = y * unity_power(field, abs(p), twist)
    return InverseData(p, q, sign, Fraction(q, abs(p)), out_var, y)


def comp_inverse(
    j: PuiseuxSeries,
    prec=None,
    value_var=None,
    twist: int = 0,
    with_root: bool = False,
    order: int = 10,
):
    """Compositional inverse of ``j = a v**(p/q) + ...`` by Newton iteration.

    Returns ``x``, a series in ``w**(1/|p|)`` with ``j(x) = w`` (``p > 0``) or
    ``j(x) = 1/w`` (``p < 0``, ``w`` the reciprocal of ``value_var``), exact
    below ``prec``.  Without ``prec`` the first ``order`` terms are computed.
    ``twist`` picks the non-principal branch ``t -> eta**twist t``.  With
    ``with_root`` the pair ``(x, root)`` is returned, ``root`` being the branch
    to hand to :func:`compose`.
    """
    data = _inverse_data(j, value_var, twist)
    field = j.field
    N = data.ram
    L = data.order
    if prec is None:
        prec = L + Fraction(order, N)
    prec = Fraction(prec)
    if j.trunc != INF:
        prec = min(prec, j.trunc * L - data.sign + L)
    rel_target = prec - L
    w_target = PuiseuxSeries.monomial(1, data.sign, var=data.var, field=field)
    x = PuiseuxSeries.monomial(data.root ** data.q, L, var=data.var, field=field, ram=N)
    deriv = j.derivative()
    m = Fraction(1, N)
    rounds = 0
    while True:
        if m >= rel_target:
            residual = compose(j, x, prec=data.sign + rel_target, root=data.root) - w_target
            if residual.is_zero() and residual.trunc >= data.sign + rel_target:
                break
            rounds += 1
            if rounds > 4:
                raise ArithmeticError("Newton iteration for the inverse did not settle")
            m = rel_target / 2
        m2 = min(2 * m, rel_target)
        r = compose(j, x, prec=data.sign + m2, root=data.root) - w_target
        d = compose(deriv, x, prec=data.sign - L + m2 - m, root=data.root)
        dinv = d.pow_series(-1, prec=L + m2 - data.sign - m)
        x = x - r * dinv
        x = PuiseuxSeries(
            [(e, c) for e, c in x.items() if e < L + m2], var=data.var, ram=N, field=field
        )
        m = m2
    x = x.with_trunc(prec).with_ram(N)
    return (x, data.root) if with_root else x


def _reversion(h: PuiseuxSeries, n: int) -> PuiseuxSeries:
    """Reversion of a power series ``h = h1 t + ...`` to ``n`` terms, solved
    one coefficient at a time (kept independent of the Newton solver)."""
    field = h.field
    h1 = h.coeff(1)
    g = PuiseuxSeries.monomial(1 / h1, 1, var=h.var, field=field)
    t = PuiseuxSeries.monomial(1, 1, var=h.var, field=field)
    for k in range(2, n + 1):
        err = compose(h.truncate(k + 1), g, prec=k + 1) - t
        ck = err.coeff(k)
        if not field.is_zero(ck):
            g = g - PuiseuxSeries.monomial(ck / h1, k, var=h.var, field=field)
    return g.with_trunc(n + 1)


def comp_inverse_conjugation(j: PuiseuxSeries, prec, value_var=None, twist: int = 0):
    """The same inverse built as ``x = (h^{<-1>}(w**(1/p)))**q`` with
    ``h = (j(t**q))**(1/p)``; used to cross-check :func:`comp_inverse`."""
    data = _inverse_data(j, value_var, twist)
    field = j.field
    q, p, N, L = data.q, data.p, data.ram, data.order
    t = Var.Z
    jq = PuiseuxSeries([(int(e * q), c) for e, c in j.items()], var=t, field=field,
                       trunc=j.trunc * q)
    # x exact below prec needs x**(1/q) to relative order (prec - L) * N
    nterms = int((Fraction(prec) - L) * N) + 1
    h = pow_rat(jq, Fraction(1, p), prec=nterms + 1, lead=1 / data.root)
    hinv = _reversion(h, nterms)
    y = PuiseuxSeries([(Fraction(e.numerator, N), c) for e, c in hinv.items()],
                      var=data.var, ram=N, field=field, trunc=Fraction(nterms + 1, N))
    x = y.pow_int(q, prec=prec)
    return x.with_ram(N)


def lagrange_check(h: PuiseuxSeries, r: int, s: int):
    """Both sides of ``(r+s) [z^(r+s)] (h^<-1>)^r = r [z^-r] h^-(r+s)``.

    The left side goes through :func:`comp_inverse`, the right side only
    through a negative power of ``h``.
    """
    if r < 1 or s < 0:
        raise ValueError("need r >= 1 and s >= 0")
    if h.ram != 1 or h.ord() != 1:
        raise ValueError("h must be a power series with h(0) = 0 and h'(0) != 0")
    field = h.field
    x = comp_inverse(h, prec=r + s + 1)
    lhs = (r + s) * x.pow_int(r, prec=r + s + 1).coeff(r + s)
    rhs = r * h.pow_series(-(r + s), prec=-r + 1).coeff(-r)
    return field.coerce(lhs), field.coerce(rhs)

"""Truncated Puiseux series over a coefficient field.

A :class:`PuiseuxSeries` is a finite set of terms ``c * v**e`` with exponents
on the grid ``(1/ram) Z`` together with an exactness window ``(lo, trunc)``:
every coefficient with ``lo < e < trunc`` is known exactly (zero if absent),
nothing is claimed outside.  Ordinary series have ``lo = -inf``; only
:meth:`PuiseuxSeries.substitute_reciprocal` produces a finite ``lo``.

Every operation propagates ``trunc`` conservatively, so a result never claims
more than its inputs determine.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from math import lcm

from . import kernels
from .errors import IndeterminateOrder, VariableMismatch, ZeroDivisor
from .field import QQ

INF = math.inf


class Var(enum.Enum):
    """Coordinate tags: ``z``/``zeta`` on the source side, hats on the dual."""

    Z = "z"
    ZETA = "zeta"
    ZHAT = "zhat"
    ZETAHAT = "zetahat"

    @property
    def reciprocal(self) -> "Var":
        return _RECIPROCAL[self]

    @property
    def at_infinity(self) -> bool:
        return self in (Var.ZETA, Var.ZETAHAT)

    @property
    def hatted(self) -> bool:
        return self in (Var.ZHAT, Var.ZETAHAT)

    @property
    def dual(self) -> "Var":
        """Same point type on the other side of the Fourier transform."""
        return _DUAL[self]

    def __str__(self):
        return self.value


_RECIPROCAL = {Var.Z: Var.ZETA, Var.ZETA: Var.Z, Var.ZHAT: Var.ZETAHAT, Var.ZETAHAT: Var.ZHAT}
_DUAL = {Var.Z: Var.ZHAT, Var.ZHAT: Var.Z, Var.ZETA: Var.ZETAHAT, Var.ZETAHAT: Var.ZETA}


def as_var(v) -> Var:
    return v if isinstance(v, Var) else Var(v)


def _frac(x):
    if x == INF or x == -INF:
        return x
    return Fraction(x)


def _ceil(x) -> int:
    return math.ceil(x)


def unity_power(field, n: int, m: int):
    """``eta**m`` for the primitive ``n``-th root of unity ``eta``.

    Values that are +-1 are produced exactly, so the rational field can twist
    whenever no irrational root of unity is actually involved.
    """
    m %= n
    if m == 0:
        return field.one
    if 2 * m == n:
        return -field.one
    return field.root_of_unity(n) ** m


class PuiseuxSeries:
    __slots__ = ("field", "var", "ram", "_terms", "trunc", "lo")

    def __init__(self, terms=(), var=Var.Z, ram=None, trunc=INF, field=QQ, lo=-INF):
        var = as_var(var)
        trunc = _frac(trunc)
        lo = _frac(lo)
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for e, c in items:
            e = Fraction(e)
            if not lo < e < trunc:
                continue
            c = field.coerce(c)
            if field.is_zero(c):
                continue
            clean[e] = clean[e] + c if e in clean else c
        clean = {e: c for e, c in clean.items() if not field.is_zero(c)}
        if ram is None:
            ram = 1
            for e in clean:
                ram = lcm(ram, e.denominator)
        elif ram < 1:
            raise ValueError("ramification must be positive")
        for e in clean:
            if ram % e.denominator:
                raise ValueError(f"exponent {e} is not on the 1/{ram} grid")
        self.field = field
        self.var = var
        self.ram = int(ram)
        self._terms = tuple(sorted(clean.items()))
        self.trunc = trunc
        self.lo = lo

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, coeff, exp, var=Var.Z, field=QQ, ram=None, trunc=INF):
        exp = Fraction(exp)
        if ram is None:
            ram = exp.denominator
        return cls({exp: coeff}, var=var, ram=ram, field=field, trunc=trunc)

    @classmethod
    def constant(cls, c, var=Var.Z, field=QQ, trunc=INF):
        return cls({0: c}, var=var, field=field, trunc=trunc)

    def _new(self, terms, ram=None, trunc=None, var=None, lo=None):
        return PuiseuxSeries(
            terms,
            var=self.var if var is None else var,
            ram=self.ram if ram is None else ram,
            trunc=self.trunc if trunc is None else trunc,
            field=self.field,
            lo=self.lo if lo is None else lo,
        )

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        """No stored terms (the series may still be unknown above ``trunc``)."""
        return not self._terms

    def coeff(self, e):
        e = Fraction(e)
        if not self.lo < e < self.trunc:
            from .errors import InsufficientPrecision

            raise InsufficientPrecision(f"coefficient of exponent {e} is not known")
        for ee, c in self._terms:
            if ee == e:
                return c
        return self.field.zero

    def ord(self):
        if self.lo != -INF:
            raise IndeterminateOrder("series is only known above a finite lower bound")
        if self._terms:
            return self._terms[0][0]
        if self.trunc == INF or self.trunc > 0:
            return INF
        raise IndeterminateOrder("zero series with trunc <= 0 has no known leading term")

    def valuation_bound(self):
        """A lower bound for the true order: first stored exponent or ``trunc``."""
        if self._terms:
            return self._terms[0][0]
        return self.trunc

    def leading(self):
        """``(exponent, coefficient)`` of the leading term."""
        if self.lo != -INF:
            raise IndeterminateOrder("series is only known above a finite lower bound")
        if not self._terms:
            if self.trunc == INF:
                raise ZeroDivisor("the zero series has no leading term")
            raise IndeterminateOrder("leading term lies beyond the truncation")
        return self._terms[0]

    def min_ram(self) -> int:
        q = 1
        for e, _ in self._terms:
            q = lcm(q, e.denominator)
        return q

    # -- structural -------------------------------------------------------

    def _check(self, other: "PuiseuxSeries"):
        if not isinstance(other, PuiseuxSeries):
            raise TypeError("expected a PuiseuxSeries")
        if other.var is not self.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")
        if other.field != self.field:
            raise ValueError("series over different coefficient fields")

    def truncate(self, t) -> "PuiseuxSeries":
        return self._new(self._terms, trunc=min(self.trunc, _frac(t)))

    def with_trunc(self, t) -> "PuiseuxSeries":
        """Declare a new truncation (caller guarantees correctness below it)."""
        return self._new([(e, c) for e, c in self._terms if e < t], trunc=_frac(t))

    def with_ram(self, q: int) -> "PuiseuxSeries":
        return self._new(self._terms, ram=q)

    def rename(self, var) -> "PuiseuxSeries":
        return self._new(self._terms, var=as_var(var))

    def agrees_below(self, other: "PuiseuxSeries", t) -> bool:
        """Termwise equality (field tolerance) of all exponents below ``t``."""
        self._check(other)
        a = dict(self._terms)
        b = dict(other._terms)
        zero = self.field.zero
        for e in set(a) | set(b):
            if e < t and not self.field.eq(a.get(e, zero), b.get(e, zero)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if other.var is not self.var or other.field != self.field:
            return False
        if other.trunc != self.trunc or other.lo != self.lo:
            return False
        if len(other._terms) != len(self._terms):
            return False
        return all(
            e1 == e2 and self.field.eq(c1, c2)
            for (e1, c1), (e2, c2) in zip(self._terms, other._terms)
        )

    __hash__ = None

    def __repr__(self):
        return f"PuiseuxSeries({self})"

    def __str__(self):
        from .exprio import format_series

        return format_series(self)

    # -- ring operations --------------------------------------------------

    def __neg__(self):
        return self._new([(e, -c) for e, c in self._terms])

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other, var=self.var, field=self.field)
        self._check(other)
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc[e] + c if e in acc else c
        return PuiseuxSeries(
            acc,
            var=self.var,
            ram=lcm(self.ram, other.ram),
            trunc=min(self.trunc, other.trunc),
            field=self.field,
            lo=max(self.lo, other.lo),
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other, var=self.var, field=self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PuiseuxSeries":
        c = self.field.coerce(c)
        return self._new([(e, c * v) for e, v in self._terms])

    def shift(self, e) -> "PuiseuxSeries":
        """Multiply by the monomial ``v**e``."""
        e = Fraction(e)
        return self._new(
            [(x + e, c) for x, c in self._terms],
            ram=lcm(self.ram, e.denominator),
            trunc=self.trunc + e,
            lo=self.lo + e,
        )

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        self._check(other)
        if self.lo != -INF or other.lo != -INF:
            raise ValueError("multiplication needs ordinary (lo = -inf) series")
        trunc = min(self.trunc + other.valuation_bound(), other.trunc + self.valuation_bound())
        q = lcm(self.ram, other.ram)
        if not self._terms or not other._terms:
            return PuiseuxSeries((), var=self.var, ram=q, trunc=trunc, field=self.field)
        start_f = int(self._terms[0][0] * q)
        start_g = int(other._terms[0][0] * q)
        a = _dense(self._terms, q, start_f)
        b = _dense(other._terms, q, start_g)
        n = len(a) + len(b) - 1
        if trunc != INF:
            n = min(n, _ceil(trunc * q) - start_f - start_g)
        if n <= 0:
            return PuiseuxSeries((), var=self.var, ram=q, trunc=trunc, field=self.field)
        c = _convolve(self.field, a, b, n)
        base = start_f + start_g
        return PuiseuxSeries(
            [(Fraction(base + k, q), x) for k, x in enumerate(c) if x],
            var=self.var,
            ram=q,
            trunc=trunc,
            field=self.field,
        )

    __rmul__ = __mul__

    def mul_inverse(self, prec=None) -> "PuiseuxSeries":
        return self.pow_series(-1, prec)

    def __pow__(self, m):
        return self.pow_int(m)

    def pow_int(self, m: int, prec=None) -> "PuiseuxSeries":
        m = int(m)
        if m == 0:
            return PuiseuxSeries.constant(1, var=self.var, field=self.field).with_ram(self.ram)
        if m > 0 and self.trunc == INF and prec is None:
            result, base = None, self
            while m:
                if m & 1:
                    result = base if result is None else result * base
                m >>= 1
                if m:
                    base = base * base
            return result
        return self.pow_series(m, prec)

    def pow_series(self, e, prec=None, lead=None) -> "PuiseuxSeries":
        """``self**e`` for rational ``e`` via the leading-term factorisation.

        ``self = a v**l (1 + h)`` with ``ord h > 0``; the result is
        ``a**e v**(l e) (1 + h)**e`` with the principal root of ``a``.  The
        relative precision of ``self`` is preserved; ``prec`` (an absolute
        exponent) caps the result and is mandatory when the expansion would
        otherwise be infinite.  ``lead`` overrides the value used for
        ``a**e`` when a non-principal branch is wanted.
        """
        e = Fraction(e)
        if self.lo != -INF:
            raise ValueError("power needs an ordinary (lo = -inf) series")
        if not self._terms:
            if e < 0:
                if self.trunc == INF:
                    raise ZeroDivisor("cannot invert the zero series")
                raise IndeterminateOrder("leading term lies beyond the truncation")
            if e == 0:
                return PuiseuxSeries.constant(1, var=self.var, field=self.field)
            t = self.trunc * e if self.trunc != INF else INF
            return self._new((), trunc=t)
        field = self.field
        l, a0 = self._terms[0]
        le = l * e
        q = lcm(self.ram, le.denominator)
        rel = self.trunc - l
        trunc = le + rel
        if prec is not None:
            trunc = min(trunc, _frac(prec))
        p0 = field.pow_frac(a0, e) if lead is None else field.coerce(lead)
        if len(self._terms) == 1 and self.trunc == INF and prec is None:
            return PuiseuxSeries({le: p0}, var=self.var, ram=q, field=field)
        if trunc == INF:
            if e.denominator == 1 and e >= 0 and lead is None:
                return self.pow_int(int(e))
            raise ValueError("an absolute precision is required for this power")
        n = _ceil((trunc - le) * q)
        start = int(l * self.ram)
        step = q // self.ram
        dense = _dense(self._terms, self.ram, start)
        # spread onto the finer grid q
        a = [0] * ((len(dense) - 1) * step + 1)
        for i, c in enumerate(dense):
            a[i * step] = c
        if n <= 0:
            return PuiseuxSeries((), var=self.var, ram=q, trunc=trunc, field=field)
        ee = field.coerce(e)
        p = kernels.series_pow(a, ee, p0, n)
        return PuiseuxSeries(
            [(le + Fraction(k, q), x) for k, x in enumerate(p) if x],
            var=self.var,
            ram=q,
            trunc=trunc,
            field=field,
        )

    def derivative(self) -> "PuiseuxSeries":
        """d/dv, termwise."""
        return self._new(
            [(e - 1, e * c) for e, c in self._terms if e != 0],
            trunc=self.trunc - 1,
            lo=self.lo - 1,
        )

    def substitute_reciprocal(self) -> "PuiseuxSeries":
        """Rewrite in ``w = 1/v``: ``c v**e`` becomes ``c w**(-e)``.

        The exactness window ``(lo, trunc)`` flips to ``(-trunc, -lo)``.
        """
        return PuiseuxSeries(
            [(-e, c) for e, c in self._terms],
            var=self.var.reciprocal,
            ram=self.ram,
            trunc=-self.lo,
            lo=-self.trunc,
            field=self.field,
        )

    def galois_twist(self, k: int) -> "PuiseuxSeries":
        """Apply ``v**(1/ram) -> eta**k v**(1/ram)`` with ``eta`` primitive."""
        q = self.ram
        return self._new(
            [(e, c * unity_power(self.field, q, int(e * q) * k)) for e, c in self._terms]
        )


def _dense(terms, q, start):
    last = int(terms[-1][0] * q)
    out = [0] * (last - start + 1)
    for e, c in terms:
        out[int(e * q) - start] = c
    return out


def _convolve(field, a, b, n):
    if field.exact:
        da = lcm(*(x.denominator for x in a if x)) if any(a) else 1
        db = lcm(*(x.denominator for x in b if x)) if any(b) else 1
        ia = [int(x * da) for x in a]
        ib = [int(x * db) for x in b]
        d = da * db
        return [Fraction(x, d) for x in kernels.convolve(ia, ib, n)]
    return kernels.convolve(a, b, n)


def zero(var=Var.Z, field=QQ, trunc=INF) -> PuiseuxSeries:
    return PuiseuxSeries((), var=var, field=field, trunc=trunc)

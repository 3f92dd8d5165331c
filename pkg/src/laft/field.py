"""Coefficient fields.

Two backends stand in for the algebraically closed ground field:

* :class:`RationalField` -- exact :class:`fractions.Fraction` arithmetic.  Roots
  are available only when they happen to be rational.
* :class:`ComplexField` -- mpmath complex numbers at a fixed binary precision,
  carried by a private :class:`mpmath.ctx_mp.MPContext` so that two fields with
  different precisions never interfere.

Scalars are plain Python values (``Fraction`` or ``mpc``); the field object is
passed alongside them and knows how to compare, root and print them.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from numbers import Rational

import gmpy2
from mpmath.ctx_mp import MPContext

from .errors import ExprSyntaxError, RootUnavailable

DEFAULT_PREC = 256


def _exact_root(x: Fraction, n: int) -> Fraction | None:
    if x < 0:
        if n % 2 == 0:
            return None
        r = _exact_root(-x, n)
        return None if r is None else -r
    num, ok_num = gmpy2.iroot(gmpy2.mpz(x.numerator), n)
    den, ok_den = gmpy2.iroot(gmpy2.mpz(x.denominator), n)
    if ok_num and ok_den:
        return Fraction(int(num), int(den))
    return None


class RationalField:
    """Exact rationals."""

    exact = True
    name = "rational"

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into the rational field")

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def to_fraction(self, x) -> Fraction | None:
        return x

    def nth_root(self, x, n: int) -> Fraction:
        if n < 1:
            raise ValueError("root index must be positive")
        r = _exact_root(Fraction(x), n)
        if r is None:
            raise RootUnavailable(
                f"{self.format(x)} has no rational {n}-th root "
                "(try the complex backend)"
            )
        return r

    def root_of_unity(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("order must be positive")
        if n == 1:
            return self.one
        if n == 2:
            return -self.one
        raise RootUnavailable(
            f"no primitive {n}-th root of unity in the rational field "
            "(try the complex backend)"
        )

    def pow_frac(self, x, e: Fraction):
        """``x**e`` as the principal root raised to the numerator."""
        e = Fraction(e)
        if e.denominator == 1:
            return x ** e.numerator
        return self.nth_root(x, e.denominator) ** e.numerator

    def sort_key(self, x):
        return (x, 0)

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ExprSyntaxError(f"bad rational literal {text!r}", 0) from exc


class ComplexField:
    """Complex numbers at ``prec`` bits.

    ``eps`` is the absolute/relative tolerance used for equality and for
    pruning cancelled coefficients; it defaults to ``2**(-prec/2)``.
    """

    exact = False
    name = "complex"

    def __init__(self, prec: int | None = None, eps=None):
        if prec is None:
            prec = int(os.environ.get("LAFT_PREC", DEFAULT_PREC))
        self.prec = prec
        self.ctx = ctx = MPContext()
        ctx.prec = prec
        self.eps = ctx.mpf(2) ** (-(prec // 2)) if eps is None else ctx.mpf(eps)
        self.zero = ctx.mpc(0)
        self.one = ctx.mpc(1)

    def __repr__(self):
        return f"ComplexField(prec={self.prec})"

    def __eq__(self, other):
        return isinstance(other, ComplexField) and other.prec == self.prec

    def __hash__(self):
        return hash(("ComplexField", self.prec))

    def coerce(self, x):
        ctx = self.ctx
        if isinstance(x, Fraction):
            return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, tuple):
            return ctx.mpc(*(self.coerce(p).real for p in x))
        return ctx.mpc(x)

    def is_zero(self, x) -> bool:
        return abs(x) <= self.eps

    def eq(self, x, y) -> bool:
        scale = max(1, abs(x), abs(y))
        return abs(x - y) <= self.eps * scale

    def to_fraction(self, x):
        return None

    def nth_root(self, x, n: int):
        if n < 1:
            raise ValueError("root index must be positive")
        if n == 1:
            return self.ctx.mpc(x)
        return self.ctx.root(self.ctx.mpc(x), n)

    def root_of_unity(self, n: int):
        if n < 1:
            raise ValueError("order must be positive")
        ctx = self.ctx
        t = ctx.mpf(2) / n
        return ctx.mpc(ctx.cospi(t), ctx.sinpi(t))

    def pow_frac(self, x, e: Fraction):
        e = Fraction(e)
        if e.denominator == 1:
            return self.ctx.mpc(x) ** e.numerator
        return self.nth_root(x, e.denominator) ** e.numerator

    def sort_key(self, x):
        return (x.real, x.imag)

    def format(self, x) -> str:
        ctx = self.ctx
        digits = ctx.dps + 3
        return f"({ctx.nstr(x.real, digits)},{ctx.nstr(x.imag, digits)})"

    _complex_re = re.compile(r"^\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)$")

    def parse(self, text: str):
        text = text.strip()
        ctx = self.ctx
        try:
            m = self._complex_re.match(text)
            if m:
                return ctx.mpc(self._real(m.group(1)), self._real(m.group(2)))
            return ctx.mpc(self._real(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ExprSyntaxError(f"bad complex literal {text!r}", 0) from exc

    def _real(self, text: str):
        if "/" in text:
            fr = Fraction(text)
            return self.ctx.mpf(fr.numerator) / fr.denominator
        return self.ctx.mpf(text)


def make_field(backend: str = "rational", prec: int | None = None):
    if backend == "rational":
        return RationalField()
    if backend == "complex":
        return ComplexField(prec)
    raise ValueError(f"unknown backend {backend!r}")


QQ = RationalField()

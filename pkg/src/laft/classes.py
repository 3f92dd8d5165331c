"""Canonical classes ``R_q`` and connections as direct sums of them.

A class is a Puiseux polynomial with exponents ``<= 0`` on the ``1/q`` grid,
taken modulo ``(1/q) Z`` in the constant term and modulo the Galois action
``v**(1/q) -> eta v**(1/q)``.  ``q`` is carried explicitly; it need not be
minimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InsufficientPrecision,
    NotIrreducible,
    RootUnavailable,
    VariableMismatch,
    WrongPoint,
)
from .series import INF, PuiseuxSeries

COSET_WINDOW = 64


@dataclass(frozen=True, eq=False)
class CanonicalClass:
    q: int
    rep: PuiseuxSeries

    @property
    def var(self):
        return self.rep.var

    @property
    def field(self):
        return self.rep.field

    def constant(self):
        return self.rep.coeff(0)

    def nonconstant(self):
        return [(e, c) for e, c in self.rep.items() if e != 0]

    def slope(self) -> Fraction:
        return slope(self)

    def __eq__(self, other):
        if not isinstance(other, CanonicalClass):
            return NotImplemented
        return classes_equal(self, other)

    __hash__ = None

    def __str__(self):
        return str(display_rep(self))

    def __repr__(self):
        return f"CanonicalClass(q={self.q}, rep={self.rep})"


def _reduce_constant(c: Fraction, q: int) -> Fraction:
    return c - Fraction(math.floor(c * q), q)


def normalize(f: PuiseuxSeries, q: int | None = None) -> CanonicalClass:
    """Project ``f`` to ``R_q``: drop positive exponents, reduce a rational
    constant into ``[0, 1/q)``."""
    if q is None:
        q = f.ram
    if q < 1:
        raise ValueError("q must be positive")
    if not f.trunc > 0:
        raise InsufficientPrecision("series is not known through exponent 0")
    field = f.field
    terms = {}
    for e, c in f.items():
        if e * q != int(e * q):
            raise ValueError(f"exponent {e} is not on the 1/{q} grid")
        if e < 0:
            terms[e] = c
        elif e == 0:
            fr = field.to_fraction(c)
            terms[e] = _reduce_constant(fr, q) if fr is not None else c
    rep = PuiseuxSeries(terms, var=f.var, ram=q, field=field)
    return CanonicalClass(q, rep)


def galois_twist(c: CanonicalClass, k: int) -> CanonicalClass:
    """Coefficient of ``v**(n/q)`` times ``eta**(n k)``."""
    return CanonicalClass(c.q, c.rep.with_ram(c.q).galois_twist(k))


def _constants_congruent(field, c1, c2, q: int, window: int) -> bool:
    d = c1 - c2
    fr = field.to_fraction(d)
    if fr is not None:
        return (fr * q).denominator == 1
    t = int(field.ctx.nint(d.real * q))
    if abs(t) > window:
        return False
    return field.eq(d, field.coerce(Fraction(t, q)))


def classes_equal(c1: CanonicalClass, c2: CanonicalClass, window: int = COSET_WINDOW) -> bool:
    """Same ``q`` and some Galois twist of ``c1`` matches ``c2`` termwise,
    constants compared modulo ``(1/q) Z``."""
    if c1.var is not c2.var:
        raise VariableMismatch(f"{c1.var} vs {c2.var}")
    if c1.q != c2.q:
        return False
    field = c1.field
    target = dict(c2.nonconstant())
    if not _constants_congruent(field, c1.constant(), c2.constant(), c1.q, window):
        return False
    for k in range(c1.q):
        try:
            tw = galois_twist(c1, k)
        except RootUnavailable:
            # an irrational twist cannot equal a rational representative
            continue
        mine = dict(tw.nonconstant())
        if all(
            field.eq(mine.get(e, field.zero), target.get(e, field.zero))
            for e in set(mine) | set(target)
        ):
            return True
    return False


def is_irreducible(c: CanonicalClass) -> bool:
    g = c.q
    for e, _ in c.nonconstant():
        g = math.gcd(g, int(e * c.q))
    return g == 1


def slope(c: CanonicalClass) -> Fraction:
    if not c.rep.items():
        return Fraction(0)
    return max(Fraction(0), -c.rep.ord())


def is_zero_class(c: CanonicalClass) -> bool:
    if c.nonconstant():
        return False
    return _constants_congruent(c.field, c.constant(), c.field.zero, c.q, COSET_WINDOW)


def display_rep(c: CanonicalClass) -> PuiseuxSeries:
    """Lexicographically least computable twist (display only)."""
    field = c.field
    best, best_key = c.rep, None
    for k in range(c.q):
        try:
            rep = galois_twist(c, k).rep
        except RootUnavailable:
            continue
        key = [field.sort_key(x) for _, x in rep.items()]
        if best_key is None or key < best_key:
            best, best_key = rep, key
    return best


@dataclass(frozen=True)
class ConnectionObject:
    """Direct sum of ``E_f (x) J_m`` over (class, Jordan size) pairs."""

    summands: tuple

    def __post_init__(self):
        summands = tuple((c, int(m)) for c, m in self.summands)
        object.__setattr__(self, "summands", summands)
        if not summands:
            raise ValueError("a connection needs at least one summand")
        var = summands[0][0].var
        for i, (c, m) in enumerate(summands):
            if m < 1:
                raise ValueError(f"summand {i}: Jordan size must be positive")
            if c.var is not var:
                raise VariableMismatch(f"summand {i}: {c.var} vs {var}")
            if not is_irreducible(c):
                raise NotIrreducible(f"summand {i}: class is not in R°_{c.q}")

    @property
    def var(self):
        return self.summands[0][0].var

    def __len__(self):
        return len(self.summands)


def in_slope_subcategory(e: ConnectionObject, which: str) -> bool:
    if not e.var.at_infinity:
        raise WrongPoint(f"slope subcategories live at infinity, got {e.var}")
    if which == "<1":
        return all(slope(c) < 1 for c, _ in e.summands)
    if which == ">1":
        return all(slope(c) > 1 for c, _ in e.summands)
    raise ValueError("which must be '<1' or '>1'")


def has_horizontal_sections(e: ConnectionObject) -> bool:
    return any(is_zero_class(c) for c, _ in e.summands)

"""Local Fourier transforms of irreducible connections ``E_f``.

All three transforms share one recipe.  Write ``zhat`` (the dual coordinate at
zero) as a series ``j`` in the source coordinate, invert it to express the
source coordinate in the target coordinate, substitute into ``f``, and add the
constant correction:

=========  ===========  =================  ===========================
kind       source       ``j``              ``g``
=========  ===========  =================  ===========================
0-inf      ``z``        ``-f(z)/z``        ``f + s/(2(r+s))``, q=r+s
inf-0      ``zeta``     ``zeta f(zeta)``   ``-f + s/(2(r-s))``, q=r-s
inf-inf    ``zeta``     ``zeta f(zeta)``   ``-f + s/(2(s-r))``, q=s-r
=========  ===========  =================  ===========================

with ``r`` the ramification carried by the class and ``ord f = -s/r``.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .classes import (
    CanonicalClass,
    ConnectionObject,
    has_horizontal_sections,
    is_irreducible,
    is_zero_class,
    normalize,
)
from .compose import comp_inverse, compose, inner_trunc_for, _inverse_data
from .errors import (
    DomainError,
    InsufficientPrecision,
    NotIrreducible,
    SlopeViolation,
    WrongPoint,
    ZeroClass,
)
from .series import PuiseuxSeries


class TransformKind(enum.Enum):
    ZERO_INF = "0-inf"
    INF_ZERO = "inf-0"
    INF_INF = "inf-inf"

    def __str__(self):
        return self.value


def as_kind(kind) -> TransformKind:
    return kind if isinstance(kind, TransformKind) else TransformKind(kind)


def class_data(f: CanonicalClass) -> tuple[int, int]:
    """``(r, s)`` with ``r`` the carried ramification and ``ord f = -s/r``."""
    r = f.q
    neg = [e for e, _ in f.rep.items() if e < 0]
    s = -int(min(neg) * r) if neg else 0
    return r, s


def output_ramification(kind, r: int, s: int) -> int:
    kind = as_kind(kind)
    if kind is TransformKind.ZERO_INF:
        return r + s
    if kind is TransformKind.INF_ZERO:
        return r - s
    return s - r


def check_domain(f: CanonicalClass, kind) -> tuple[int, int]:
    kind = as_kind(kind)
    if kind is TransformKind.ZERO_INF and f.var.at_infinity:
        raise WrongPoint(f"0-inf needs a coordinate at zero, got {f.var}")
    if kind is not TransformKind.ZERO_INF and not f.var.at_infinity:
        raise WrongPoint(f"{kind} needs a coordinate at infinity, got {f.var}")
    if is_zero_class(f):
        raise ZeroClass("the zero class has horizontal sections")
    if not is_irreducible(f):
        raise NotIrreducible(f"class is not in R°_{f.q}")
    r, s = class_data(f)
    if kind is TransformKind.INF_ZERO and not s < r:
        raise SlopeViolation(f"inf-0 needs slope < 1, got {Fraction(s, r)}")
    if kind is TransformKind.INF_INF and not s > r:
        raise SlopeViolation(f"inf-inf needs slope > 1, got {Fraction(s, r)}")
    return r, s


def _j_series(f: CanonicalClass, kind: TransformKind) -> PuiseuxSeries:
    rep = f.rep.with_ram(f.q)
    if kind is TransformKind.ZERO_INF:
        return -rep.shift(-1)
    return rep.shift(1)


def _value_var(f: CanonicalClass, kind: TransformKind):
    if kind is TransformKind.ZERO_INF:
        return f.var.dual
    return f.var.dual.reciprocal


def default_target(f: CanonicalClass, kind) -> Fraction:
    """Truncation making every exponent <= 0 of the transform exact."""
    kind = as_kind(kind)
    r, s = class_data(f)
    n_out = output_ramification(kind, r, s)
    data = _inverse_data(_j_series(f, kind), _value_var(f, kind))
    return inner_trunc_for(f.rep, data.order, Fraction(1, n_out))


def solve_coordinate(f: CanonicalClass, kind, target_trunc=None, twist: int = 0,
                     with_root: bool = False):
    """Source coordinate as a series in the target coordinate.

    0-inf gives ``z`` in ``zetahat**(1/(r+s))``, inf-0 gives ``zeta`` in
    ``zhat**(1/(r-s))``, inf-inf gives ``zeta`` in ``zetahat**(1/(s-r))``.
    """
    kind = as_kind(kind)
    check_domain(f, kind)
    if target_trunc is None:
        target_trunc = default_target(f, kind)
    j = _j_series(f, kind)
    return comp_inverse(j, prec=target_trunc, value_var=_value_var(f, kind),
                        twist=twist, with_root=with_root)


def transform_series(f: CanonicalClass, kind, target_trunc=None, twist: int = 0) -> PuiseuxSeries:
    """The transform before projection to ``R_q`` (constant not reduced)."""
    kind = as_kind(kind)
    r, s = check_domain(f, kind)
    n_out = output_ramification(kind, r, s)
    x, root = solve_coordinate(f, kind, target_trunc, twist=twist, with_root=True)
    sub = compose(f.rep.with_ram(f.q), x, root=root)
    correction = Fraction(s, 2 * n_out)
    g = sub + correction if kind is TransformKind.ZERO_INF else -sub + correction
    if not g.trunc > 0:
        raise InsufficientPrecision(f"transform only exact below {g.trunc}")
    return g.with_ram(n_out)


def fourier(f: CanonicalClass, kind, target_trunc=None, twist: int = 0) -> CanonicalClass:
    kind = as_kind(kind)
    r, s = check_domain(f, kind)
    g = transform_series(f, kind, target_trunc, twist)
    return normalize(g, output_ramification(kind, r, s))


def fourier_0_inf(f: CanonicalClass, **kw) -> CanonicalClass:
    return fourier(f, TransformKind.ZERO_INF, **kw)


def fourier_inf_0(f: CanonicalClass, **kw) -> CanonicalClass:
    return fourier(f, TransformKind.INF_ZERO, **kw)


def fourier_inf_inf(f: CanonicalClass, **kw) -> CanonicalClass:
    return fourier(f, TransformKind.INF_INF, **kw)


def transform_connection(e: ConnectionObject, kind) -> ConnectionObject:
    """Summand-wise transform; Jordan sizes are carried over unchanged."""
    kind = as_kind(kind)
    if kind is TransformKind.ZERO_INF and has_horizontal_sections(e):
        idx = next(i for i, (c, _) in enumerate(e.summands) if is_zero_class(c))
        raise ZeroClass(f"summand {idx}: the zero class has horizontal sections")
    out = []
    for i, (c, m) in enumerate(e.summands):
        try:
            out.append((fourier(c, kind), m))
        except DomainError as exc:
            raise type(exc)(f"summand {i}: {exc}") from exc
    return ConnectionObject(tuple(out))

"""Randomized verification suites shared by the CLI and the test-suite.

Every generator takes a :class:`random.Random`, so a seed fixes the whole run.
Rational inputs are drawn so that each root the pipeline needs is rational.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .classes import CanonicalClass, classes_equal, is_irreducible, normalize
from .compose import comp_inverse, compose, lagrange_check
from .field import QQ, ComplexField
from .fourier import fourier_0_inf, fourier_inf_0, transform_series, fourier, TransformKind
from .oplab import (
    compare,
    derivation_operator,
    fractional_root,
    mult_operator,
    op_ord,
    power,
    residual_operators,
)
from .series import INF, PuiseuxSeries, Var, unity_power

SUITES = ("expansion", "fracroot", "lagrange", "constant", "roundtrip", "slopes")
MIN_COLUMNS = 5


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failures: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def record(self, index: int, ok: bool, detail: str = "") -> None:
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(f"trial {index}: {detail}")

    def lines(self) -> list[str]:
        out = [f"{self.name}: {self.passed}/{self.total}"]
        out += self.notes
        out += self.failures
        return out


# -- generators ------------------------------------------------------------


def rand_rational(rng: random.Random, num: int = 5, den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def rand_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 3), rng.randint(1, 3))


def _class_series(rng, r, s, lead, var, constant, field):
    terms = {Fraction(-s, r): lead}
    for n in range(-s + 1, 0):
        if rng.random() < 0.5:
            terms[Fraction(n, r)] = rand_rational(rng)
    if constant is not None:
        terms[Fraction(0)] = constant
    return PuiseuxSeries(terms, var=var, ram=r, field=field)


def _pick_rs(rng, ok, r_max, s_max):
    while True:
        r = rng.randint(1, r_max)
        s = rng.randint(0, s_max)
        if ok(r, s) and math.gcd(r, s) == 1 and (s > 0 or r == 1):
            return r, s


def random_class(rng: random.Random, kind, r_max: int = 4, s_max: int = 6,
                 field=QQ, exact_roots: bool = True, b=None) -> tuple[CanonicalClass, int, int, Fraction]:
    """A random irreducible class in the domain of ``kind``.

    Returns ``(class, r, s, b)``; the representative keeps the constant ``b``
    unreduced.  With ``exact_roots`` the leading coefficient is a perfect
    power so the whole transform stays rational.
    """
    kind = TransformKind(kind) if not isinstance(kind, TransformKind) else kind
    if kind is TransformKind.ZERO_INF:
        r, s = _pick_rs(rng, lambda r, s: True, r_max, s_max)
        var, n = Var.Z, r + s
        sign = -1
    elif kind is TransformKind.INF_ZERO:
        r, s = _pick_rs(rng, lambda r, s: s < r, r_max, s_max)
        var, n, sign = Var.ZETA, r - s, 1
    else:
        r, s = _pick_rs(rng, lambda r, s: s > r, r_max, s_max)
        var, n, sign = Var.ZETA, s - r, 1
    if exact_roots:
        lead = sign * rand_positive(rng) ** n
    else:
        lead = rand_rational(rng, nonzero=True)
    if b is None:
        b = rand_rational(rng)
    if s == 0:
        # a regular class needs a constant outside (1/r) Z
        while (b * r).denominator == 1:
            b = rand_rational(rng)
        lead = b
    f = _class_series(rng, r, s, lead, var, b, field)
    return CanonicalClass(r, f), r, s, b


def random_power_series(rng: random.Random, degree: int = 6, field=QQ) -> PuiseuxSeries:
    terms = {1: rand_rational(rng, nonzero=True)}
    for k in range(2, degree + 1):
        terms[k] = rand_rational(rng)
    return PuiseuxSeries(terms, field=field)


def random_laurent(rng: random.Random, field=QQ) -> PuiseuxSeries:
    """``j = a v**(p/q) + ...`` with ``p != 0`` and a rational branch root."""
    while True:
        p = rng.choice([-3, -2, -1, 1, 2, 3])
        q = rng.randint(1, 3)
        if math.gcd(p, q) == 1:
            break
    t = rand_positive(rng)
    lead = t ** (-p)
    terms = {Fraction(p, q): lead}
    for k in range(1, 5):
        if rng.random() < 0.6:
            terms[Fraction(p + k, q)] = rand_rational(rng)
    var = rng.choice([Var.Z, Var.ZETA])
    return PuiseuxSeries(terms, var=var, ram=q, field=field)


# -- helpers used by several suites ---------------------------------------


def negate_variable(c: CanonicalClass, sign: int = 1) -> CanonicalClass:
    """The class of ``sign * f(-v)``, with ``(-1)**(1/q)`` the principal root."""
    field = c.field
    rep = c.rep.with_ram(c.q)
    terms = {}
    for e, coeff in rep.items():
        n = int(e * c.q)
        terms[e] = sign * coeff * unity_power(field, 2 * c.q, n)
    return normalize(PuiseuxSeries(terms, var=c.var, ram=c.q, field=field), c.q)


ROUNDTRIP_BRANCHES = (("f(z)", 1, False), ("f(-z)", 1, True), ("-f(z)", -1, False), ("-f(-z)", -1, True))


def roundtrip_branches(f: CanonicalClass, back: CanonicalClass) -> list[str]:
    """Names of the candidate branches that ``back`` agrees with."""
    hits = []
    for name, sign, flip in ROUNDTRIP_BRANCHES:
        if flip:
            cand = negate_variable(f, sign)
        else:
            cand = normalize(f.rep.scale(sign), f.q)
        cand = CanonicalClass(cand.q, cand.rep.rename(back.var))
        if classes_equal(cand, back):
            hits.append(name)
    return hits


def roundtrip(f: CanonicalClass) -> CanonicalClass:
    return fourier_inf_0(fourier_0_inf(f))


# -- suites ----------------------------------------------------------------


def suite_expansion(trials: int, rng: random.Random, half_width: int = 14) -> SuiteResult:
    res = SuiteResult("expansion")
    configs = [(PuiseuxSeries({0: 1}), 0, 1)]  # A = z^-1, B = d/dz: the boundary case
    while len(configs) < trials:
        q = rng.choice([1, 1, 2])
        n = rng.randint(-1, 2)
        b = n - 1
        a_idx = q * b - rng.randint(1, 2)  # a < b, in units of 1/q
        terms = {Fraction(a_idx, q) + 1: rand_rational(rng, nonzero=True)}
        for k in range(1, 4):
            if rng.random() < 0.5:
                terms[Fraction(a_idx + k, q) + 1] = rand_rational(rng)
        configs.append((PuiseuxSeries(terms, ram=q), n, q))
    for i, (f, n, q) in enumerate(configs[:trials]):
        window = (-half_width - 4 * (q - 1), half_width + 4 * (q - 1))
        A = mult_operator(f.shift(-1), window, q)
        B = derivation_operator(n, window, q)
        a, b = op_ord(A), op_ord(B)
        ms = range(0, 6) if a == b else range(-3, 6)
        for m, R in residual_operators(A, B, ms).items():
            got = op_ord(R)
            cols = len(R.determined_columns())
            ok = got >= a * (m - 1) + b and cols >= MIN_COLUMNS
            res.record(i, ok, f"f={f} n={n} m={m}: Ord {got} vs {a * (m - 1) + b}, {cols} columns")
    return res


FRACROOT_POWERS = (2, 3, -2, -3)


def fracroot_config(rng: random.Random, p: int | None = None):
    """``(f, r, p)`` for ``P = (1/a)(mult(z^-1 f) + d/dz)`` with ``p | shift(P)``."""
    if p is None:
        p = rng.choice(FRACROOT_POWERS)
    while True:
        r = rng.randint(1, 2)
        k = rng.randint(1, 2)
        s = abs(p) * k - r
        if s > 0:
            break
    a = rand_rational(rng, nonzero=True)
    f = _class_series(rng, r, s, a, Var.Z, rand_rational(rng), QQ)
    extra = {Fraction(n, r): rand_rational(rng) for n in range(1, 3)}
    f = f + PuiseuxSeries(extra, ram=r)
    return f, r, p


def suite_fracroot(trials: int, rng: random.Random, window=(-12, 12)) -> SuiteResult:
    res = SuiteResult("fracroot")
    for i in range(trials):
        f, r, p = fracroot_config(rng, FRACROOT_POWERS[i % len(FRACROOT_POWERS)])
        a = f.leading()[1]
        P = (mult_operator(f.shift(-1), window, r) + derivation_operator(0, window, r)).scale(1 / a)
        Q = fractional_root(P, p)
        cmp = compare(power(Q, p), P)
        res.record(i, cmp.ok and len(cmp.columns) >= MIN_COLUMNS,
                   f"f={f} p={p}: {len(cmp.mismatches)} mismatches, {len(cmp.columns)} columns")
    return res


def suite_lagrange(trials: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("lagrange")
    for i in range(trials):
        h = random_power_series(rng)
        r, s = rng.randint(1, 3), rng.randint(0, 3)
        lhs, rhs = lagrange_check(h, r, s)
        res.record(i, lhs == rhs, f"h={h} r={r} s={s}: {lhs} != {rhs}")
    return res


def constant_trial(rng: random.Random, field=QQ, exact_roots: bool = True):
    """Observed and predicted pre-reduction constants for one random input."""
    f, r, s, b = random_class(rng, TransformKind.ZERO_INF, field=field, exact_roots=exact_roots)
    g = transform_series(f, TransformKind.ZERO_INF)
    predicted = field.coerce(b * r / (r + s) + Fraction(s, 2 * (r + s)))
    return f, g.coeff(0), predicted


def suite_constant(trials: int, rng: random.Random, field=QQ) -> SuiteResult:
    res = SuiteResult("constant")
    for i in range(trials):
        f, got, want = constant_trial(rng, field, exact_roots=field.exact)
        ok = got == want if field.exact else abs(got - want) < 1e-40
        res.record(i, ok, f"f={f.rep}: constant {got}, expected {want}")
    return res


def suite_roundtrip(trials: int, rng: random.Random, prec: int = 256) -> SuiteResult:
    """Applies inf-0 after 0-inf and reports which sign/reflection branch of
    ``f`` comes back.  Passing means one branch fits every trial."""
    res = SuiteResult("roundtrip")
    cf = ComplexField(prec)
    branches = []
    for i in range(trials):
        f, *_ = random_class(rng, TransformKind.ZERO_INF, field=cf, exact_roots=False, s_max=4, r_max=3)
        back = roundtrip(f)
        branches.append((i, f, roundtrip_branches(f, back)))
    common = set(n for n, _, _ in ROUNDTRIP_BRANCHES)
    for _, _, hits in branches:
        common &= set(hits)
    chosen = sorted(common, key=[n for n, _, _ in ROUNDTRIP_BRANCHES].index)
    for i, f, hits in branches:
        res.record(i, bool(chosen) and chosen[0] in hits, f"f={f.rep}: matches {hits or 'no branch'}")
    res.notes.append("branch: " + (chosen[0] if chosen else "inconsistent"))
    return res


SLOPE_LAWS = {
    TransformKind.ZERO_INF: lambda r, s: Fraction(-s, r + s),
    TransformKind.INF_ZERO: lambda r, s: Fraction(-s, r - s),
    TransformKind.INF_INF: lambda r, s: Fraction(-s, s - r),
}


def suite_slopes(trials: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("slopes")
    for kind, law in SLOPE_LAWS.items():
        for i in range(trials):
            f, r, s, _ = random_class(rng, kind)
            g = fourier(f, kind)
            got = g.rep.ord() if not g.rep.is_zero() else Fraction(0)
            ok = got == law(r, s) and is_irreducible(g)
            res.record(i, ok, f"{kind} f={f.rep}: ord {got}, expected {law(r, s)}")
    return res


def inverse_roundtrip(j: PuiseuxSeries, order: int = 10):
    """``compose(j, comp_inverse(j)) - w**(+-1)`` through ``order`` grid steps."""
    x, root = comp_inverse(j, order=order, with_root=True)
    target = PuiseuxSeries.monomial(1, 1 if j.ord() > 0 else -1, var=x.var, field=j.field)
    prec = x.trunc - x.ord() + target.ord()
    return compose(j, x, root=root, prec=prec) - target


def run_suite(name: str, trials: int = 20, seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    if name == "expansion":
        return suite_expansion(trials, rng)
    if name == "fracroot":
        return suite_fracroot(trials, rng)
    if name == "lagrange":
        return suite_lagrange(trials, rng)
    if name == "constant":
        return suite_constant(trials, rng)
    if name == "roundtrip":
        return suite_roundtrip(trials, rng)
    if name == "slopes":
        return suite_slopes(trials, rng)
    raise ValueError(f"unknown suite {name!r}")

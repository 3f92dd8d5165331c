import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laft.classes import (
    CanonicalClass,
    ConnectionObject,
    classes_equal,
    is_irreducible,
    normalize,
)
from laft.compose import compose
from laft.errors import NotIrreducible, SlopeViolation, WrongPoint, ZeroClass
from laft.field import ComplexField
from laft.fourier import (
    TransformKind,
    default_target,
    fourier,
    fourier_0_inf,
    fourier_inf_0,
    fourier_inf_inf,
    solve_coordinate,
    transform_connection,
    transform_series,
)
from laft.series import PuiseuxSeries, Var
from laft.verify import constant_trial, random_class, roundtrip, roundtrip_branches

F = Fraction
P = PuiseuxSeries
K0, K1, K2 = TransformKind.ZERO_INF, TransformKind.INF_ZERO, TransformKind.INF_INF
CF = ComplexField(256)


def cls(q, terms, var=Var.ZETA, field=None):
    kw = {} if field is None else {"field": field}
    return CanonicalClass(q, P(terms, var=var, ram=q, **kw))


def at_zero(q, terms, **kw):
    return cls(q, terms, Var.Z, **kw)


seeds = st.integers(0, 2**32 - 1)


class TestSolveCoordinate:
    def test_zero_inf(self):
        x = solve_coordinate(at_zero(1, {-1: -4}), K0)
        assert x.var is Var.ZETAHAT and x.terms == {F(1, 2): 2}

    def test_regular(self):
        assert solve_coordinate(at_zero(1, {0: F(1, 3)}), K0).terms == {1: F(-1, 3)}

    def test_inf_inf(self):
        x = solve_coordinate(cls(1, {-2: 3}), K2)
        assert x.var is Var.ZETAHAT and x.terms == {1: 3}

    def test_inf_zero_variable(self):
        assert solve_coordinate(cls(2, {F(-1, 2): 4}), K1).var is Var.ZHAT


class TestZeroInf:
    def test_example(self):
        g = fourier_0_inf(at_zero(1, {-1: -4}))
        assert g.q == 2 and g.var is Var.ZETAHAT
        assert g.rep.terms == {F(-1, 2): -2, 0: F(1, 4)}

    def test_regular(self):
        assert fourier_0_inf(at_zero(1, {0: F(1, 3)})).rep.terms == {0: F(1, 3)}

    def test_needs_complex(self, cf):
        g = fourier_0_inf(at_zero(1, {-1: cf.coerce(4)}, field=cf))
        lead = g.rep.coeff(F(-1, 2))
        assert cf.eq(lead * lead, cf.coerce(-4))
        other = cls(2, {F(-1, 2): -lead, 0: cf.coerce(F(1, 4))}, Var.ZETAHAT, field=cf)
        assert classes_equal(g, other)

    def test_zero_class(self):
        with pytest.raises(ZeroClass):
            fourier_0_inf(at_zero(1, {0: 2}))

    def test_wrong_point(self):
        with pytest.raises(WrongPoint):
            fourier_0_inf(cls(1, {-1: 1}))

    def test_reducible(self):
        with pytest.raises(NotIrreducible):
            fourier_0_inf(at_zero(2, {-1: 1}))


class TestInfZero:
    def test_constant(self):
        assert fourier_inf_0(cls(1, {0: F(1, 3)})).rep.terms == {0: F(2, 3)}

    def test_half_slope(self):
        g = fourier_inf_0(cls(2, {F(-1, 2): 4}))
        assert g.q == 1 and g.rep.ord() == -1 and g.var is Var.ZHAT
        assert g.rep.terms == {-1: -16, 0: F(1, 2)}

    def test_slope_violation(self):
        with pytest.raises(SlopeViolation):
            fourier_inf_0(cls(2, {F(-3, 2): 1}))


class TestInfInf:
    def test_monomial(self):
        g = fourier_inf_inf(cls(1, {-2: 3}))
        assert g.q == 1 and g.rep.terms == {-2: F(-1, 3)}

    def test_slope_one(self):
        with pytest.raises(SlopeViolation):
            fourier_inf_inf(cls(1, {-1: 1}))

    def test_three_halves(self):
        g = fourier_inf_inf(cls(2, {F(-3, 2): 1}))
        assert g.q == 1 and g.rep.ord() == -3 and g.slope() == 3


class TestConnections:
    def test_jordan_kept(self):
        e = ConnectionObject(((at_zero(1, {-1: -4}), 3),))
        (g, m), = transform_connection(e, K0).summands
        assert m == 3 and g.rep.terms == {F(-1, 2): -2, 0: F(1, 4)}

    def test_order_kept(self):
        e = ConnectionObject(((cls(1, {-2: 3}), 1), (cls(1, {-3: 1}), 2)))
        out = transform_connection(e, K2).summands
        assert [m for _, m in out] == [1, 2]
        assert classes_equal(out[0][0], fourier_inf_inf(cls(1, {-2: 3})))
        assert classes_equal(out[1][0], fourier_inf_inf(cls(1, {-3: 1})))

    def test_zero_class(self):
        e = ConnectionObject(((at_zero(1, {-1: 1}), 1), (at_zero(1, {0: 0}), 1)))
        with pytest.raises(ZeroClass, match="summand 1"):
            transform_connection(e, K0)

    def test_error_names_summand(self):
        e = ConnectionObject(((cls(1, {-2: 1}), 1), (cls(1, {-1: 1}), 1)))
        with pytest.raises(SlopeViolation, match="summand 1"):
            transform_connection(e, K2)


# -- properties --------------------------------------------------------------

SLOPE = {K0: lambda r, s: r + s, K1: lambda r, s: r - s, K2: lambda r, s: s - r}


@settings(max_examples=25)
@given(seeds, st.sampled_from(list(TransformKind)))
def test_slope_law_and_irreducibility(seed, kind):
    f, r, s, _ = random_class(random.Random(seed), kind, r_max=3, s_max=5)
    g = fourier(f, kind)
    q = SLOPE[kind](r, s)
    assert g.q == q and is_irreducible(g)
    if s:
        assert g.rep.ord() == F(-s, q)


@settings(max_examples=25)
@given(seeds, st.sampled_from(list(TransformKind)))
def test_back_substitution(seed, kind):
    f, r, s, _ = random_class(random.Random(seed), kind, r_max=3, s_max=5)
    x, root = solve_coordinate(f, kind, with_root=True)
    rep = f.rep.with_ram(f.q)
    j = -rep.shift(-1) if kind is K0 else rep.shift(1)
    sign = -1 if kind is not K1 else 1
    back = compose(j, x, root=root, prec=sign + F(1, 2))
    assert back.agrees_below(P({sign: 1}, var=x.var), sign + F(1, 2))


@settings(max_examples=25)
@given(seeds)
def test_constant_term(seed):
    _, got, want = constant_trial(random.Random(seed))
    assert got == want


@settings(max_examples=5)
@given(seeds)
def test_constant_term_complex(seed):
    _, got, want = constant_trial(random.Random(seed), CF, exact_roots=False)
    assert abs(got - want) < 1e-40


@settings(max_examples=10)
@given(seeds, st.sampled_from(list(TransformKind)), st.integers(1, 5))
def test_branch_choice(seed, kind, twist):
    f, _, _, _ = random_class(random.Random(seed), kind, r_max=3, s_max=5, field=CF,
                              exact_roots=False)
    g0 = fourier(f, kind)
    g1 = fourier(f, kind, twist=twist)
    assert classes_equal(g0, g1)


@settings(max_examples=15)
@given(seeds, st.sampled_from(list(TransformKind)))
def test_precision_stability(seed, kind):
    f, _, _, _ = random_class(random.Random(seed), kind, r_max=3, s_max=5)
    target = default_target(f, kind)
    a = transform_series(f, kind, target)
    b = transform_series(f, kind, target + 1)
    assert a.agrees_below(b, F(1, 10**6))
    assert normalize(a, a.ram).rep == normalize(b, b.ram).rep


def test_roundtrip_branch():
    """Going to infinity and back lands on -f(-z), consistently."""
    rng = random.Random(5)
    seen = set()
    for _ in range(8):
        f, _, _, _ = random_class(rng, K0, r_max=2, s_max=3, field=CF, exact_roots=False)
        hits = roundtrip_branches(f, roundtrip(f))
        assert "-f(-z)" in hits
        seen.update(n for n in ("f(z)", "f(-z)") if n not in hits)
    assert seen == {"f(z)", "f(-z)"}

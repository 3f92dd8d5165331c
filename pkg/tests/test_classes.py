from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laft.classes import (
    CanonicalClass,
    ConnectionObject,
    classes_equal,
    display_rep,
    galois_twist,
    has_horizontal_sections,
    in_slope_subcategory,
    is_irreducible,
    is_zero_class,
    normalize,
    slope,
)
from laft.errors import InsufficientPrecision, NotIrreducible, VariableMismatch, WrongPoint
from laft.field import ComplexField
from laft.series import PuiseuxSeries, Var

from conftest import nonzero_fractions, small_fractions

F = Fraction
P = PuiseuxSeries
ZETA = Var.ZETA
CF = ComplexField(128)


def cls(q, terms, var=Var.Z):
    return CanonicalClass(q, P(terms, var=var, ram=q))


class TestNormalize:
    def test_drops_positive(self):
        assert normalize(P({-1: 1, 1: 5}), 1).rep == P({-1: 1})

    def test_constant_coset(self):
        assert normalize(P({0: F(7, 3)}), 2).rep.terms == {0: F(1, 3)}

    def test_negative_constant(self):
        assert normalize(P({0: F(-1, 3)}), 1).rep.terms == {0: F(2, 3)}

    def test_unchanged(self):
        assert normalize(P({F(-1, 2): 1}), 2).rep == P({F(-1, 2): 1})

    def test_needs_constant_term(self):
        with pytest.raises(InsufficientPrecision):
            normalize(P({-1: 1}, trunc=0), 1)

    def test_off_grid(self):
        with pytest.raises(ValueError):
            normalize(P({F(-1, 3): 1}), 2)

    def test_complex_constant_kept(self, cf):
        c = cf.coerce(complex(0.5, 1))
        assert normalize(P({0: c}, field=cf), 1).rep.coeff(0) == c


class TestTwist:
    def test_sign(self):
        assert galois_twist(cls(2, {F(-1, 2): 1}), 1).rep.terms == {F(-1, 2): -1}

    def test_identity(self):
        c = cls(2, {F(-3, 2): 3, F(-1, 2): 1})
        assert galois_twist(c, 0).rep == c.rep

    def test_even_numerator(self):
        assert galois_twist(cls(2, {-1: 1}), 1).rep.terms == {-1: 1}

    def test_complex_cube(self, cf):
        c = CanonicalClass(3, P({F(-1, 3): cf.one}, field=cf, ram=3))
        tw = galois_twist(c, 1)
        assert cf.eq(tw.rep.coeff(F(-1, 3)) ** 3, cf.one)
        assert not cf.eq(tw.rep.coeff(F(-1, 3)), cf.one)


class TestEquality:
    def test_twisted_pair(self):
        a = cls(2, {F(-1, 2): 2}, ZETA.dual.reciprocal)
        b = cls(2, {F(-1, 2): -2}, ZETA.dual.reciprocal)
        assert classes_equal(a, b)

    def test_integer_shift(self):
        assert classes_equal(cls(1, {-1: 1}), cls(1, {-1: 1, 0: 1}))

    def test_different(self):
        assert not classes_equal(cls(1, {-1: 1}), cls(1, {-1: 2}))

    def test_q_matters(self):
        assert not classes_equal(cls(1, {-1: 1}), cls(2, {-1: 1}))

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatch):
            classes_equal(cls(1, {-1: 1}), cls(1, {-1: 1}, ZETA))

    def test_complex_coset(self, cf):
        x = cf.coerce(complex(0.3, 0.7))
        a = CanonicalClass(2, P({F(-1, 2): cf.one, 0: x}, field=cf, ram=2))
        b = CanonicalClass(2, P({F(-1, 2): -cf.one, 0: x + cf.coerce(F(5, 2))}, field=cf, ram=2))
        c = CanonicalClass(2, P({F(-1, 2): cf.one, 0: x + cf.coerce(F(1, 3))}, field=cf, ram=2))
        assert classes_equal(a, b) and not classes_equal(a, c)

    def test_operator(self):
        assert cls(1, {-1: 1}) == cls(1, {-1: 1, 0: -2})


class TestPredicates:
    @pytest.mark.parametrize(
        "q, terms, expected",
        [(2, {F(-1, 2): 1}, True), (2, {-1: 1}, False), (2, {F(-3, 2): 1, -1: 1}, True),
         (1, {0: 0}, True), (3, {F(-2, 3): 1}, True)],
    )
    def test_irreducible(self, q, terms, expected):
        assert is_irreducible(cls(q, terms)) is expected

    @pytest.mark.parametrize(
        "q, terms, expected",
        [(2, {F(-3, 2): 1}, F(3, 2)), (1, {0: F(1, 2)}, 0), (3, {F(-1, 3): 1}, F(1, 3)),
         (1, {}, 0)],
    )
    def test_slope(self, q, terms, expected):
        assert slope(cls(q, terms)) == expected

    def test_zero_class(self):
        assert is_zero_class(cls(1, {0: 3}))
        assert not is_zero_class(cls(1, {0: F(1, 3)}))
        assert not is_zero_class(cls(1, {-1: 1}))


def test_display_picks_least_twist():
    c = cls(2, {F(-1, 2): 1})
    assert display_rep(c).terms == {F(-1, 2): -1}
    assert str(c) == "-z^(-1/2)"


# -- properties --------------------------------------------------------------

@st.composite
def classes(draw, q=None):
    q = draw(st.integers(1, 4)) if q is None else q
    terms = {F(-n, q): draw(nonzero_fractions) for n in draw(st.sets(st.integers(1, 7), max_size=3))}
    terms[0] = draw(small_fractions)
    return normalize(P(terms, ram=q), q)


def perturb(c, k, shift):
    tw = galois_twist(c, k)
    return CanonicalClass(c.q, tw.rep + F(shift, c.q))


@given(classes(q=2), st.integers(0, 5), st.integers(-4, 4), st.integers(0, 5), st.integers(-4, 4))
def test_equivalence_relation(c, k1, t1, k2, t2):
    a, b = perturb(c, k1, t1), perturb(perturb(c, k1, t1), k2, t2)
    assert classes_equal(c, c)
    assert classes_equal(c, a) and classes_equal(a, c)
    assert classes_equal(a, b) and classes_equal(c, b)


def complexify(c, field):
    return CanonicalClass(c.q, P({e: field.coerce(x) for e, x in c.rep.items()},
                                 ram=c.q, field=field))


@given(classes(), st.integers(-3, 3))
def test_twist_is_equal(c, k):
    c = complexify(c, CF)
    assert classes_equal(c, galois_twist(c, k))


@given(classes(), st.integers(-3, 3))
def test_twist_invariants(c, k):
    c = complexify(c, CF)
    tw = galois_twist(c, k)
    assert slope(tw) == slope(c) and is_irreducible(tw) == is_irreducible(c)


@given(classes())
def test_normalize_idempotent(c):
    again = normalize(c.rep, c.q)
    assert again.rep == c.rep


@given(classes(), classes())
def test_different_tails_differ(a, b):
    if a.q == b.q and a.rep.terms != b.rep.terms and a.q == 1:
        assert not classes_equal(a, b)


class TestConnections:
    def at_inf(self, q, terms, m=1):
        return cls(q, terms, ZETA), m

    def test_slope_below_one(self):
        e = ConnectionObject((self.at_inf(2, {F(-1, 2): 1}),))
        assert in_slope_subcategory(e, "<1") and not in_slope_subcategory(e, ">1")

    def test_slopes_above_one(self):
        e = ConnectionObject((self.at_inf(1, {-2: 1}), self.at_inf(1, {-3: 1}, 2)))
        assert in_slope_subcategory(e, ">1")

    def test_mixed(self):
        e = ConnectionObject((self.at_inf(2, {F(-1, 2): 1}), self.at_inf(1, {-2: 1})))
        assert not in_slope_subcategory(e, "<1") and not in_slope_subcategory(e, ">1")

    def test_needs_infinity(self):
        with pytest.raises(WrongPoint):
            in_slope_subcategory(ConnectionObject(((cls(1, {-1: 1}), 1),)), "<1")

    def test_horizontal_sections(self):
        assert not has_horizontal_sections(ConnectionObject(((cls(1, {-1: 1}), 1),)))
        assert has_horizontal_sections(ConnectionObject(((cls(1, {0: 0}), 1),)))
        assert not has_horizontal_sections(ConnectionObject(((cls(1, {0: F(1, 3)}), 1),)))

    def test_invariants_enforced(self):
        with pytest.raises(NotIrreducible):
            ConnectionObject(((cls(2, {-1: 1}), 1),))
        with pytest.raises(ValueError):
            ConnectionObject(((cls(1, {-1: 1}), 0),))
        with pytest.raises(ValueError):
            ConnectionObject(())
        with pytest.raises(VariableMismatch):
            ConnectionObject(((cls(1, {-1: 1}), 1), (cls(1, {-1: 1}, ZETA), 1)))

    @given(st.integers(0, 3), st.integers(-3, 3))
    def test_predicates_respect_equality(self, k, t):
        c = cls(2, {F(-3, 2): 2, F(-1, 2): 1, 0: F(1, 5)}, ZETA)
        d = perturb(c, k, t)
        e, e2 = ConnectionObject(((c, 1),)), ConnectionObject(((d, 1),))
        for which in ("<1", ">1"):
            assert in_slope_subcategory(e, which) == in_slope_subcategory(e2, which)
        assert has_horizontal_sections(e) == has_horizontal_sections(e2)

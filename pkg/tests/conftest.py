from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from laft.field import ComplexField
from laft.series import PuiseuxSeries, Var

settings.register_profile(
    "laft", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("laft")

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)
nonzero_fractions = small_fractions.filter(bool)


@st.composite
def series(draw, var=Var.Z, ram=None, min_exp=-6, max_exp=6, max_terms=5, trunc=None):
    q = draw(st.integers(1, 3)) if ram is None else ram
    exps = draw(st.lists(st.integers(min_exp * q, max_exp * q), max_size=max_terms, unique=True))
    terms = {Fraction(n, q): draw(nonzero_fractions) for n in exps}
    return PuiseuxSeries(terms, var=var, ram=q, trunc=trunc if trunc is not None else float("inf"))


@st.composite
def nonzero_series(draw, **kw):
    f = draw(series(**kw))
    if f.is_zero():
        f = PuiseuxSeries({draw(st.integers(-3, 3)): draw(nonzero_fractions)}, ram=f.ram)
    return f


@pytest.fixture(scope="session")
def cf():
    return ComplexField(256)


def z(exp=1, coeff=1, **kw):
    return PuiseuxSeries.monomial(coeff, exp, **kw)


# -- acceptance report -------------------------------------------------------

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    _criteria[number] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed, detail = _criteria[number]
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))

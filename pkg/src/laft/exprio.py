"""Text grammar and JSON schema for series and classes.

Grammar (whitespace-insensitive)::

    series   := sign? term (("+" | "-") term)*
    term     := coeff ("*"? var ("^" exponent)?)? | var ("^" exponent)?
    coeff    := integer ("/" integer)? | decimal | "(" real "," real ")"
    var      := "z" | "zeta" | "zhat" | "zetahat"
    exponent := "-"? integer | "(" "-"? integer ("/" integer)? ")"

A bare variable means exponent 1.  Fractional exponents must be parenthesised.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import lcm

from .errors import ExponentNotRational, ExprSyntaxError, VariableMismatch
from .field import QQ
from .series import PuiseuxSeries, Var, as_var

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")
_VAR = re.compile(r"zetahat|zeta|zhat|z")
_REAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?")


class _Parser:
    def __init__(self, text: str, field):
        self.text = text
        self.pos = 0
        self.field = field

    def error(self, msg, pos=None, cls=ExprSyntaxError):
        return cls(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def match(self, pattern):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def series(self):
        terms = []
        sign = 1
        if self.eat("-"):
            sign = -1
        else:
            self.eat("+")
        terms.append(self.term(sign))
        while True:
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise self.error(f"unexpected {ch!r}")
            self.pos += 1
            terms.append(self.term(1 if ch == "+" else -1))
        return terms

    def term(self, sign):
        coeff = None
        start = self.pos
        ch = self.peek()
        if ch == "(":
            coeff = self.complex_literal()
        elif ch.isdigit() or ch == ".":
            coeff = self.real_literal()
        if coeff is not None:
            had_star = self.eat("*")
            if not _VAR.match(self.text, self._skipped()):
                if had_star:
                    raise self.error("expected a variable after '*'")
                return sign, coeff, None, Fraction(0)
        var_m = self.match(_VAR)
        if var_m is None:
            raise self.error("expected a coefficient or a variable", start if self.pos == start else None)
        var = Var(var_m.group(0))
        exp = Fraction(1)
        if self.eat("^"):
            exp = self.exponent()
        if coeff is None:
            coeff = self.field.one
        return sign, coeff, var, exp

    def _skipped(self):
        self.skip()
        return self.pos

    def real_literal(self):
        m = self.match(_NUMBER)
        text = m.group(0)
        if "." not in text and "e" not in text.lower() and self.peek() == "/":
            save = self.pos
            self.pos += 1
            d = self.match(_INT)
            if d is None:
                raise self.error("expected a denominator", save + 1)
            text = f"{text}/{d.group(0)}"
            if int(d.group(0)) == 0:
                raise self.error("zero denominator", save + 1)
        return self.field.parse(text)

    def complex_literal(self):
        start = self._skipped()
        end = self.text.find(")", start)
        if end < 0:
            raise self.error("unterminated complex literal", start)
        body = self.text[start + 1 : end]
        parts = body.split(",")
        if len(parts) != 2 or not all(_REAL.fullmatch(p.strip()) for p in parts):
            raise self.error("malformed complex literal", start)
        if self.field.exact:
            im = Fraction(parts[1].strip())
            if im != 0:
                raise self.error("complex literal needs the complex backend", start)
            self.pos = end + 1
            return self.field.parse(parts[0].strip())
        self.pos = end + 1
        return self.field.parse(f"({parts[0].strip()},{parts[1].strip()})")

    def exponent(self) -> Fraction:
        self.skip()
        if self.eat("("):
            neg = self.eat("-")
            num = self.match(_INT)
            if num is None:
                raise self.error("expected an integer exponent", cls=ExponentNotRational)
            den = 1
            if self.eat("/"):
                d = self.match(_INT)
                if d is None or int(d.group(0)) == 0:
                    raise self.error("expected a positive denominator", cls=ExponentNotRational)
                den = int(d.group(0))
            if not self.eat(")"):
                raise self.error("expected ')'", cls=ExponentNotRational)
            value = Fraction(int(num.group(0)), den)
            return -value if neg else value
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        if self.peek() == "(":
            raise self.error("put the sign inside the parentheses")
        num = _INT.match(self.text, self.pos)
        if num is None:
            raise self.error("expected an exponent")
        self.pos = num.end()
        if self.pos < len(self.text) and self.text[self.pos] in "./":
            raise self.error("non-integer exponents need '(p/q)'", cls=ExponentNotRational)
        value = Fraction(int(num.group(0)))
        return -value if neg else value


def parse_series(text: str, default_var=Var.Z, field=QQ) -> PuiseuxSeries:
    """Parse ``text`` into an exact (``trunc = inf``) series."""
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(text, field)
    terms = parser.series()
    var = None
    for _, _, v, _ in terms:
        if v is None:
            continue
        if var is None:
            var = v
        elif v is not var:
            raise VariableMismatch(f"mixed variables {var} and {v}")
    var = as_var(default_var) if var is None else var
    acc = {}
    ram = 1
    for sign, c, _, e in terms:
        c = c if sign > 0 else -c
        acc[e] = acc[e] + c if e in acc else c
        ram = lcm(ram, e.denominator)
    return PuiseuxSeries(acc, var=var, ram=ram, field=field)


def format_exponent(e: Fraction) -> str:
    e = Fraction(e)
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def _format_rational(x: Fraction) -> str:
    return QQ.format(x)


def format_series(f: PuiseuxSeries) -> str:
    """Deterministic ascending-exponent text form; ``parse_series`` inverts it."""
    field = f.field
    if not f.items():
        return "0"
    out = []
    for i, (e, c) in enumerate(f.items()):
        if e == 0:
            mono = ""
        elif e == 1:
            mono = str(f.var)
        else:
            mono = f"{f.var}^{format_exponent(e)}"
        if field.exact:
            neg = c < 0
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            else:
                body = _format_rational(mag) + (f"*{mono}" if mono else "")
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        else:
            body = field.format(c) + (f"*{mono}" if mono else "")
            out.append(body if i == 0 else " + " + body)
    return "".join(out)


def _series_payload(f: PuiseuxSeries, ram: int, slope) -> dict:
    return {
        "variable": f.var.value,
        "ramification": ram,
        "slope": _format_rational(Fraction(slope)),
        "terms": [
            {"exp": _format_rational(e), "coeff": f.field.format(c)} for e, c in f.items()
        ],
    }


def to_payload(result, jordan=None):
    """JSON-ready dict for a series, class, (class, jordan) pair or connection."""
    from .classes import CanonicalClass, ConnectionObject, display_rep

    if isinstance(result, ConnectionObject):
        return {"summands": [to_payload(c, m) for c, m in result.summands]}
    if isinstance(result, tuple) and len(result) == 2:
        result, jordan = result
    if isinstance(result, CanonicalClass):
        # same branch as the text form
        payload = _series_payload(display_rep(result), result.q, result.slope())
    elif isinstance(result, PuiseuxSeries):
        order = result.ord() if result.items() else 0
        payload = _series_payload(result, result.ram, max(Fraction(0), -order))
    else:
        raise TypeError(f"cannot serialise {type(result).__name__}")
    if jordan is not None:
        payload["jordan"] = int(jordan)
    return payload


def to_json(result, jordan=None) -> str:
    return json.dumps(to_payload(result, jordan), sort_keys=False)

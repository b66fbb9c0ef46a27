"""Exact scalars: Laurent polynomials in q, their fraction field, q-integers.

Two backends share one calling convention.  Every formula in the package is
written against a scalar ``q`` and ordinary arithmetic, so passing the
symbolic generator ``Q`` yields rational functions while passing a
``Fraction`` evaluates everything at that point.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from .errors import EvaluationError, ParameterError, ParseError, ResourceLimitError

Rational = Union[int, Fraction]

_bound_lock = threading.Lock()
_TERM_BOUND = 10_000


def set_term_bound(n: int) -> int:
    """Set the maximum number of terms any polynomial may hold; returns the old bound."""
    global _TERM_BOUND
    if n < 1:
        raise ParameterError("term bound must be positive")
    with _bound_lock:
        old, _TERM_BOUND = _TERM_BOUND, n
    return old


def term_bound() -> int:
    return _TERM_BOUND


def _guard(n: int) -> None:
    if n > _TERM_BOUND:
        raise ResourceLimitError(f"polynomial with {n} terms exceeds the bound {_TERM_BOUND}")


def _coef(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (index = exponent)


def _content(ints) -> int:
    """Positive gcd of the entries, signed to make the leading entry positive."""
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    return -g if ints[-1] < 0 else g


def _prim_int(ints):
    g = _content(ints)
    if g in (1, 0):
        return ints
    return [c // g for c in ints]


def _prem(a, b):
    """Pseudo-remainder of integer lists a by b (deg a >= deg b)."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for k, c in enumerate(b):
            r[k + shift] -= lr * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_gcd(a, b):
    """Primitive gcd of two primitive integer polynomials."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        a, b = b, (_prim_int(r) if r else r)
    return _prim_int(a)


def _int_exact_div(a, b):
    """Exact quotient of integer polynomials; b must divide a in Z[q]."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(out) - 1, -1, -1):
        c, rem = divmod(r[k + db], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        if c:
            for t, bc in enumerate(b):
                r[k + t] -= c * bc
    return out


def _reduced(c: dict, den: int):
    """Cancel the common factor of integer numerators and the denominator."""
    if den == 1 or not c:
        return c, 1
    g = den
    for v in c.values():
        g = gcd(g, v)
        if g == 1:
            return c, den
    return {e: v // g for e, v in c.items()}, den // g


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial in q with rational coefficients.

    Stored as integer numerators over one positive common denominator with
    no common factor, which keeps arithmetic in machine-friendly ints.
    """

    __slots__ = ("_c", "_den", "_hash")

    def __init__(self, terms=None):
        lcm = 1
        items = []
        if terms:
            for e, c in terms.items():
                if c:
                    c = Fraction(c)
                    items.append((int(e), c))
                    lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        c = {e: v.numerator * (lcm // v.denominator) for e, v in items}
        _guard(len(c))
        self._c, self._den = _reduced(c, lcm)
        self._hash = None

    @classmethod
    def _make(cls, c: dict, den: int = 1) -> "LaurentPoly":
        p = object.__new__(cls)
        p._c = c
        p._den = den
        p._hash = None
        return p

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        """Build from a dict of nonzero int coefficients."""
        return cls._make(terms, 1)

    @classmethod
    def monomial(cls, e: int, c: Rational = 1) -> "LaurentPoly":
        if not c:
            return cls._make({}, 1)
        c = Fraction(c)
        return cls._make({e: c.numerator}, c.denominator)

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls.monomial(0, c)

    @property
    def terms(self) -> dict:
        """Exponent → rational coefficient (no zero coefficients)."""
        if self._den == 1:
            return dict(self._c)
        return {e: _coef(Fraction(v, self._den)) for e, v in self._c.items()}

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def constant_value(self):
        """The rational value if this polynomial is constant, else None."""
        c = self._c
        if not c:
            return 0
        if len(c) == 1 and 0 in c:
            return c[0] if self._den == 1 else Fraction(c[0], self._den)
        return None

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            out = dict(self._c)
            for e, v in other._c.items():
                w = out.get(e, 0) + v
                if w:
                    out[e] = w
                else:
                    del out[e]
            _guard(len(out))
            if d1 == 1:
                return LaurentPoly._make(out, 1)
            return LaurentPoly._make(*_reduced(out, d1))
        g = gcd(d1, d2)
        f1, f2 = d2 // g, d1 // g
        out = {e: v * f1 for e, v in self._c.items()}
        for e, v in other._c.items():
            w = out.get(e, 0) + v * f2
            if w:
                out[e] = w
            else:
                del out[e]
        _guard(len(out))
        return LaurentPoly._make(*_reduced(out, d1 * f1))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make({e: -v for e, v in self._c.items()}, self._den)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, r) -> "LaurentPoly":
        if not r:
            return _ZERO_P
        if type(r) is int:
            if r == 1:
                return self
            return LaurentPoly._make(*_reduced({e: v * r for e, v in self._c.items()}, self._den))
        r = Fraction(r)
        p, s = r.numerator, r.denominator
        return LaurentPoly._make(*_reduced({e: v * p for e, v in self._c.items()}, self._den * s))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        den = self._den * other._den
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if cb == 1:
                out = {e + eb: c for e, c in a.items()}
            else:
                out = {e + eb: c * cb for e, c in a.items()}
        else:
            out = {}
            get = out.get
            for e2, c2 in b.items():
                for e1, c1 in a.items():
                    k = e1 + e2
                    out[k] = get(k, 0) + c1 * c2
            out = {e: c for e, c in out.items() if c}
            _guard(len(out))
        if den == 1:
            return LaurentPoly._make(out, 1)
        return LaurentPoly._make(*_reduced(out, den))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if len(self._c) == 1:
            (e, c), = self._c.items()
            return LaurentPoly.monomial(e * k, Fraction(c, self._den) ** k)
        if k < 0:
            raise ParameterError("negative power of a non-monomial Laurent polynomial")
        result = _ONE_P
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._den == other._den and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._c.items()), self._den))
        return self._hash

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._make({e + k: c for e, c in self._c.items()}, self._den)

    def subst_q_inverse(self) -> "LaurentPoly":
        return LaurentPoly._make({-e: c for e, c in self._c.items()}, self._den)

    def eval_at(self, q0: Rational) -> Fraction:
        q0 = Fraction(q0)
        total = sum((c * q0 ** e for e, c in self._c.items()), Fraction(0))
        return total / self._den

    def dense_ints(self):
        """(lowest exponent, integer numerators upward from it, common denominator)."""
        lo, hi = min(self._c), max(self._c)
        out = [0] * (hi - lo + 1)
        for e, c in self._c.items():
            out[e - lo] = c
        return lo, out, self._den

    def dense(self):
        """(lowest exponent, rational coefficient list upward from it)."""
        lo, ints, den = self.dense_ints()
        return lo, [_coef(Fraction(c, den)) for c in ints]

    @classmethod
    def from_dense(cls, lo: int, coeffs) -> "LaurentPoly":
        return cls({lo + k: c for k, c in enumerate(coeffs) if c})

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


_ZERO_P = LaurentPoly._make({}, 1)
_ONE_P = LaurentPoly._make({0: 1}, 1)


class RatFunc:
    """Element of Q(q) in canonical reduced form.

    The denominator is an integer polynomial in q with nonzero constant term,
    content 1 and positive leading coefficient; the numerator is a Laurent
    polynomial coprime to it.  Canonical form makes ``==`` structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = _ONE_P if den is None else _as_poly(den)
        n, d = _canon(num, den)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    def is_laurent(self) -> bool:
        return self.den is _ONE_P

    def __bool__(self):
        return bool(self.num._c)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if self.den is _ONE_P and other.den is _ONE_P:
            return RatFunc._make(self.num + other.num, _ONE_P)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if self.den is _ONE_P and other.den is _ONE_P:
            return RatFunc._make(self.num * other.num, _ONE_P)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not other.num._c:
            raise EvaluationError("division by zero scalar")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if self.den is _ONE_P and len(self.num._c) == 1:
            return RatFunc._make(self.num ** k, _ONE_P)
        if k < 0:
            return (RatFunc(1) / self) ** (-k)
        result = RatFunc._make(_ONE_P, _ONE_P)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den is _ONE_P and self.num.constant_value() == other
        if isinstance(other, LaurentPoly):
            return self.den is _ONE_P and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            c = self.num.constant_value() if self.den is _ONE_P else None
            self._hash = hash(c) if c is not None else hash((self.num, self.den))
        return self._hash

    def subst_q_inverse(self) -> "RatFunc":
        return RatFunc(self.num.subst_q_inverse(), self.den.subst_q_inverse())

    def constant_value(self):
        if self.den is _ONE_P:
            return self.num.constant_value()
        return None

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _lift(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc._make(LaurentPoly.const(x), _ONE_P)
    if isinstance(x, LaurentPoly):
        return RatFunc._make(x, _ONE_P)
    return NotImplemented


def _canon(num: LaurentPoly, den: LaurentPoly):
    if not den._c:
        raise EvaluationError("zero denominator")
    if not num._c:
        return _ZERO_P, _ONE_P
    if len(den._c) == 1:
        (e, c), = den._c.items()
        return num.shift(-e)._scale(Fraction(den._den, c)), _ONE_P
    lo_n, n, n_den = num.dense_ints()
    lo_d, dd, d_den = den.dense_ints()
    cn = _content(n)
    cd = _content(dd)
    pn = [c // cn for c in n] if cn != 1 else n
    pd = [c // cd for c in dd] if cd != 1 else dd
    g = _int_gcd(pn, pd)
    if len(g) > 1:
        pn = _int_exact_div(pn, g)
        pd = _int_exact_div(pd, g)
    # value = (cn / n_den) pn q^lo_n / ((cd / d_den) pd q^lo_d)
    scale = Fraction(cn * d_den, n_den * cd)
    sn, sd = scale.numerator, scale.denominator
    new_num = LaurentPoly._make({lo_n - lo_d + k: c * sn for k, c in enumerate(pn) if c}, sd)
    if len(pd) == 1:
        # pd is the constant 1 after primitive normalization
        return new_num, _ONE_P
    _guard(len(pd))
    return new_num, LaurentPoly._make({k: c for k, c in enumerate(pd) if c}, 1)


Q = RatFunc._make(LaurentPoly._make({1: 1}, 1), _ONE_P)
ONE = RatFunc._make(_ONE_P, _ONE_P)
ZERO = RatFunc._make(_ZERO_P, _ONE_P)

Scalar = Union[int, Fraction, RatFunc]


def is_symbolic(q) -> bool:
    return isinstance(q, RatFunc)


def inverse_of(q):
    """q⁻¹ in whichever backend q lives."""
    if isinstance(q, RatFunc):
        return q ** -1
    return 1 / Fraction(q)


# ---------------------------------------------------------------------------
# q-combinatorics


@lru_cache(maxsize=None)
def q_int(n: int, q: Scalar = Q) -> Scalar:
    """[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}; [-n] = -[n]."""
    if n < 0:
        return -q_int(-n, q)
    if n == 0:
        return 0 * q
    if q is Q or q == Q:
        return RatFunc._make(LaurentPoly._make({n - 1 - 2 * k: 1 for k in range(n)}, 1), _ONE_P)
    qi = inverse_of(q)
    return (q ** n - qi ** n) / (q - qi)


@lru_cache(maxsize=None)
def q_factorial(n: int, q: Scalar = Q) -> Scalar:
    if n < 0:
        raise ParameterError("q-factorial of a negative integer")
    out = 1 + 0 * q
    for k in range(1, n + 1):
        out = out * q_int(k, q)
    return out


@lru_cache(maxsize=None)
def q_binom(n: int, i: int, q: Scalar = Q) -> Scalar:
    """Symmetric q-binomial [n choose i], built by the q-Pascal rule."""
    if n < 0 or i < 0 or i > n:
        raise ParameterError(f"q_binom needs 0 <= i <= n, got n={n}, i={i}")
    if i == 0 or i == n:
        return 1 + 0 * q
    return q ** (-i) * q_binom(n - 1, i, q) + q ** (n - i) * q_binom(n - 1, i - 1, q)


def subst_q_inverse(s: Scalar) -> Scalar:
    if isinstance(s, (RatFunc, LaurentPoly)):
        return s.subst_q_inverse()
    return s


def eval_at(s: Scalar, q0: Rational) -> Fraction:
    """Exact value of a symbolic scalar at q = q0."""
    q0 = Fraction(q0)
    if q0 in (0, 1, -1):
        raise ParameterError("q0 must avoid 0, 1 and -1")
    if isinstance(s, LaurentPoly):
        return s.eval_at(q0)
    if isinstance(s, RatFunc):
        den = s.den.eval_at(q0)
        if den == 0:
            raise EvaluationError(f"denominator vanishes at q = {q0}")
        return s.num.eval_at(q0) / den
    return Fraction(s)


# ---------------------------------------------------------------------------
# text form


def _fmt_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_laurent(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = Fraction(p.terms[e])
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _fmt_rational(a)
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            body = qpart if a == 1 else f"{_fmt_rational(a)}*{qpart}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_scalar(s) -> str:
    """Canonical text form, e.g. ``q^3 - q^-3`` or ``(q)/(q^2 + 1)``."""
    if isinstance(s, RatFunc):
        if s.den is _ONE_P:
            return format_laurent(s.num)
        return f"({format_laurent(s.num)})/({format_laurent(s.den)})"
    if isinstance(s, LaurentPoly):
        return format_laurent(s)
    return _fmt_rational(s)


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|([-+*/()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, q, caret, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif q:
            out.append(("q", None))
        elif caret:
            out.append(("^", None))
        else:
            out.append((op, None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            raise ParseError(f"expected {kind!r} in {self.text!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def scalar(self) -> RatFunc:
        if self.peek() == "(":
            self.take("(")
            num = self.laurent()
            self.take(")")
            if self.peek() == "/":
                self.take("/")
                self.take("(")
                den = self.laurent()
                self.take(")")
            else:
                den = _ONE_P
        else:
            num, den = self.laurent(), _ONE_P
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        if not den.terms:
            raise ParseError(f"zero denominator in {self.text!r}")
        return RatFunc(num, den)

    def laurent(self) -> LaurentPoly:
        terms: dict = {}
        sign = 1
        if self.peek() in ("-", "+"):
            kind = self.peek()
            self.take(kind)
            sign = -1 if kind == "-" else 1
        while True:
            e, c = self.term()
            terms[e] = terms.get(e, 0) + sign * c
            if self.peek() in ("-", "+"):
                kind = self.peek()
                self.take(kind)
                sign = -1 if kind == "-" else 1
            else:
                break
        return LaurentPoly(terms)

    def term(self):
        c = Fraction(1)
        have = False
        if self.peek() == "num":
            c = Fraction(self.take("num"))
            have = True
            if self.peek() == "/" and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "num":
                self.take("/")
                den = self.take("num")
                if den == 0:
                    raise ParseError(f"zero denominator in {self.text!r}")
                c = c / den
            if self.peek() == "*":
                self.take("*")
                if self.peek() != "q":
                    raise ParseError(f"expected q after '*' in {self.text!r}")
        e = 0
        if self.peek() == "q":
            self.take("q")
            have = True
            e = 1
            if self.peek() == "^":
                self.take("^")
                neg = False
                if self.peek() in ("-", "+"):
                    neg = self.peek() == "-"
                    self.take(self.peek())
                e = self.take("num")
                e = -e if neg else e
        if not have:
            raise ParseError(f"malformed term in {self.text!r}")
        return e, c


def parse_scalar(text: str) -> RatFunc:
    """Parse the canonical text form (terms may come in any order)."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}")
    return _Parser(text).scalar()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Backend:
    """Symbolic (q0 is None) or numeric evaluation at a fixed rational q0."""

    q0: Fraction | None = None

    def __post_init__(self):
        if self.q0 is not None:
            q0 = Fraction(self.q0)
            if q0 in (0, 1, -1):
                raise ParameterError("q0 must avoid 0, 1 and -1")
            object.__setattr__(self, "q0", q0)

    @property
    def symbolic(self) -> bool:
        return self.q0 is None

    @property
    def q(self) -> Scalar:
        return Q if self.q0 is None else self.q0

    def coerce(self, s) -> Scalar:
        """Bring a scalar (possibly symbolic) into this backend."""
        if self.q0 is None:
            return s if isinstance(s, RatFunc) else _lift(s)
        if isinstance(s, (RatFunc, LaurentPoly)):
            return eval_at(s, self.q0)
        return Fraction(s)

    def parse(self, text: str) -> Scalar:
        return self.coerce(parse_scalar(text))

    def __str__(self):
        return "symbolic" if self.q0 is None else f"rational(q={_fmt_rational(self.q0)})"


SYMBOLIC = Backend()

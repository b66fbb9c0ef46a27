from fractions import Fraction

import sympy
from hypothesis import strategies as st

from equitable.exactla import ExactMatrix
from equitable.scalars import LaurentPoly, RatFunc, _lift

SQ = sympy.Symbol("q")


def to_sympy(s):
    """Independent rendering of a scalar as a sympy expression in q."""
    if isinstance(s, RatFunc):
        return to_sympy(s.num) / to_sympy(s.den)
    if isinstance(s, LaurentPoly):
        return sum((sympy.Rational(c.numerator, c.denominator) * SQ ** e
                    for e, c in ((e, Fraction(c)) for e, c in s.terms.items())), sympy.Integer(0))
    f = Fraction(s)
    return sympy.Rational(f.numerator, f.denominator)


def sympy_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(to_sympy(a) - b)) == 0


def to_sympy_matrix(m: ExactMatrix) -> sympy.Matrix:
    return sympy.Matrix(m.n_rows, m.n_cols, lambda i, j: to_sympy(m[i, j]))


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_fractions = small_fractions.filter(lambda x: x != 0)


@st.composite
def laurent_polys(draw, max_terms=4, max_exp=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(st.integers(-max_exp, max_exp))] = draw(nonzero_fractions)
    return LaurentPoly(terms)


@st.composite
def ratfuncs(draw):
    num = draw(laurent_polys())
    den = draw(laurent_polys().filter(lambda p: bool(p.terms)))
    return RatFunc(num, den)


def rat_matrices(n_rows, n_cols, elements=small_fractions):
    return st.lists(st.lists(elements, min_size=n_cols, max_size=n_cols), min_size=n_rows, max_size=n_rows).map(
        lambda rows: ExactMatrix(rows, n_cols))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])

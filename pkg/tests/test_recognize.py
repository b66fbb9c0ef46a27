import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import nonzero_fractions, small_fractions
from equitable.errors import NeedsHintError, NotAModuleError, NotRecurrentError, RecognitionError, ShapeError
from equitable.exactla import ExactMatrix
from equitable.recognize import (
    INDETERMINATE, Branch, ShapeTriple, bracket_report, detect_b, irreducibility_certificate, recognize_triple,
)
from equitable.repkit import BasisId, Generator, SpaceId, rep
from equitable.scalars import Q

X_ROW = BasisId.parse("[x]row")


def basis_one(d, q):
    return tuple(rep(SpaceId.V, X_ROW, g, d, q) for g in (Generator.x, Generator.y, Generator.z))


def scramble(mats, rng):
    out = []
    for m in mats:
        a1 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        a2 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
        out.append(ExactMatrix.identity(m.n_rows) * a1 + m * a2)
    return ShapeTriple(*out)


def test_detect_b_examples():
    assert detect_b([4, 1, Fraction(1, 4)]) == Fraction(1, 4)
    assert detect_b([3, 1, -1, -3]) == 1
    assert detect_b([-1, 1]) is INDETERMINATE
    assert detect_b([7]) is INDETERMINATE
    with pytest.raises(NotRecurrentError):
        detect_b([1, 1, 2])
    with pytest.raises(NotRecurrentError):
        detect_b([0, 1, 3, 4])


def test_detect_b_symbolic():
    assert detect_b([Q ** (3 - 2 * i) for i in range(4)]) == Q ** -2


@settings(max_examples=80, deadline=None)
@given(st.lists(small_fractions, min_size=1, max_size=6), small_fractions, nonzero_fractions)
def test_detect_b_is_affine_invariant(seq, a1, a2):
    try:
        b = detect_b(seq)
    except NotRecurrentError:
        with pytest.raises(NotRecurrentError):
            detect_b([a1 + a2 * s for s in seq])
        return
    moved = detect_b([a1 + a2 * s for s in seq])
    if b is INDETERMINATE:
        assert moved is INDETERMINATE
    else:
        assert moved == b


@settings(max_examples=40, deadline=None)
@given(small_fractions, nonzero_fractions, nonzero_fractions, st.integers(3, 7))
def test_detect_b_recovers_generated_ratio(a0, step, b, n):
    assume(b != -1)
    seq, diff = [a0], step
    for _ in range(n - 1):
        seq.append(seq[-1] + diff)
        diff *= b
    assert detect_b(seq) == b


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3), Fraction(5, 2)])
@pytest.mark.parametrize("d", range(2, 7))
def test_round_trip(q, d):
    rng = random.Random(1000 * d + int(q * 2))
    canon = basis_one(d, q)
    res = recognize_triple(scramble(canon, rng))
    assert res.branch is Branch.quantum
    assert res.b == q ** -2
    assert res.q in (q, 1 / q)
    assert res.certificate.passed
    assert res.normalized_triple == canon
    assert irreducibility_certificate(res.normalized_triple)


def test_round_trip_in_reversed_presentation():
    # [x]inv_row shape with y and z swapped: the relations hold with q⁻¹ in place of q
    q, d = Fraction(3), 4
    b = BasisId.parse("[x]inv_row")
    mats = tuple(rep(SpaceId.V, b, g, d, q) for g in (Generator.x, Generator.z, Generator.y))
    res = recognize_triple(ShapeTriple(*mats))
    assert res.branch is Branch.quantum and res.b == q ** 2 and res.q == 1 / q
    assert res.certificate.passed and res.normalized_triple == mats


def test_symbolic_round_trip():
    res = recognize_triple(ShapeTriple(*basis_one(3, Q)))
    assert res.q == Q and res.b == Q ** -2 and res.certificate.passed


def test_needs_hint():
    mats = basis_one(3, Fraction(2))
    scaled = ShapeTriple(*(m * 1 for m in mats))
    # b = 1/4 is a rational square, so no hint is needed
    assert recognize_triple(scaled).q == 2
    # b = 1/2: b⁻¹ has no rational root
    x = ExactMatrix.diag([0, 4, 6])
    y = ExactMatrix([[6, 0, 0], [1, 4, 0], [0, 1, 0]])
    z = ExactMatrix([[6, 1, 0], [0, 4, 1], [0, 0, 0]])
    with pytest.raises(NeedsHintError):
        recognize_triple(ShapeTriple(x, y, z))


def test_mismatched_b():
    x = ExactMatrix.diag([4, 1, Fraction(1, 4)])
    y = ExactMatrix([[9, 0, 0], [1, 3, 0], [0, 1, 1]])
    z = ExactMatrix([[Fraction(1, 4), 1, 0], [0, 1, 1], [0, 0, 4]])
    with pytest.raises(RecognitionError):
        recognize_triple(ShapeTriple(x, y, z))


def test_wrong_relations_are_not_a_module():
    x, y, z = basis_one(3, Fraction(2))
    y2 = ExactMatrix([[y[i, j] * (3 if i == j + 1 else 1) for j in range(4)] for i in range(4)])
    with pytest.raises(NotAModuleError):
        recognize_triple(ShapeTriple(x, y2, z))


def test_classical_fixture():
    x = ExactMatrix.diag([-1, 1])
    y = ExactMatrix([[1, 0], [1, -1]])
    z = ExactMatrix([[1, -4], [0, -1]])
    assert bracket_report(x, y, z).passed
    res = recognize_triple(ShapeTriple(x, y, z), b_hint=1)
    assert res.branch is Branch.classical_sl2 and res.b == 1
    assert res.certificate.passed


def test_underdetermined():
    x, y, z = basis_one(1, Fraction(2))
    res = recognize_triple(ShapeTriple(x, y, z))
    assert res.branch is Branch.underdetermined and res.b is INDETERMINATE
    res = recognize_triple(ShapeTriple(x, y, z), q_hint=Fraction(2))
    assert res.branch is Branch.quantum and res.certificate.passed
    one = ExactMatrix([[5]])
    assert recognize_triple(ShapeTriple(one, one, one)).branch is Branch.underdetermined


def test_shape_errors():
    x, y, z = basis_one(2, Fraction(2))
    bad_y = ExactMatrix([[y[i, j] if (i, j) != (2, 1) else 0 for j in range(3)] for i in range(3)])
    with pytest.raises(ShapeError):
        ShapeTriple(x, bad_y, z)
    with pytest.raises(ShapeError):
        ShapeTriple(y, x, z)
    with pytest.raises(ShapeError):
        ShapeTriple(x, y, ExactMatrix.identity(2))


def test_irreducibility_examples():
    assert irreducibility_certificate(basis_one(2, Fraction(2)))
    i2 = ExactMatrix.identity(2)
    assert not irreducibility_certificate((i2, i2, i2))
    one = ExactMatrix([[3]])
    assert irreducibility_certificate((one, one, one))
    # a non-diagonal presentation of the same irreducible module
    x, y, z = basis_one(3, Fraction(3))
    assert irreducibility_certificate((y, z, x + y))
    # direct sum of two irreducibles is reducible
    a = basis_one(1, Fraction(2))
    blocks = tuple(ExactMatrix([[m[0, 0], m[0, 1], 0, 0], [m[1, 0], m[1, 1], 0, 0],
                                [0, 0, m[0, 0], m[0, 1]], [0, 0, m[1, 0], m[1, 1]]]) for m in a)
    assert not irreducibility_certificate(blocks)

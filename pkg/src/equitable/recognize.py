"""Recognize a module from a diagonal / lower bidiagonal / upper bidiagonal triple.

The eigenvalue sequences are read off the diagonals.  In the reference
shape (x diagonal K, y lower, z upper) the diagonals of Y and Z run in the
opposite order to that of X, so those two are read bottom to top first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import isqrt

from .errors import NeedsHintError, NotAModuleError, NotRecurrentError, ParameterError, RecognitionError, ShapeError
from .exactla import ExactMatrix, flatten, span
from .report import VerificationReport
from .scalars import Q, RatFunc, Scalar, inverse_of


class _Indeterminate:
    def __repr__(self):
        return "INDETERMINATE"

    def __str__(self):
        return "indeterminate"


INDETERMINATE = _Indeterminate()


class Branch(Enum):
    quantum = "quantum"
    classical_sl2 = "classical_sl2"
    underdetermined = "underdetermined"


@dataclass(frozen=True)
class ShapeTriple:
    X: ExactMatrix
    Y: ExactMatrix
    Z: ExactMatrix

    def __post_init__(self):
        n = self.X.n_rows
        for name, m in (("X", self.X), ("Y", self.Y), ("Z", self.Z)):
            if m.shape != (n, n):
                raise ShapeError(f"{name} must be {n}×{n}, got {m.shape}")
        if n == 0:
            raise ShapeError("empty matrices")
        for i in range(n):
            for j in range(n):
                if i != j and self.X[i, j]:
                    raise ShapeError(f"X is not diagonal at ({i},{j})")
                if j not in (i, i - 1) and self.Y[i, j]:
                    raise ShapeError(f"Y is not lower bidiagonal at ({i},{j})")
                if j not in (i, i + 1) and self.Z[i, j]:
                    raise ShapeError(f"Z is not upper bidiagonal at ({i},{j})")
        for i in range(1, n):
            if not self.Y[i, i - 1]:
                raise ShapeError(f"Y has a zero subdiagonal entry at ({i},{i - 1})")
            if not self.Z[i - 1, i]:
                raise ShapeError(f"Z has a zero superdiagonal entry at ({i - 1},{i})")

    @property
    def d(self) -> int:
        return self.X.n_rows - 1


@dataclass
class RecognitionResult:
    b: object
    branch: Branch
    q: Scalar | None
    normalized_triple: tuple | None
    certificate: VerificationReport
    affine: dict = field(default_factory=dict)


def detect_b(seq) -> object:
    """The common ratio b of consecutive differences, or INDETERMINATE for length ≤ 2."""
    seq = list(seq)
    if not seq:
        raise ParameterError("detect_b needs a nonempty sequence")
    for i in range(1, len(seq)):
        if seq[i - 1] == seq[i]:
            raise NotRecurrentError(f"entries {i - 1} and {i} coincide")
    if len(seq) <= 2:
        return INDETERMINATE
    ratios = [(seq[i] - seq[i + 1]) / (seq[i - 1] - seq[i]) for i in range(1, len(seq) - 1)]
    b = ratios[0]
    for k, r in enumerate(ratios[1:], start=2):
        if r != b:
            raise NotRecurrentError(f"difference ratio at position {k} differs from the first")
    return b


def _same_b(a, b) -> bool:
    if a is INDETERMINATE or b is INDETERMINATE:
        return a is b
    return a == b


def _exact_sqrt(r) -> Scalar | None:
    """Positive rational square root, or None if r is not a rational square."""
    if isinstance(r, RatFunc):
        c = r.constant_value()
        if c is None:
            return None
        r = c
    r = Fraction(r)
    if r <= 0:
        return None
    p, s = isqrt(r.numerator), isqrt(r.denominator)
    if p * p == r.numerator and s * s == r.denominator:
        return Fraction(p, s)
    return None


def _find_q(b, q_hint):
    if q_hint is not None:
        if q_hint ** -2 != b:
            raise RecognitionError(f"q hint does not satisfy q^-2 = b")
        return q_hint
    if isinstance(b, RatFunc) and b == Q ** -2:
        return Q
    root = _exact_sqrt(1 / b)
    if root is None:
        raise NeedsHintError("b⁻¹ has no square root in the working field; supply a q hint")
    return root


def _diag(m: ExactMatrix) -> list:
    return [m[i, i] for i in range(m.n_rows)]


def _normalize(m: ExactMatrix, a1, a2) -> ExactMatrix:
    n = m.n_rows
    return (m - ExactMatrix.identity(n) * a1) * (1 / a2)


def bracket_report(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix, title: str = "sl2 brackets") -> VerificationReport:
    rep = VerificationReport(title)
    for name, a, b in (("[X,Y]", x, y), ("[Y,Z]", y, z), ("[Z,X]", z, x)):
        rep.expect_equal(f"{name} = 2 sum", a @ b - b @ a, (a + b) * 2)
    return rep


def equitable_report(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix, q, title: str = "equitable relations") -> VerificationReport:
    rep = VerificationReport(title)
    n = x.n_rows
    qi = inverse_of(q)
    eye = ExactMatrix.identity(n)
    for name, a, b in (("xy", x, y), ("yz", y, z), ("zx", z, x)):
        rep.expect_equal(f"equitable ({name})", a @ b * q - b @ a * qi, eye * (q - qi))
    return rep


def recognize_triple(t: ShapeTriple, q_hint: Scalar | None = None, b_hint: Scalar | None = None) -> RecognitionResult:
    d = t.d
    cert = VerificationReport(f"recognition d={d}")
    sx = _diag(t.X)
    bx = detect_b(sx)
    oriented = {}
    for name, m in (("Y", t.Y), ("Z", t.Z)):
        seq = _diag(m)
        for label, cand in (("reversed", seq[::-1]), ("forward", seq)):
            if _same_b(detect_b(cand), bx):
                oriented[name] = (label, cand)
                break
        else:
            raise RecognitionError(f"the diagonal of {name} is not recurrent with the same b as X")
        cert.add(f"{name} diagonal read {oriented[name][0]}", True)
    b = bx
    if b is INDETERMINATE:
        if b_hint is not None:
            b = b_hint
        elif q_hint is not None:
            b = q_hint ** -2
        else:
            return RecognitionResult(INDETERMINATE, Branch.underdetermined, None, None, cert)
    elif b_hint is not None and b_hint != b:
        raise RecognitionError("declared b disagrees with the diagonal sequences")
    if not b:
        raise RecognitionError("b must be nonzero")

    seqs = {"X": sx, "Y": oriented["Y"][1], "Z": oriented["Z"][1]}
    mats = {"X": t.X, "Y": t.Y, "Z": t.Z}
    affine = {}
    if b == 1:
        targets = [2 * i - d for i in range(d + 1)]
        q = None
        for name, s in seqs.items():
            a2 = (s[1] - s[0]) / 2 if d else 1
            a1 = s[0] + a2 * d
            affine[name] = (a1, a2)
    else:
        q = _find_q(b, q_hint)
        targets = [q ** (d - 2 * i) for i in range(d + 1)]
        for name, s in seqs.items():
            if d:
                a2 = (s[0] - s[1]) / (targets[0] - targets[1])
                a1 = s[0] - a2 * targets[0]
            else:
                a1, a2 = s[0] - 1, 1
            affine[name] = (a1, a2)
    for name, s in seqs.items():
        a1, a2 = affine[name]
        cert.add(f"{name} diagonal affine to target", all(a1 + a2 * tt == v for tt, v in zip(targets, s)))
    norm = tuple(_normalize(mats[k], *affine[k]) for k in ("X", "Y", "Z"))
    if b == 1:
        cert.extend(bracket_report(*norm))
        branch = Branch.classical_sl2
    else:
        cert.extend(equitable_report(*norm, q))
        branch = Branch.quantum
    if not cert.passed:
        raise NotAModuleError("normalized triple fails the defining relations:\n" + "\n".join(cert.lines()))
    return RecognitionResult(b, branch, q, norm, cert, affine)


def _orbit_span(v, mats, n):
    sp = span([v], n)
    while True:
        vecs = sp.vectors()
        grown = span(vecs + [m.apply(u) for m in mats for u in vecs], n)
        if grown.dim == sp.dim:
            return sp
        sp = grown


def irreducibility_certificate(triple) -> bool:
    """True iff no proper nonzero subspace is invariant under all three matrices.

    When one matrix is diagonal with distinct entries every invariant subspace
    is spanned by coordinate vectors, so closing the orbit of each coordinate
    vector decides the question.  Otherwise the algebra generated by the
    matrices must be all of End(V).
    """
    mats = list(triple)
    n = mats[0].n_rows
    if n <= 1:
        return True
    for m in mats:
        diag = _diag(m)
        if all(not m[i, j] for i in range(n) for j in range(n) if i != j) and len(set(diag)) == n:
            for i in range(n):
                e = [1 if k == i else 0 for k in range(n)]
                if _orbit_span(e, mats, n).dim != n:
                    return False
            return True
    words = [ExactMatrix.identity(n)]
    sp = span([flatten(words[0])], n * n)
    frontier = list(words)
    while frontier:
        new = []
        for w in frontier:
            for m in mats:
                p = m @ w
                grown = span(sp.vectors() + [flatten(p)], n * n)
                if grown.dim > sp.dim:
                    sp = grown
                    new.append(p)
        frontier = new
    return sp.dim == n * n

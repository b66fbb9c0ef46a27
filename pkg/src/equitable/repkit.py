"""Canonical matrix families and the representing matrices on V and V*.

Indices run over 0..d.  Every builder takes the scalar ``q`` explicitly, so
the same code serves the symbolic and the numeric backend, and "replace q by
q⁻¹" is just a call with the inverted scalar.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import ParameterError
from .exactla import ExactMatrix, rank, z_conjugate
from .report import VerificationReport
from .scalars import Q, Scalar, inverse_of, q_binom, q_int


class Axis(Enum):
    x = "x"
    y = "y"
    z = "z"

    @property
    def shift(self) -> int:
        return "xyz".index(self.value)

    def rotate(self, k: int = 1) -> "Axis":
        return Axis("xyz"[(self.shift + k) % 3])


class Generator(Enum):
    x = "x"
    y = "y"
    y_inv = "y_inv"
    z = "z"
    n_x = "n_x"
    n_y = "n_y"
    n_z = "n_z"

    def rotate(self, k: int = 1) -> "Generator":
        if self is Generator.y_inv:
            raise ParameterError("y_inv has no rotated counterpart")
        if self.value.startswith("n_"):
            return Generator("n_" + Axis(self.value[2]).rotate(k).value)
        return Generator(Axis(self.value).rotate(k).value)

    @property
    def nilpotent(self) -> bool:
        return self.value.startswith("n_")


EQUITABLE = (Generator.x, Generator.y, Generator.z)
NILPOTENT = (Generator.n_x, Generator.n_y, Generator.n_z)


def n_of(axis: Axis) -> Generator:
    return Generator("n_" + axis.value)


class Flavor(Enum):
    row = "row"
    col = "col"


class SpaceId(Enum):
    V = "V"
    V_dual = "V*"


@dataclass(frozen=True)
class BasisId:
    axis: Axis
    inverted: bool
    flavor: Flavor

    def __str__(self):
        return f"[{self.axis.value}]" + ("inv_" if self.inverted else "") + self.flavor.value

    def rotate(self, k: int = 1) -> "BasisId":
        return BasisId(self.axis.rotate(k), self.inverted, self.flavor)

    def inversion(self) -> "BasisId":
        return BasisId(self.axis, not self.inverted, self.flavor)

    @classmethod
    def parse(cls, text: str) -> "BasisId":
        t = text.strip().replace("^", "").replace("{", "").replace("}", "").replace("_", "")
        for b in ALL_BASES:
            if str(b).replace("_", "") == t:
                return b
        raise ParameterError(f"unknown basis {text!r}; expected one of {[str(b) for b in ALL_BASES]}")


ALL_BASES = tuple(BasisId(a, inv, f) for a in Axis for inv in (False, True) for f in Flavor)


def dual_basis(b: BasisId) -> BasisId:
    """The basis of the partner space dual to b: row pairs with inv col and col with inv row."""
    other = Flavor.col if b.flavor is Flavor.row else Flavor.row
    return BasisId(b.axis, not b.inverted, other)


# ---------------------------------------------------------------------------
# canonical families


@dataclass(frozen=True)
class CanonicalFamily:
    base: str
    transposed: bool = False
    q_inverted: bool = False
    z_conjugated: bool = False

    def __post_init__(self):
        if self.base not in ("K", "Z", "E", "N", "T", "P"):
            raise ParameterError(f"unknown family {self.base!r}; expected one of K, Z, E, N, T, P")

    def __str__(self):
        if self.base == "Z":
            core = "Z"
        else:
            core = self.base + ("_{q^-1}" if self.q_inverted else "_q") + ("^t" if self.transposed else "")
        return f"Z{core}Z" if self.z_conjugated else core


def _k(d: int, q) -> ExactMatrix:
    return ExactMatrix.diag([q ** (d - 2 * i) for i in range(d + 1)])


def _z(d: int, q) -> ExactMatrix:
    one = 1 + 0 * q
    return ExactMatrix.from_function(d + 1, d + 1, lambda i, j: one if i + j == d else 0 * q)


def _e(d: int, q) -> ExactMatrix:
    def f(i, j):
        if i == j:
            return q ** (2 * i - d)
        if j == i + 1:
            return q ** d - q ** (2 * j - 2 - d)
        return 0 * q
    return ExactMatrix.from_function(d + 1, d + 1, f)


def _n(d: int, q) -> ExactMatrix:
    def f(i, j):
        if j == i - 1:
            return q ** (1 - i) * q_int(i, q)
        return 0 * q
    return ExactMatrix.from_function(d + 1, d + 1, f)


def _t(d: int, q) -> ExactMatrix:
    qi = inverse_of(q)

    def f(i, j):
        if j == i - 1:
            return q ** (3 * i - 2 * d - 1) * q_int(i, q)
        if j == i + 1:
            # entry (j-1, j) of the superdiagonal
            return -q ** (3 * j - d - 2) * q_int(d - j + 1, q)
        if i == j:
            return (q ** (2 * i - d) * q_int(i, q) * q_int(d - i + 1, q) * (q - qi)
                    - q ** (2 * i - d + 1) * q_int(2 * i - d, q))
        return 0 * q
    return ExactMatrix.from_function(d + 1, d + 1, f)


def _p(d: int, q) -> ExactMatrix:
    def f(i, j):
        if i + j < d:
            return 0 * q
        return (-1) ** (d - j) * q ** ((d - j) * (1 - i)) * q_binom(i, d - j, q)
    return ExactMatrix.from_function(d + 1, d + 1, f)


_BUILDERS = {"K": _k, "Z": _z, "E": _e, "N": _n, "T": _t, "P": _p}


@lru_cache(maxsize=4096)
def build_canonical(f: CanonicalFamily, d: int, q: Scalar = Q) -> ExactMatrix:
    """The (d+1)×(d+1) matrix of family f; modifiers: q-inversion, transpose, Z-conjugation."""
    if d < 0:
        raise ParameterError("d must be nonnegative")
    m = _BUILDERS[f.base](d, inverse_of(q) if f.q_inverted else q)
    if f.transposed:
        m = m.T
    if f.z_conjugated:
        m = z_conjugate(m)
    return m


def family(base: str, t: bool = False, inv: bool = False, z: bool = False) -> CanonicalFamily:
    return CanonicalFamily(base, t, inv, z)


K_q = family("K")
K_qi = family("K", inv=True)

# Representing matrices for the three [x] bases of V; the [y] and [z] rows
# follow by rotating generator labels.  Keys: (inverted, flavor).
_EQUITABLE_X = {
    (False, Flavor.row): {Generator.x: K_q, Generator.y: family("E", inv=True, z=True), Generator.z: family("E")},
    (False, Flavor.col): {Generator.x: K_q, Generator.y: family("E", t=True),
                          Generator.z: family("E", t=True, inv=True, z=True)},
    (True, Flavor.row): {Generator.x: K_qi, Generator.y: family("E", inv=True), Generator.z: family("E", z=True)},
    (True, Flavor.col): {Generator.x: K_qi, Generator.y: family("E", t=True, z=True),
                         Generator.z: family("E", t=True, inv=True)},
}

_NILPOTENT_X = {
    (False, Flavor.row): {Generator.n_x: (1, family("T")), Generator.n_y: (-1, family("N", inv=True, z=True)),
                          Generator.n_z: (1, family("N"))},
    (False, Flavor.col): {Generator.n_x: (1, family("T", t=True)), Generator.n_y: (1, family("N", t=True)),
                          Generator.n_z: (-1, family("N", t=True, inv=True, z=True))},
    (True, Flavor.row): {Generator.n_x: (-1, family("T", inv=True)), Generator.n_y: (-1, family("N", inv=True)),
                         Generator.n_z: (1, family("N", z=True))},
    (True, Flavor.col): {Generator.n_x: (-1, family("T", t=True, inv=True)),
                         Generator.n_y: (1, family("N", t=True, z=True)),
                         Generator.n_z: (-1, family("N", t=True, inv=True))},
}


def rep_family(b: BasisId, g: Generator) -> tuple[int, CanonicalFamily]:
    """(sign, family) representing g on V in basis b."""
    h = g.rotate(-b.axis.shift)
    key = (b.inverted, b.flavor)
    if h.nilpotent:
        return _NILPOTENT_X[key][h]
    return 1, _EQUITABLE_X[key][h]


@lru_cache(maxsize=8192)
def rep(s: SpaceId, b: BasisId, g: Generator, d: int, q: Scalar = Q) -> ExactMatrix:
    """Matrix of g on V (or V*) with respect to basis b; V* is V with q replaced by q⁻¹."""
    if g is Generator.y_inv:
        return rep(s, b, Generator.y, d, q).inverse()
    qq = q if s is SpaceId.V else inverse_of(q)
    sign, fam = rep_family(b, g)
    m = build_canonical(fam, d, qq)
    return -m if sign < 0 else m


def space_q(s: SpaceId, q: Scalar) -> Scalar:
    """The parameter of the algebra acting on s: q on V, q⁻¹ on V*."""
    return q if s is SpaceId.V else inverse_of(q)


def eigenvalue(s: SpaceId, i: int, d: int, q: Scalar) -> Scalar:
    """Eigenvalue of component i of the decompositions of s."""
    return space_q(s, q) ** (d - 2 * i)


def relation_report(mats: dict, d: int, qq: Scalar, title: str) -> VerificationReport:
    """Check the defining relations on matrices for x, y, y_inv, z, n_x, n_y, n_z."""
    g = Generator
    rep_ = VerificationReport(title)
    n = d + 1
    one = 1 + 0 * qq
    eye = ExactMatrix.identity(n, one)
    zero = ExactMatrix.zeros(n, n)
    x, y, z, yi = mats[g.x], mats[g.y], mats[g.z], mats[g.y_inv]
    nx, ny, nz = mats[g.n_x], mats[g.n_y], mats[g.n_z]
    qi = inverse_of(qq)
    c = qq - qi

    rep_.expect_equal("y y_inv = 1", y @ yi, eye)
    for name, a, b in (("xy", x, y), ("yz", y, z), ("zx", z, x)):
        rep_.expect_equal(f"equitable ({name})", a @ b * qq - b @ a * qi, eye * c)

    q2, qm2 = qq ** 2, qq ** -2
    for name, a, b, f in (("x n_y", x, ny, q2), ("x n_z", x, nz, qm2), ("y n_z", y, nz, q2),
                          ("y n_x", y, nx, qm2), ("z n_x", z, nx, q2), ("z n_y", z, ny, qm2)):
        rep_.expect_equal(f"commutation {name}", a @ b, b @ a * f)

    rep_.expect_equal("reconstruct x from n_z, y_inv", x, yi - nz @ yi * (qi * c))
    rep_.expect_equal("reconstruct z from n_x, y_inv", z, yi - nx @ yi * (qq * c))

    for name, nm, a, b, ab in (("n_x", nx, y, z, "yz"), ("n_y", ny, z, x, "zx"), ("n_z", nz, x, y, "xy")):
        rep_.expect_equal(f"{name} via {ab}", nm * c, (eye - a @ b) * qq)
        rep_.expect_equal(f"{name} via {ab[::-1]}", nm * c, (eye - b @ a) * qi)

    for name, nm in (("n_x", nx), ("n_y", ny), ("n_z", nz)):
        rep_.expect_equal(f"nilpotent {name}^(d+1) = 0", nm ** (d + 1), zero)
    return rep_


def verify_algebra(s: SpaceId, b: BasisId, d: int, q: Scalar = Q) -> VerificationReport:
    mats = {g: rep(s, b, g, d, q) for g in Generator}
    return relation_report(mats, d, space_q(s, q), f"algebra {s.value} {b} d={d}")


def dagger_transpose_check(b: BasisId, d: int, q: Scalar = Q) -> VerificationReport:
    """The transpose of g on V in basis b equals g† on V* in the dual basis."""
    out = VerificationReport(f"dagger-transpose {b} d={d}")
    bd = dual_basis(b)
    for g in Generator:
        lhs = rep(SpaceId.V, b, g, d, q).T
        rhs = rep(SpaceId.V_dual, bd, g, d, q)
        if g.nilpotent:
            rhs = -rhs
        out.expect_equal(f"{g.value} on V in {b} vs V* in {bd}", lhs, rhs)
    return out


def spectrum_check(s: SpaceId, b: BasisId, g: Generator, d: int, q: Scalar = Q) -> bool:
    """g has the d+1 distinct eigenvalues of s: each shift is singular and their product vanishes."""
    m = rep(s, b, g, d, q)
    n = d + 1
    prod = ExactMatrix.identity(n)
    for i in range(n):
        shifted = m - ExactMatrix.identity(n) * eigenvalue(s, i, d, q)
        if rank(shifted) != d:
            return False
        prod = prod @ shifted
    return prod.is_zero()

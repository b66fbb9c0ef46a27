"""Concrete coordinate model of V and V*.

V is coordinatized by its normalized [y]row basis, so η_y is the all-ones
vector, and V* by the dual basis ([y]inv_col), so the pairing is the plain
dot product.  The remaining five η-vectors are kernel vectors of the
nilpotent generators scaled to realize the five free pairing values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import ConsistencyError, ParameterError, ParseError
from .exactla import ExactMatrix, Subspace, column_space, kernel, kernel_vectors
from .repkit import (ALL_BASES, Axis, BasisId, Flavor, Generator, SpaceId, eigenvalue, n_of, rep)
from .scalars import SYMBOLIC, Backend, Scalar, q_factorial

PAIR_KEYS = ("xy", "yz", "zx", "yx", "zy")


@dataclass(frozen=True)
class FreeScalars:
    """The pairings (η_x,η*_y), (η_y,η*_z), (η_z,η*_x), (η_y,η*_x), (η_z,η*_y)."""

    xy: Scalar = 1
    yz: Scalar = 1
    zx: Scalar = 1
    yx: Scalar = 1
    zy: Scalar = 1

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, k) for k in PAIR_KEYS)

    @classmethod
    def parse(cls, text: str, backend: Backend = SYMBOLIC) -> "FreeScalars":
        """Parse ``xy*=2,yz*=3/2,...``; unspecified keys default to 1."""
        values = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            if "=" not in part:
                raise ParseError(f"expected key=value, got {part!r}")
            key, val = (s.strip() for s in part.split("=", 1))
            key = key.rstrip("*").replace("*", "")
            if key not in PAIR_KEYS:
                raise ParseError(f"unknown pairing {key!r}; expected one of {[k + '*' for k in PAIR_KEYS]}")
            values[key] = backend.parse(val)
        return cls(**values)


@dataclass(frozen=True)
class DecompId:
    axis: Axis
    inverted: bool = False

    def __str__(self):
        return f"[{self.axis.value}]" + ("inv" if self.inverted else "")


ALL_DECOMPS = tuple(DecompId(a, inv) for a in Axis for inv in (False, True))


@dataclass(frozen=True)
class EtaVector:
    space: SpaceId
    axis: Axis
    coords: tuple


@dataclass(frozen=True)
class ModuleSpec:
    d: int
    backend: Backend = SYMBOLIC
    free: FreeScalars = field(default_factory=FreeScalars)
    derived_scalar: Scalar = 1
    epsilon: int = 1

    @property
    def q(self) -> Scalar:
        return self.backend.q

    @property
    def dim(self) -> int:
        return self.d + 1

    def pairing(self, u: Axis, v: Axis) -> Scalar:
        """The prescribed value of (η_u, η*_v) for u ≠ v."""
        if u is v:
            raise ParameterError("pairing of equal axes is not a free parameter")
        key = u.value + v.value
        if key == "xz":
            return self.derived_scalar
        return getattr(self.free, key)

    @cached_property
    def _mats(self) -> dict:
        ref = {SpaceId.V: REFERENCE_BASIS[SpaceId.V], SpaceId.V_dual: REFERENCE_BASIS[SpaceId.V_dual]}
        return {s: {g: rep(s, ref[s], g, self.d, self.q) for g in Generator} for s in SpaceId}

    def matrix(self, s: SpaceId, g: Generator) -> ExactMatrix:
        """Matrix of g in the reference coordinates of s."""
        return self._mats[s][g]

    @cached_property
    def _etas(self) -> dict:
        return _solve_etas(self)

    def eta_coords(self, s: SpaceId, axis: Axis) -> tuple:
        return self._etas[(s, axis)]


REFERENCE_BASIS = {
    SpaceId.V: BasisId(Axis.y, False, Flavor.row),
    SpaceId.V_dual: BasisId(Axis.y, True, Flavor.col),
}


def make_spec(d: int, backend: Backend = SYMBOLIC, free_scalars: FreeScalars | None = None) -> ModuleSpec:
    if d < 0:
        raise ParameterError("d must be nonnegative")
    free = free_scalars or FreeScalars()
    vals = [backend.coerce(v) for v in free.as_tuple()]
    if any(not v for v in vals):
        raise ParameterError("free pairing scalars must be nonzero")
    free = FreeScalars(*vals)
    q = backend.q
    derived = free.xy * free.yz * free.zx * (-1) ** d * q ** (-d * (d - 1)) / (free.yx * free.zy)
    return ModuleSpec(d, backend, free, backend.coerce(derived))


def dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def _kernel_line(m: ExactMatrix) -> tuple:
    vecs = kernel_vectors(m)
    if len(vecs) != 1:
        raise ConsistencyError(f"expected a one-dimensional kernel, got dimension {len(vecs)}")
    return vecs[0]


def _solve_etas(spec: ModuleSpec) -> dict:
    V, W = SpaceId.V, SpaceId.V_dual
    base = {(s, a): _kernel_line(spec.matrix(s, n_of(a))) for s in SpaceId for a in Axis}
    ones = tuple(1 + 0 * spec.q for _ in range(spec.dim))
    if any(spec.matrix(V, Generator.n_y).apply(ones)):
        raise ConsistencyError("all-ones vector is not killed by n_y")
    x, y, z = Axis.x, Axis.y, Axis.z
    e = {y: ones, x: base[(V, x)], z: base[(V, z)]}
    f = {a: base[(W, a)] for a in Axis}

    def p(u, v):
        val = dot(e[u], f[v])
        if not val:
            raise ConsistencyError(f"unscaled pairing ({u.value},{v.value}*) vanishes")
        return val

    t_z = spec.pairing(y, z) / p(y, z)
    t_x = spec.pairing(y, x) / p(y, x)
    s_z = spec.pairing(z, x) / (t_x * p(z, x))
    t_y = spec.pairing(z, y) / (s_z * p(z, y))
    s_x = spec.pairing(x, y) / (t_y * p(x, y))
    scale_v = {x: s_x, y: 1, z: s_z}
    scale_w = {x: t_x, y: t_y, z: t_z}
    out = {}
    for a in Axis:
        out[(V, a)] = tuple(c * scale_v[a] for c in e[a])
        out[(W, a)] = tuple(c * scale_w[a] for c in f[a])
    if dot(out[(V, x)], out[(W, z)]) != spec.derived_scalar:
        raise ConsistencyError("(η_x, η*_z) does not match the derived pairing")
    return out


def eta(spec: ModuleSpec, s: SpaceId, axis: Axis) -> EtaVector:
    return EtaVector(s, axis, spec.eta_coords(s, axis))


def pairing_value(spec: ModuleSpec, u: Axis, v: Axis) -> Scalar:
    """(η_u, η*_v) computed from the constructed vectors."""
    return dot(spec.eta_coords(SpaceId.V, u), spec.eta_coords(SpaceId.V_dual, v))


@lru_cache(maxsize=2048)
def decomposition(spec: ModuleSpec, s: SpaceId, did: DecompId) -> tuple[Subspace, ...]:
    """Component i is the eigenspace of the axis generator for the i-th eigenvalue."""
    m = spec.matrix(s, Generator(did.axis.value))
    n = spec.dim
    comps = []
    for i in range(n):
        shifted = m - ExactMatrix.identity(n) * eigenvalue(s, i, spec.d, spec.q)
        comps.append(kernel(shifted))
    if did.inverted:
        comps.reverse()
    return tuple(comps)


def adapted_basis(spec: ModuleSpec, s: SpaceId, did: DecompId) -> ExactMatrix:
    """Matrix whose column i spans component i."""
    comps = decomposition(spec, s, did)
    for c in comps:
        if c.dim != 1:
            raise ConsistencyError("decomposition component is not one-dimensional")
    return ExactMatrix.from_columns([c.vectors()[0] for c in comps], spec.dim)


@lru_cache(maxsize=1024)
def flag(spec: ModuleSpec, s: SpaceId, axis: Axis) -> tuple[Subspace, ...]:
    """Member i is n_axis^{d-i} applied to the whole space."""
    nm = spec.matrix(s, n_of(axis))
    d = spec.d
    powers = [ExactMatrix.identity(d + 1)]
    for _ in range(d):
        powers.append(powers[-1] @ nm)
    return tuple(column_space(powers[d - i]) for i in range(d + 1))


def _nil_orbit(spec: ModuleSpec, s: SpaceId, n_axis: Axis, eta_axis: Axis) -> list[tuple]:
    nm = spec.matrix(s, n_of(n_axis))
    v = spec.eta_coords(s, eta_axis)
    out = [v]
    for _ in range(spec.d):
        v = nm.apply(v)
        out.append(v)
    return out


def _c2(k: int) -> int:
    return k * (k - 1) // 2


def _closed_form(spec: ModuleSpec, s: SpaceId, b: BasisId, version: int) -> list[tuple]:
    """Basis vectors from one of the two closed-form expressions."""
    d, q = spec.d, spec.q
    a = b.axis
    nb, nc = a.rotate(1), a.rotate(2)
    P = spec.pairing

    def F(k):
        return q_factorial(k, q)

    # each entry: i -> (coefficient, nilpotent axis, power, eta axis)
    if s is SpaceId.V:
        if b.flavor is Flavor.row and not b.inverted:
            if version == 1:
                f = lambda i: (q ** _c2(i) / F(i) * P(a, nc) / P(nb, nc), nc, i, nb)
            else:
                f = lambda i: ((-1) ** (d - i) * q ** -_c2(d - i) / F(d - i) * P(a, nb) / P(nc, nb), nb, d - i, nc)
        elif b.flavor is Flavor.col and not b.inverted:
            if version == 1:
                f = lambda i: ((-1) ** i * F(d - i) * q ** (i * (1 - d) + _c2(i)) / (F(d) * P(nb, a)), nc, i, nb)
            else:
                f = lambda i: (F(i) * q ** ((d - i) * (d - 1) - _c2(d - i)) / (F(d) * P(nc, a)), nb, d - i, nc)
        elif b.flavor is Flavor.row:
            if version == 1:
                f = lambda i: ((-1) ** i * q ** -_c2(i) / F(i) * P(a, nb) / P(nc, nb), nb, i, nc)
            else:
                f = lambda i: (q ** _c2(d - i) / F(d - i) * P(a, nc) / P(nb, nc), nc, d - i, nb)
        else:
            if version == 1:
                f = lambda i: (F(d - i) * q ** (i * (d - 1) - _c2(i)) / (F(d) * P(nc, a)), nb, i, nc)
            else:
                f = lambda i: ((-1) ** (d - i) * F(i) * q ** ((d - i) * (1 - d) + _c2(d - i)) / (F(d) * P(nb, a)),
                               nc, d - i, nb)
    else:
        if b.flavor is Flavor.row and not b.inverted:
            if version == 1:
                f = lambda i: (q ** -_c2(i) / F(i) * P(nc, a) / P(nc, nb), nc, i, nb)
            else:
                f = lambda i: ((-1) ** (d - i) * q ** _c2(d - i) / F(d - i) * P(nb, a) / P(nb, nc), nb, d - i, nc)
        elif b.flavor is Flavor.col and not b.inverted:
            if version == 1:
                f = lambda i: ((-1) ** i * F(d - i) * q ** (i * (d - 1) - _c2(i)) / (F(d) * P(a, nb)), nc, i, nb)
            else:
                f = lambda i: (F(i) * q ** ((d - i) * (1 - d) + _c2(d - i)) / (F(d) * P(a, nc)), nb, d - i, nc)
        elif b.flavor is Flavor.row:
            if version == 1:
                f = lambda i: ((-1) ** i * q ** _c2(i) / F(i) * P(nb, a) / P(nb, nc), nb, i, nc)
            else:
                f = lambda i: (q ** -_c2(d - i) / F(d - i) * P(nc, a) / P(nc, nb), nc, d - i, nb)
        else:
            if version == 1:
                f = lambda i: (F(d - i) * q ** (i * (1 - d) + _c2(i)) / (F(d) * P(a, nc)), nb, i, nc)
            else:
                f = lambda i: ((-1) ** (d - i) * F(i) * q ** ((d - i) * (d - 1) - _c2(d - i)) / (F(d) * P(a, nb)),
                               nc, d - i, nb)

    orbits = {}
    out = []
    for i in range(d + 1):
        coef, n_axis, power, eta_axis = f(i)
        key = (n_axis, eta_axis)
        if key not in orbits:
            orbits[key] = _nil_orbit(spec, s, n_axis, eta_axis)
        out.append(tuple(coef * c for c in orbits[key][power]))
    return out


@lru_cache(maxsize=4096)
def basis_vectors(spec: ModuleSpec, s: SpaceId, b: BasisId) -> tuple[tuple, ...]:
    """Normalized basis b of s in reference coordinates (both closed forms must agree)."""
    v1 = _closed_form(spec, s, b, 1)
    v2 = _closed_form(spec, s, b, 2)
    if v1 != v2:
        i = next(k for k in range(len(v1)) if v1[k] != v2[k])
        raise ConsistencyError(f"closed forms disagree for {s.value} {b} at component {i}")
    if b.flavor is Flavor.row:
        total = tuple(sum(col, 0) for col in zip(*v1))
        if total != spec.eta_coords(s, b.axis):
            raise ConsistencyError(f"{s.value} {b} does not sum to η_{b.axis.value}")
    return tuple(v1)


def basis_matrix(spec: ModuleSpec, s: SpaceId, b: BasisId) -> ExactMatrix:
    return ExactMatrix.from_columns(basis_vectors(spec, s, b), spec.dim)


def gram(spec: ModuleSpec, b_v: BasisId, b_dual: BasisId) -> ExactMatrix:
    """Entry (r, s) is (u_r, v_s) for u in basis b_v of V and v in basis b_dual of V*."""
    us = basis_vectors(spec, SpaceId.V, b_v)
    vs = basis_vectors(spec, SpaceId.V_dual, b_dual)
    return ExactMatrix([[dot(u, v) for v in vs] for u in us], spec.dim)


@lru_cache(maxsize=4096)
def basis_matrix_inverse(spec: ModuleSpec, s: SpaceId, b: BasisId) -> ExactMatrix:
    return basis_matrix(spec, s, b).inverse()


def change_of_coordinates(spec: ModuleSpec, s: SpaceId, src: BasisId, dst: BasisId) -> ExactMatrix:
    """S with dst_j = Σ_i S_ij src_i, computed from the basis vectors."""
    return basis_matrix_inverse(spec, s, src) @ basis_matrix(spec, s, dst)


def rep_in_reference(spec: ModuleSpec, s: SpaceId, b: BasisId, g: Generator) -> ExactMatrix:
    """Matrix of g in basis b obtained by changing coordinates from the reference model."""
    return basis_matrix_inverse(spec, s, b) @ spec.matrix(s, g) @ basis_matrix(spec, s, b)


__all__ = [
    "ALL_BASES", "ALL_DECOMPS", "DecompId", "EtaVector", "FreeScalars", "ModuleSpec", "PAIR_KEYS",
    "REFERENCE_BASIS", "adapted_basis", "basis_matrix", "basis_matrix_inverse", "basis_vectors", "change_of_coordinates",
    "decomposition", "dot", "eta", "flag", "gram", "make_spec", "pairing_value", "rep_in_reference",
]

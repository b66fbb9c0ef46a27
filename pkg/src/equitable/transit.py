"""Transition matrices among the twelve bases and the rotator's matrices.

Convention: S is the transition from basis u to basis v when
v_j = Σ_i S_ij u_i.  A map with matrix B in basis u has matrix S⁻¹BS in v.
Tabulated formulas are stored for the three [x] bases and rotated.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .exactla import ExactMatrix, reversal, z_conjugate
from .modmodel import ModuleSpec
from .repkit import ALL_BASES, Axis, BasisId, Flavor, SpaceId, build_canonical, family
from .scalars import Scalar, inverse_of, q_binom


@dataclass(frozen=True)
class TransitionEdge:
    space: SpaceId
    src: BasisId
    dst: BasisId
    matrix: ExactMatrix
    provenance: str


@dataclass(frozen=True)
class RotatorRep:
    space: SpaceId
    basis: BasisId
    matrix: ExactMatrix


def _b(axis: Axis, inverted: bool, flavor: Flavor) -> BasisId:
    return BasisId(axis, inverted, flavor)


ROW, COL = Flavor.row, Flavor.col


def _diag(n: int, f) -> ExactMatrix:
    return ExactMatrix.diag([f(i) for i in range(n)])


def _lower(n: int, f) -> ExactMatrix:
    return ExactMatrix.from_function(n, n, lambda i, j: f(i, j) if j <= i else 0)


def _edges_for_axis(spec: ModuleSpec, s: SpaceId, a: Axis) -> list[TransitionEdge]:
    d, n = spec.d, spec.dim
    b, c = a.rotate(1), a.rotate(2)
    P = spec.pairing
    q = spec.q
    dual = s is SpaceId.V_dual
    qq = inverse_of(q) if dual else q
    edges = []

    def add(src, dst, m, why):
        edges.append(TransitionEdge(s, src, dst, m, why))

    # inversion reverses the order of a basis
    zmat = reversal(n)
    for fl in Flavor:
        add(_b(a, False, fl), _b(a, True, fl), zmat, "inversion")
        add(_b(a, True, fl), _b(a, False, fl), zmat, "inversion")

    # row and col bases for the same decomposition differ by a diagonal matrix
    if not dual:
        def dg(i):
            return (-1) ** i * q ** (i * (1 - d)) / q_binom(d, i, q) * P(b, c) / (P(b, a) * P(a, c))
    else:
        def dg(i):
            return (-1) ** i * q ** (i * (d - 1)) / q_binom(d, i, q) * P(c, b) / (P(c, a) * P(a, b))
    add(_b(a, False, ROW), _b(a, False, COL), _diag(n, dg), "diagonal")
    add(_b(a, False, COL), _b(a, False, ROW), _diag(n, lambda i: 1 / dg(i)), "diagonal")
    add(_b(a, True, ROW), _b(a, True, COL), _diag(n, lambda i: dg(d - i)), "diagonal")
    add(_b(a, True, COL), _b(a, True, ROW), _diag(n, lambda i: 1 / dg(d - i)), "diagonal")

    # lower triangular transitions between different decompositions
    sgn = -1 if dual else 1
    if not dual:
        r1, r2 = P(b, c) / P(a, c), P(c, a) / P(c, b)
        r3, r4 = P(c, b) / P(a, b), P(b, a) / P(b, c)
    else:
        r1, r2 = P(c, b) / P(c, a), P(a, c) / P(b, c)
        r3, r4 = P(b, c) / P(b, a), P(a, b) / P(c, b)
    add(_b(a, False, ROW), _b(b, True, ROW),
        _lower(n, lambda i, j: (-1) ** j * q ** (sgn * j * (1 - i)) * q_binom(i, j, q) * r1), "lower")
    add(_b(a, False, COL), _b(b, True, COL),
        _lower(n, lambda i, j: (-1) ** (d - i) * q ** (sgn * (i - d) * (d - j - 1)) * q_binom(d - j, i - j, q) * r2),
        "lower")
    add(_b(a, True, ROW), _b(c, False, ROW),
        _lower(n, lambda i, j: (-1) ** j * q ** (sgn * j * (i - 1)) * q_binom(i, j, q) * r3), "lower")
    add(_b(a, True, COL), _b(c, False, COL),
        _lower(n, lambda i, j: (-1) ** (d - i) * q ** (sgn * (d - i) * (d - j - 1)) * q_binom(d - j, i - j, q) * r4),
        "lower")

    # rotating the axis
    pm = build_canonical(family("P"), d, qq)
    if not dual:
        rr, rc = P(b, c) / P(a, c), P(c, a) / P(c, b)
    else:
        rr, rc = P(c, b) / P(c, a), P(a, c) / P(b, c)
    add(_b(a, False, ROW), _b(b, False, ROW), pm * rr, "rotation")
    add(_b(a, False, COL), _b(b, False, COL), pm.T * rc, "rotation")
    add(_b(a, True, ROW), _b(b, True, ROW), z_conjugate(pm) * rr, "rotation")
    add(_b(a, True, COL), _b(b, True, COL), z_conjugate(pm.T) * rc, "rotation")
    return edges


@lru_cache(maxsize=256)
def transition_edges(spec: ModuleSpec, s: SpaceId) -> tuple[TransitionEdge, ...]:
    """All tabulated edges of s: 12 inversions, 12 diagonal, 12 lower triangular, 12 rotations."""
    out: list[TransitionEdge] = []
    for a in Axis:
        out.extend(_edges_for_axis(spec, s, a))
    return tuple(out)


def _adjacency(spec: ModuleSpec, s: SpaceId) -> dict:
    adj: dict = {b: [] for b in ALL_BASES}
    for e in transition_edges(spec, s):
        adj[e.src].append(e)
    return adj


def route(spec: ModuleSpec, s: SpaceId, src: BasisId, dst: BasisId) -> list[TransitionEdge]:
    """Shortest path of tabulated edges, breadth first in table order."""
    if src == dst:
        return []
    adj = _adjacency(spec, s)
    prev: dict = {src: None}
    todo = deque([src])
    while todo:
        u = todo.popleft()
        for e in adj[u]:
            if e.dst not in prev:
                prev[e.dst] = e
                if e.dst == dst:
                    path = []
                    node = dst
                    while prev[node] is not None:
                        path.append(prev[node])
                        node = prev[node].src
                    return path[::-1]
                todo.append(e.dst)
    raise RuntimeError(f"no route from {src} to {dst}")


def compose(path: list[TransitionEdge], n: int) -> ExactMatrix:
    m = ExactMatrix.identity(n)
    for e in path:
        m = m @ e.matrix
    return m


@lru_cache(maxsize=8192)
def transition(spec: ModuleSpec, s: SpaceId, src: BasisId, dst: BasisId) -> ExactMatrix:
    """Transition matrix from src to dst (tabulated edge, or composed along a route)."""
    return compose(route(spec, s, src, dst), spec.dim)


def rotator_rep(spec: ModuleSpec, s: SpaceId, b: BasisId) -> RotatorRep:
    """Matrix of the canonical rotator in basis b: P, Pᵗ, ZPZ or ZPᵗZ by flavor."""
    return RotatorRep(s, b, rotator_matrix(spec.d, s, b, spec.q))


def rotator_matrix(d: int, s: SpaceId, b: BasisId, q: Scalar) -> ExactMatrix:
    qq = q if s is SpaceId.V else inverse_of(q)
    return build_canonical(family("P", t=b.flavor is Flavor.col, z=b.inverted), d, qq)

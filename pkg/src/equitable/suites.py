"""Verification suites over (spec, d).

Each suite takes a ModuleSpec and returns a VerificationReport.  The suites
are pure, so running the same cells twice yields identical reports.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable

from .errors import ConsistencyError, ParameterError
from .exactla import (
    ExactMatrix, Subspace, column_space, constrained_endomorphism_space, flatten, image, kernel,
    orthogonal_complement, reversal, span, subspace_intersect, subspace_sum, z_conjugate, zero_subspace,
)
from .modmodel import (
    ALL_DECOMPS, DecompId, FreeScalars, ModuleSpec, _closed_form, adapted_basis, basis_vectors, change_of_coordinates,
    decomposition, dot, flag, gram, make_spec, pairing_value, rep_in_reference,
)
from .repkit import (
    ALL_BASES, EQUITABLE, Axis, BasisId, Flavor, Generator, SpaceId, build_canonical, dagger_transpose_check,
    dual_basis, family, n_of, rep, spectrum_check, verify_algebra,
)
from .report import VerificationReport
from .scalars import Backend, inverse_of, q_binom, q_factorial
from .transit import rotator_matrix, transition, transition_edges


def _gen(axis: Axis) -> Generator:
    return Generator(axis.value)


def _same(a: Subspace, b: Subspace) -> bool:
    return a.dim == b.dim and a.contains_subspace(b)


def _sum_all(parts, n) -> Subspace:
    out = zero_subspace(n)
    for p in parts:
        out = subspace_sum(out, p)
    return out


def _component(comps, i, n) -> Subspace:
    return comps[i] if 0 <= i < len(comps) else zero_subspace(n)


def _power(m: ExactMatrix, k: int) -> ExactMatrix:
    out = ExactMatrix.identity(m.n_rows)
    for _ in range(k):
        out = out @ m
    return out


def _npow_space(spec: ModuleSpec, s: SpaceId, axis: Axis, i: int) -> Subspace:
    """n_axis^i applied to the whole space, for 0 ≤ i ≤ d+1."""
    if i > spec.d:
        return zero_subspace(spec.dim)
    return flag(spec, s, axis)[spec.d - i]


def _bases_label(s: SpaceId, b) -> str:
    return f"{s.value} {b}"


# ---------------------------------------------------------------------------
# algebra


def suite_algebra(spec: ModuleSpec) -> VerificationReport:
    d, q = spec.d, spec.q
    rep_ = VerificationReport(f"algebra d={d}")
    for s in SpaceId:
        for b in ALL_BASES:
            rep_.extend(verify_algebra(s, b, d, q), prefix=_bases_label(s, b) + ": ")
    for b in ALL_BASES:
        rep_.extend(dagger_transpose_check(b, d, q), prefix=f"dagger {b}: ")
    return rep_


# ---------------------------------------------------------------------------
# canonical matrix shapes

# (transposed, q_inverted, z_conjugated) -> (upper, diagonal is K⁻¹, row sum, exponent sign of q^{±d})
_E_SHAPES = {
    (t, inv, z): (t == z, inv == z, not t, -1 if inv else 1)
    for t in (False, True) for inv in (False, True) for z in (False, True)
}


def _is_bidiagonal(m: ExactMatrix, upper: bool) -> bool:
    n = m.n_rows
    off = 1 if upper else -1
    return all(not m[i, j] for i in range(n) for j in range(n) if j - i not in (0, off))


def suite_shapes(spec: ModuleSpec) -> VerificationReport:
    d, q = spec.d, spec.q
    qi = inverse_of(q)
    n = spec.dim
    rep_ = VerificationReport(f"shapes d={d}")
    K = build_canonical(family("K"), d, q)
    Kinv = build_canonical(family("K", inv=True), d, q)
    rep_.expect_equal("K_q K_{q^-1} = I", K @ Kinv, ExactMatrix.identity(n))
    for key, (upper, kinv, rowsum, sign) in _E_SHAPES.items():
        m = build_canonical(family("E", *key), d, q)
        name = str(family("E", *key))
        rep_.add(f"{name} is {'upper' if upper else 'lower'} bidiagonal", _is_bidiagonal(m, upper))
        diag = ExactMatrix.diag([m[i, i] for i in range(n)])
        rep_.expect_equal(f"{name} diagonal part", diag, Kinv if kinv else K)
        target = q ** (sign * d)
        sums = [sum(m.rows[i], 0) for i in range(n)] if rowsum else [sum(m.column(j), 0) for j in range(n)]
        rep_.add(f"{name} constant {'row' if rowsum else 'column'} sum", all(x == target for x in sums))
    for base in ("E", "N"):
        variants = {}
        for t in (False, True):
            for inv in (False, True):
                for z in (False, True):
                    m = build_canonical(family(base, t, inv, z), d, q)
                    variants[(t, inv, z)] = m
                    # the same three maps applied in the opposite order
                    alt = build_canonical(family(base), d, qi if inv else q)
                    if z:
                        alt = z_conjugate(alt)
                    if t:
                        alt = alt.T
                    rep_.expect_equal(f"{family(base, t, inv, z)} modifiers commute", m, alt)
        if d >= 2:
            rep_.add(f"{base}-family has eight distinct variants", len(set(variants.values())) == 8)
    E = build_canonical(family("E"), d, q)
    ZEiZ = build_canonical(family("E", inv=True, z=True), d, q)
    T = build_canonical(family("T"), d, q)
    eye = ExactMatrix.identity(n)
    rep_.expect_equal("T_q = q^-1 (I - E_q Z E_{q^-1} Z)/(q - q^-1)", T, (eye - E @ ZEiZ) * (qi / (q - qi)))
    rep_.expect_equal("Z T_q Z = -T_{q^-1}", z_conjugate(T), -build_canonical(family("T", inv=True), d, q))
    for s in SpaceId:
        for b in ALL_BASES:
            for g in EQUITABLE:
                rep_.add(f"spectrum {s.value} {b} {g.value}", spectrum_check(s, b, g, d, q))
    return rep_


# ---------------------------------------------------------------------------
# rotator


def suite_rotator(spec: ModuleSpec) -> VerificationReport:
    d, q = spec.d, spec.q
    qi = inverse_of(q)
    n = spec.dim
    rep_ = VerificationReport(f"rotator d={d}")
    P = build_canonical(family("P"), d, q)
    eye = ExactMatrix.identity(n)
    rep_.expect_equal("P^3 = (-1)^d q^{-d(d-1)} I", P @ P @ P, eye * ((-1) ** d * q ** (-d * (d - 1))))
    rep_.expect_equal("P_q^-1 = Z P_{q^-1} Z", P.inverse(), z_conjugate(build_canonical(family("P"), d, qi)))
    for s in SpaceId:
        for b in ALL_BASES:
            M = rotator_matrix(d, s, b, q)
            Minv = M.inverse()
            for g in (Generator.x, Generator.y, Generator.z, Generator.n_x, Generator.n_y, Generator.n_z):
                rep_.expect_equal(f"{s.value} {b}: M {g.value} M^-1 = {g.rotate().value}",
                                  M @ rep(s, b, g, d, q) @ Minv, rep(s, b, g.rotate(), d, q))
    x_row = BasisId(Axis.x, False, Flavor.row)
    rep_.expect_equal("inverse adjoint of the rotator is the rotator on V*",
                      rotator_matrix(d, SpaceId.V, x_row, q).T.inverse(),
                      rotator_matrix(d, SpaceId.V_dual, dual_basis(x_row), q))
    return rep_


# ---------------------------------------------------------------------------
# transitions


def suite_transitions(spec: ModuleSpec) -> VerificationReport:
    d = spec.d
    n = spec.dim
    eye = ExactMatrix.identity(n)
    rep_ = VerificationReport(f"transitions d={d}")
    for s in SpaceId:
        for e in transition_edges(spec, s):
            rep_.expect_equal(f"{s.value} {e.provenance} {e.src} -> {e.dst}", e.matrix,
                              change_of_coordinates(spec, s, e.src, e.dst))
        rows = [BasisId(a, False, Flavor.row) for a in Axis]
        cyc = transition(spec, s, rows[0], rows[1]) @ transition(spec, s, rows[1], rows[2]) \
            @ transition(spec, s, rows[2], rows[0])
        rep_.expect_equal(f"{s.value} cycle [x]row -> [y]row -> [z]row -> [x]row", cyc, eye)
        for b in ALL_BASES:
            rep_.expect_equal(f"{s.value} {b} -> {b} is I", transition(spec, s, b, b), eye)
            rep_.expect_equal(f"{s.value} {b} -> {b.inversion()} is Z", transition(spec, s, b, b.inversion()),
                              reversal(n))
    for a in ALL_BASES:
        for b in ALL_BASES:
            if a == b:
                continue
            lhs = transition(spec, SpaceId.V, a, b).T
            rhs = transition(spec, SpaceId.V_dual, dual_basis(b), dual_basis(a))
            rep_.expect_equal(f"duality transport {a} -> {b}", lhs, rhs)
    return rep_


# ---------------------------------------------------------------------------
# pairing


def suite_gram(spec: ModuleSpec) -> VerificationReport:
    d, q = spec.d, spec.q
    n = spec.dim
    rep_ = VerificationReport(f"gram d={d}")
    eye = ExactMatrix.identity(n)
    for b in ALL_BASES:
        rep_.expect_equal(f"gram({b}, {dual_basis(b)}) = I", gram(spec, b, dual_basis(b)), eye)
    for a in Axis:
        b = BasisId(a, False, Flavor.row)
        g = gram(spec, b, b)
        u0vd = g[0, d]
        expect = ExactMatrix.from_function(
            n, n, lambda r, c: (-1) ** r * q ** (r * (d - 1)) * q_binom(d, r, q) * u0vd if r + c == d else 0)
        rep_.expect_equal(f"gram({b}, {b}) antidiagonal formula", g, expect)
        rep_.add(f"gram({b}, {b}) endpoint relation",
                 g[d, 0] == (-1) ** d * q ** (d * (d - 1)) * g[0, d])
    # pairings of the constructed η vectors
    for u in Axis:
        for v in Axis:
            val = pairing_value(spec, u, v)
            if u is v:
                if d >= 1:
                    rep_.add(f"(η_{u.value}, η*_{u.value}) = 0", not val)
            else:
                rep_.add(f"(η_{u.value}, η*_{v.value}) prescribed", val == spec.pairing(u, v))
    P = lambda u, v: pairing_value(spec, u, v)
    x, y, z = Axis
    lhs = P(x, y) * P(y, z) * P(z, x) / (P(x, z) * P(y, x) * P(z, y))
    rep_.add("six-factor identity", lhs == (-1) ** d * q ** (d * (d - 1)))
    # the generators are self-adjoint, the nilpotent ones skew-adjoint
    for g in Generator:
        if g is Generator.y_inv:
            continue
        mv, md = spec.matrix(SpaceId.V, g), spec.matrix(SpaceId.V_dual, g)
        rep_.expect_equal(f"({g.value} u, v) = {'-' if g.nilpotent else ''}(u, {g.value} v)",
                          mv.T, -md if g.nilpotent else md)
    return rep_


# ---------------------------------------------------------------------------
# closed forms and endpoints


def _endpoints(spec: ModuleSpec, s: SpaceId, b: BasisId):
    """Expected (component 0, component d) of a non-inverted basis, from the endpoint tables."""
    a = b.axis
    nb, nc = a.rotate(1), a.rotate(2)
    P = spec.pairing
    eb, ec = spec.eta_coords(s, nb), spec.eta_coords(s, nc)
    if s is SpaceId.V:
        if b.flavor is Flavor.row:
            c0, cd = P(a, nc) / P(nb, nc), P(a, nb) / P(nc, nb)
        else:
            c0, cd = 1 / P(nb, a), 1 / P(nc, a)
    else:
        if b.flavor is Flavor.row:
            c0, cd = P(nc, a) / P(nc, nb), P(nb, a) / P(nb, nc)
        else:
            c0, cd = 1 / P(a, nb), 1 / P(a, nc)
    return tuple(c0 * t for t in eb), tuple(cd * t for t in ec)


def suite_closedform(spec: ModuleSpec) -> VerificationReport:
    d, q = spec.d, spec.q
    rep_ = VerificationReport(f"closed forms d={d}")
    for s in SpaceId:
        for b in ALL_BASES:
            label = _bases_label(s, b)
            v1, v2 = _closed_form(spec, s, b, 1), _closed_form(spec, s, b, 2)
            rep_.add(f"{label}: both closed forms agree", v1 == v2)
            if b.flavor is Flavor.row:
                total = tuple(sum(col, 0) for col in zip(*v1))
                rep_.add(f"{label}: components sum to η_{b.axis.value}", total == spec.eta_coords(s, b.axis))
            try:
                vecs = basis_vectors(spec, s, b)
            except ConsistencyError as exc:
                rep_.add(f"{label}: basis construction", False, str(exc))
                continue
            comps = decomposition(spec, s, DecompId(b.axis, b.inverted))
            rep_.add(f"{label}: component i lies in [{b.axis.value}] component i",
                     all(c.contains(v) and any(v) for c, v in zip(comps, vecs)))
            base = BasisId(b.axis, False, b.flavor)
            e0, ed = _endpoints(spec, s, base)
            if b.inverted:
                e0, ed = ed, e0
            rep_.add(f"{label}: endpoint components", vecs[0] == e0 and vecs[d] == ed)
            for g in Generator:
                if g is Generator.y_inv:
                    continue
                rep_.expect_equal(f"{label}: table matrix of {g.value} matches the model",
                                  rep(s, b, g, d, q), rep_in_reference(spec, s, b, g))
    # endpoint eigen-relations of the [y]row basis on V
    v = basis_vectors(spec, SpaceId.V, BasisId(Axis.y, False, Flavor.row))
    M = lambda g: spec.matrix(SpaceId.V, g)
    rep_.add("[y]row: z v_d = q^d v_d", M(Generator.z).apply(v[d]) == tuple(q ** d * t for t in v[d]))
    rep_.add("[y]row: n_x v_d = 0", not any(M(Generator.n_x).apply(v[d])))
    rep_.add("[y]row: x v_0 = q^-d v_0", M(Generator.x).apply(v[0]) == tuple(q ** -d * t for t in v[0]))
    rep_.add("[y]row: n_z v_0 = 0", not any(M(Generator.n_z).apply(v[0])))
    return rep_


# ---------------------------------------------------------------------------
# flags and decompositions


def _shift_ok(m: ExactMatrix, comps, shift: int, n: int, exact: bool) -> bool:
    """m V_i = V_{i+shift} (or ⊆ when not exact) for every i."""
    for i, c in enumerate(comps):
        img = image(m, c)
        tgt = _component(comps, i + shift, n)
        if exact and not _same(img, tgt):
            return False
        if not exact and not tgt.contains_subspace(img):
            return False
    return True


def _within(m: ExactMatrix, comps, shifts, n) -> bool:
    for i, c in enumerate(comps):
        tgt = _sum_all([_component(comps, i + k, n) for k in shifts], n)
        if not tgt.contains_subspace(image(m, c)):
            return False
    return True


def _actions_ok(spec, s, comps, gen_axis, eig_sign, shift, n, d, q) -> bool:
    """(g − q^{eig_sign(d−2i)} I) V_i = V_{i+shift}, or = 0 when shift is None."""
    m = spec.matrix(s, _gen(gen_axis))
    for i, c in enumerate(comps):
        lam = q ** (eig_sign * (d - 2 * i))
        img = image(m - ExactMatrix.identity(n) * lam, c)
        tgt = zero_subspace(n) if shift is None else _component(comps, i + shift, n)
        if not _same(img, tgt):
            return False
    return True


def _curious(spec: ModuleSpec, s: SpaceId, rep_: VerificationReport):
    d, q = spec.d, spec.q
    P = spec.pairing
    fac = q_factorial(d, q)
    c = d * (d - 1) // 2
    for a in Axis:
        b, cc = a.rotate(1), a.rotate(2)
        eb = spec.eta_coords(s, b)
        if s is SpaceId.V:
            k1 = fac * q ** (-c) * P(b, cc) / P(a, cc)
            k2 = (-1) ** d * fac * q ** c * P(b, a) / P(cc, a)
        else:
            k1 = fac * q ** c * P(cc, b) / P(cc, a)
            k2 = (-1) ** d * fac * q ** (-c) * P(a, b) / P(a, cc)
        lhs1 = _power(spec.matrix(s, n_of(a)), d).apply(eb)
        lhs2 = _power(spec.matrix(s, n_of(cc)), d).apply(eb)
        star = "*" if s is SpaceId.V_dual else ""
        rep_.add(f"{s.value}: n_{a.value}^d η{star}_{b.value} formula",
                 lhs1 == tuple(k1 * t for t in spec.eta_coords(s, a)))
        rep_.add(f"{s.value}: n_{cc.value}^d η{star}_{b.value} formula",
                 lhs2 == tuple(k2 * t for t in spec.eta_coords(s, cc)))


def suite_flags(spec: ModuleSpec) -> VerificationReport:
    d, q = spec.d, spec.q
    n = spec.dim
    rep_ = VerificationReport(f"flags d={d}")
    for s in SpaceId:
        sv = s.value
        qs = 1 if s is SpaceId.V else -1
        for a in Axis:
            fl = flag(spec, s, a)
            rep_.add(f"{sv} flag {a.value}: dimensions", all(m.dim == i + 1 for i, m in enumerate(fl)))
            rep_.add(f"{sv} flag {a.value}: nested", all(fl[i + 1].contains_subspace(fl[i]) for i in range(d)))
            nm = spec.matrix(s, n_of(a))
            rep_.add(f"{sv} n_{a.value}^(d+1) = 0", _power(nm, d + 1).is_zero())
            for i in range(d + 2):
                rep_.add(f"{sv} n_{a.value}^{i} V is the kernel of n_{a.value}^{d - i + 1}",
                         _same(_npow_space(spec, s, a, i), kernel(_power(nm, d - i + 1))))
            # η vectors
            eta = spec.eta_coords(s, a)
            rep_.add(f"{sv} η_{a.value} spans n_{a.value}^d V", _same(span([eta], n), fl[0]) and any(eta))
            rep_.add(f"{sv} n_{a.value} η_{a.value} = 0", not any(nm.apply(eta)))
            for other in (a.rotate(1), a.rotate(2)):
                w = spec.matrix(s, _gen(other)).apply(eta)
                rep_.add(f"{sv} η_{a.value} is an eigenvector of {other.value}", span([eta, w], n).dim == 1)
        for a, b in ((Axis.x, Axis.y), (Axis.y, Axis.z), (Axis.z, Axis.x)):
            fa, fb = flag(spec, s, a), flag(spec, s, b)
            ok = all(subspace_intersect(fa[i], fb[j]).dim == 0 for i in range(n) for j in range(n) if i + j < d)
            rep_.add(f"{sv} flags {a.value}, {b.value} are opposite", ok)
        for did in ALL_DECOMPS:
            a = did.axis
            nb, nc = a.rotate(1), a.rotate(2)
            comps = decomposition(spec, s, did)
            label = f"{sv} [{a.value}]{'inv' if did.inverted else ''}"
            rep_.add(f"{label}: components are lines spanning the space",
                     all(c.dim == 1 for c in comps) and _sum_all(comps, n).dim == n)
            induced = flag(spec, s, nc if did.inverted else nb)
            rep_.add(f"{label}: induced flag",
                     all(_same(_sum_all(comps[: i + 1], n), induced[i]) for i in range(n)))
            ok = True
            for i in range(n):
                if did.inverted:
                    want = subspace_intersect(_npow_space(spec, s, nb, i), _npow_space(spec, s, nc, d - i))
                else:
                    want = subspace_intersect(_npow_space(spec, s, nb, d - i), _npow_space(spec, s, nc, i))
                ok = ok and _same(comps[i], want)
            rep_.add(f"{label}: component i as an intersection of flag members", ok)
            sgn = -1 if did.inverted else 1
            # nilpotent actions: n_{a+2} raises, n_{a+1} lowers, n_a is tridiagonal
            rep_.add(f"{label}: n_{nc.value} V_i = V_(i{'-' if sgn < 0 else '+'}1)",
                     _shift_ok(spec.matrix(s, n_of(nc)), comps, sgn, n, True))
            rep_.add(f"{label}: n_{nb.value} V_i = V_(i{'+' if sgn < 0 else '-'}1)",
                     _shift_ok(spec.matrix(s, n_of(nb)), comps, -sgn, n, True))
            rep_.add(f"{label}: n_{a.value} V_i within V_(i-1) + V_i + V_(i+1)",
                     _within(spec.matrix(s, n_of(a)), comps, (-1, 0, 1), n))
            # equitable generators, with eigenvalue exponents flipped on V* and by inversion
            e = qs * sgn
            rep_.add(f"{label}: {a.value} acts diagonally", _actions_ok(spec, s, comps, a, e, None, n, d, q))
            rep_.add(f"{label}: {nb.value} shifted acts as raising",
                     _actions_ok(spec, s, comps, nb, -e, sgn, n, d, q))
            rep_.add(f"{label}: {nc.value} shifted acts as lowering",
                     _actions_ok(spec, s, comps, nc, -e, -sgn, n, d, q))
        # descriptions and characterizations of [a], with rotated generators
        for a in Axis:
            nb, nc = a.rotate(1), a.rotate(2)
            comps = decomposition(spec, s, DecompId(a, False))
            kb, kc = kernel(spec.matrix(s, n_of(nb))), kernel(spec.matrix(s, n_of(nc)))
            Nb, Nc = spec.matrix(s, n_of(nb)), spec.matrix(s, n_of(nc))
            rep_.add(f"{sv} [{a.value}] component i = n_{nc.value}^i ker n_{nb.value} = "
                     f"n_{nb.value}^(d-i) ker n_{nc.value}",
                     all(_same(comps[i], image(_power(Nc, i), kb)) and _same(comps[i], image(_power(Nb, d - i), kc))
                         for i in range(n)))
            for i in range(d + 2):
                tgt_b = _sum_all(decomposition(spec, s, DecompId(nb, False))[i:], n)
                tgt_c = _sum_all(decomposition(spec, s, DecompId(nc, False))[: max(d - i + 1, 0)], n)
                sp = _npow_space(spec, s, a, i)
                rep_.add(f"{sv} n_{a.value}^{i} V as sums of components", _same(sp, tgt_b) and _same(sp, tgt_c))
            for did in ALL_DECOMPS:
                other = decomposition(spec, s, did)
                is_it = all(_same(u, v) for u, v in zip(other, comps))
                tag = f"{sv} [{did.axis.value}]{'inv' if did.inverted else ''} vs [{a.value}]"
                z0 = not any(flatten(Nb @ other[0].basis))
                zd = not any(flatten(Nc @ other[d].basis))
                p2 = z0 and all(other[i + 1].contains_subspace(image(Nc, other[i])) for i in range(d))
                p3 = z0 and all(other[i].contains_subspace(image(_power(Nc, i), other[0])) for i in range(n))
                p4 = zd and all(other[i - 1].contains_subspace(image(Nb, other[i])) for i in range(1, n))
                p5 = zd and all(other[i].contains_subspace(image(_power(Nb, d - i), other[d])) for i in range(n))
                rep_.add(f"{tag}: five equivalent conditions", p2 == p3 == p4 == p5 == is_it)
                raise_ = _shift_ok(Nc, other, 1, n, False)
                lower = _shift_ok(Nb, other, -1, n, False)
                rep_.add(f"{tag}: raising/lowering characterization", (raise_ and lower) == is_it)
                ql = _within(spec.matrix(s, _gen(nc)), other, (-1, 0), n)
                dg = _within(spec.matrix(s, _gen(a)), other, (0,), n)
                qr = _within(spec.matrix(s, _gen(nb)), other, (0, 1), n)
                rep_.add(f"{tag}: quasi-lowering/diagonal/quasi-raising characterization", (ql and dg and qr) == is_it)
            # unique invariant subspaces
            gens = [spec.matrix(s, _gen(nb)), spec.matrix(s, _gen(nc))]
            eig = decomposition(spec, s, DecompId(nb, False))
            for i in range(d + 2):
                sp = _npow_space(spec, s, a, i)
                inv = all(sp.contains_subspace(image(g, sp)) for g in gens)
                found = []
                for subset in combinations(range(n), d - i + 1):
                    w = _sum_all([eig[j] for j in subset], n)
                    if all(w.contains_subspace(image(g, w)) for g in gens):
                        found.append(w)
                unique = len(found) == 1 and _same(found[0], sp)
                rep_.add(f"{sv} n_{a.value}^{i} V is the unique invariant subspace of its dimension", inv and unique)
        _curious(spec, s, rep_)
    # pairing orthogonality between V and V*
    for a in Axis:
        for i in range(d + 2):
            lhs = orthogonal_complement(_npow_space(spec, SpaceId.V, a, i))
            rep_.add(f"n_{a.value}^{i} V and n_{a.value}^{d - i + 1} V* are orthogonal complements",
                     _same(lhs, _npow_space(spec, SpaceId.V_dual, a, d - i + 1)))
    return rep_


# ---------------------------------------------------------------------------
# endomorphisms characterized by shape


def suite_characterize(spec: ModuleSpec) -> VerificationReport:
    d = spec.d
    n = spec.dim
    rep_ = VerificationReport(f"characterizations d={d}")
    for s in SpaceId:
        for a in Axis:
            nb, nc = a.rotate(1), a.rotate(2)
            wa = adapted_basis(spec, s, DecompId(a, False))
            wc = adapted_basis(spec, s, DecompId(nc, False))
            label = f"{s.value} [{a.value}], [{nc.value}]"
            sp = constrained_endomorphism_space([(wa, "lowering"), (wc, "raising")], n)
            nm = spec.matrix(s, n_of(nb))
            want = span([flatten(nm)], n * n)
            rep_.add(f"{label}: lowering and raising maps = span(n_{nb.value})", _same(sp, want))
            rep_.add(f"{label}: that space has dimension {1 if d else 0}", sp.dim == (1 if d else 0))
            sp = constrained_endomorphism_space([(wa, "quasi_raising"), (wc, "quasi_lowering")], n)
            want = span([flatten(spec.matrix(s, _gen(nb))), flatten(ExactMatrix.identity(n))], n * n)
            rep_.add(f"{label}: quasi-raising and quasi-lowering maps = span({nb.value}, I)", _same(sp, want))
            rep_.add(f"{label}: that space has dimension {2 if d else 1}", sp.dim == (2 if d else 1))
    return rep_


SUITES: dict[str, Callable[[ModuleSpec], VerificationReport]] = {
    "algebra": suite_algebra,
    "shapes": suite_shapes,
    "flags": suite_flags,
    "gram": suite_gram,
    "transitions": suite_transitions,
    "rotator": suite_rotator,
    "closedform": suite_closedform,
    "characterize": suite_characterize,
}


def suite_names(selector: str) -> list[str]:
    if selector == "all":
        return list(SUITES)
    names = [t.strip() for t in selector.split(",") if t.strip()]
    bad = [t for t in names if t not in SUITES]
    if bad or not names:
        raise ParameterError(f"unknown suite {', '.join(bad) or selector!r}; choose from all, {', '.join(SUITES)}")
    return names


def run_suites(names, ds, backend: Backend, free: FreeScalars | None = None) -> list[tuple[str, int, VerificationReport]]:
    """Run each named suite for each d, in (suite, d) order."""
    out = []
    for name in names:
        for d in ds:
            spec = make_spec(d, backend, free)
            out.append((name, d, SUITES[name](spec)))
    return out

import itertools
from fractions import Fraction

import pytest

from equitable.exactla import ExactMatrix, z_conjugate
from equitable.repkit import (
    ALL_BASES, BasisId, Generator, SpaceId, build_canonical, dagger_transpose_check, dual_basis, family,
    rep, spectrum_check, verify_algebra,
)
from equitable.scalars import Q, eval_at, format_scalar


def qi(n):
    """Independent quantum integer: (q^n - q^-n)/(q - q^-1)."""
    return (Q ** n - Q ** -n) / (Q - Q ** -1)


def mat(rows):
    return ExactMatrix([[Q ** 0 * x for x in r] for r in rows])


# The d=3 examples, transcribed entry by entry.
E3 = {
    (False, False, False): [[Q**-3, Q**3 - Q**-3, 0, 0], [0, Q**-1, Q**3 - Q**-1, 0],
                            [0, 0, Q, Q**3 - Q], [0, 0, 0, Q**3]],
    (False, True, False): [[Q**3, Q**-3 - Q**3, 0, 0], [0, Q, Q**-3 - Q, 0],
                           [0, 0, Q**-1, Q**-3 - Q**-1], [0, 0, 0, Q**-3]],
    (True, False, False): [[Q**-3, 0, 0, 0], [Q**3 - Q**-3, Q**-1, 0, 0],
                           [0, Q**3 - Q**-1, Q, 0], [0, 0, Q**3 - Q, Q**3]],
    (True, True, False): [[Q**3, 0, 0, 0], [Q**-3 - Q**3, Q, 0, 0],
                          [0, Q**-3 - Q, Q**-1, 0], [0, 0, Q**-3 - Q**-1, Q**-3]],
    (False, False, True): [[Q**3, 0, 0, 0], [Q**3 - Q, Q, 0, 0],
                           [0, Q**3 - Q**-1, Q**-1, 0], [0, 0, Q**3 - Q**-3, Q**-3]],
    (False, True, True): [[Q**-3, 0, 0, 0], [Q**-3 - Q**-1, Q**-1, 0, 0],
                          [0, Q**-3 - Q, Q, 0], [0, 0, Q**-3 - Q**3, Q**3]],
    (True, False, True): [[Q**3, Q**3 - Q, 0, 0], [0, Q, Q**3 - Q**-1, 0],
                          [0, 0, Q**-1, Q**3 - Q**-3], [0, 0, 0, Q**-3]],
    (True, True, True): [[Q**-3, Q**-3 - Q**-1, 0, 0], [0, Q**-1, Q**-3 - Q, 0],
                         [0, 0, Q, Q**-3 - Q**3], [0, 0, 0, Q**3]],
}

N3 = {
    (False, False, False): [[0, 0, 0, 0], [qi(1), 0, 0, 0], [0, Q**-1 * qi(2), 0, 0], [0, 0, Q**-2 * qi(3), 0]],
    (False, True, False): [[0, 0, 0, 0], [qi(1), 0, 0, 0], [0, Q * qi(2), 0, 0], [0, 0, Q**2 * qi(3), 0]],
    (True, False, False): [[0, qi(1), 0, 0], [0, 0, Q**-1 * qi(2), 0], [0, 0, 0, Q**-2 * qi(3)], [0, 0, 0, 0]],
    (True, True, False): [[0, qi(1), 0, 0], [0, 0, Q * qi(2), 0], [0, 0, 0, Q**2 * qi(3)], [0, 0, 0, 0]],
    (False, False, True): [[0, Q**-2 * qi(3), 0, 0], [0, 0, Q**-1 * qi(2), 0], [0, 0, 0, qi(1)], [0, 0, 0, 0]],
    (False, True, True): [[0, Q**2 * qi(3), 0, 0], [0, 0, Q * qi(2), 0], [0, 0, 0, qi(1)], [0, 0, 0, 0]],
    (True, False, True): [[0, 0, 0, 0], [Q**-2 * qi(3), 0, 0, 0], [0, Q**-1 * qi(2), 0, 0], [0, 0, qi(1), 0]],
    (True, True, True): [[0, 0, 0, 0], [Q**2 * qi(3), 0, 0, 0], [0, Q * qi(2), 0, 0], [0, 0, qi(1), 0]],
}


def test_k_and_z_at_d3():
    assert build_canonical(family("K"), 3) == ExactMatrix.diag([Q**3, Q, Q**-1, Q**-3])
    assert build_canonical(family("Z"), 3) == mat([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])


@pytest.mark.parametrize("key", sorted(E3))
def test_e_variants_at_d3(key):
    t, inv, z = key
    assert build_canonical(family("E", t=t, inv=inv, z=z), 3) == mat(E3[key])


@pytest.mark.parametrize("key", sorted(N3))
def test_n_variants_at_d3(key):
    t, inv, z = key
    assert build_canonical(family("N", t=t, inv=inv, z=z), 3) == mat(N3[key])


def test_canonical_strings_at_d3():
    e = build_canonical(family("E"), 3)
    assert [format_scalar(e[i, i + 1]) for i in range(3)] == ["q^3 - q^-3", "q^3 - q^-1", "q^3 - q"]
    n = build_canonical(family("N"), 3)
    assert [format_scalar(n[i + 1, i]) for i in range(3)] == ["1", "1 + q^-2", "1 + q^-2 + q^-4"]


def test_small_t_and_p():
    assert build_canonical(family("T"), 1) == mat([[1, -1], [1, -1]])
    assert build_canonical(family("P"), 1) == mat([[0, 1], [-1, 1]])
    p = build_canonical(family("P"), 1)
    assert p @ p @ p == -ExactMatrix.identity(2)


@pytest.mark.parametrize("d", range(0, 7))
def test_t_matches_product_oracle(d):
    e = build_canonical(family("E"), d)
    zez = build_canonical(family("E", inv=True, z=True), d)
    oracle = (ExactMatrix.identity(d + 1) - e @ zez) * (Q ** -1 / (Q - Q ** -1))
    assert build_canonical(family("T"), d) == oracle


@pytest.mark.parametrize("d", range(0, 9))
def test_ztz_is_minus_t_inverse(d):
    assert z_conjugate(build_canonical(family("T"), d)) == -build_canonical(family("T", inv=True), d)


@pytest.mark.parametrize("base", ["E", "N"])
def test_modifier_group_acts_simply_transitively(base):
    d = 4
    orbit = {}
    for t, inv, z in itertools.product((False, True), repeat=3):
        m = build_canonical(family(base, t, inv, z), d)
        orbit[(t, inv, z)] = m
        # the three maps commute: apply them in the reverse order by hand
        raw = build_canonical(family(base), d, Q ** -1 if inv else Q)
        raw = z_conjugate(raw) if z else raw
        assert m == (raw.T if t else raw)
    mats = list(orbit.values())
    assert all(a != b for a, b in itertools.combinations(mats, 2))


@pytest.mark.parametrize("d", range(0, 9))
def test_e_family_shape(d):
    n = d + 1
    for t, inv, z in itertools.product((False, True), repeat=3):
        m = build_canonical(family("E", t, inv, z), d)
        upper = all(m[i, j] == 0 for i in range(n) for j in range(n) if j not in (i, i + 1))
        lower = all(m[i, j] == 0 for i in range(n) for j in range(n) if j not in (i, i - 1))
        assert upper or lower
        diag = ExactMatrix.diag([m[i, i] for i in range(n)])
        assert diag in (build_canonical(family("K"), d), build_canonical(family("K", inv=True), d),
                        z_conjugate(build_canonical(family("K"), d)))
        rows = {sum((m[i, j] for j in range(n)), Q * 0) for i in range(n)}
        cols = {sum((m[i, j] for i in range(n)), Q * 0) for j in range(n)}
        assert rows in ({Q ** d}, {Q ** -d}) or cols in ({Q ** d}, {Q ** -d})


def _parse_entry(text):
    sign = -1 if text.startswith("-") else 1
    text = text.lstrip("-")
    z = text.startswith("Z") and len(text) > 1
    core = text[1:-1] if z else text
    return sign, family(core[0], t="t" in core, inv="i" in core, z=z)


# Full tables transcribed independently; rows are bases, columns x, y, z / n_x, n_y, n_z.
EQUITABLE_TABLE = {
    "[x]row": "K ZEiZ E", "[x]col": "K Et ZEtiZ", "[x]inv_row": "Ki Ei ZEZ", "[x]inv_col": "Ki ZEtZ Eti",
    "[y]row": "E K ZEiZ", "[y]col": "ZEtiZ K Et", "[y]inv_row": "ZEZ Ki Ei", "[y]inv_col": "Eti Ki ZEtZ",
    "[z]row": "ZEiZ E K", "[z]col": "Et ZEtiZ K", "[z]inv_row": "Ei ZEZ Ki", "[z]inv_col": "ZEtZ Eti Ki",
}
NILPOTENT_TABLE = {
    "[x]row": "T -ZNiZ N", "[x]col": "Tt Nt -ZNtiZ", "[x]inv_row": "-Ti -Ni ZNZ", "[x]inv_col": "-Tti ZNtZ -Nti",
    "[y]row": "N T -ZNiZ", "[y]col": "-ZNtiZ Tt Nt", "[y]inv_row": "ZNZ -Ti -Ni", "[y]inv_col": "-Nti -Tti ZNtZ",
    "[z]row": "-ZNiZ N T", "[z]col": "Nt -ZNtiZ Tt", "[z]inv_row": "-Ni ZNZ -Ti", "[z]inv_col": "ZNtZ -Nti -Tti",
}


@pytest.mark.parametrize("d", [0, 1, 3])
def test_representing_matrices_match_tables(d):
    for table, gens in ((EQUITABLE_TABLE, ("x", "y", "z")), (NILPOTENT_TABLE, ("n_x", "n_y", "n_z"))):
        for basis, entries in table.items():
            b = BasisId.parse(basis)
            for g, entry in zip(gens, entries.split()):
                sign, fam = _parse_entry(entry)
                expect = build_canonical(fam, d)
                assert rep(SpaceId.V, b, Generator(g), d) == (expect if sign > 0 else -expect), (basis, g)
                dual = build_canonical(fam, d, Q ** -1)
                assert rep(SpaceId.V_dual, b, Generator(g), d) == (dual if sign > 0 else -dual), (basis, g)


def test_rep_examples():
    assert rep(SpaceId.V, BasisId.parse("[y]row"), Generator.x, 4) == build_canonical(family("E"), 4)
    assert rep(SpaceId.V, BasisId.parse("[x]row"), Generator.x, 4) == build_canonical(family("K"), 4)
    assert rep(SpaceId.V_dual, BasisId.parse("[y]row"), Generator.n_y, 4) == build_canonical(family("T", inv=True), 4)
    assert rep(SpaceId.V, BasisId.parse("[z]inv_col"), Generator.n_x, 4) == \
        build_canonical(family("N", t=True, z=True), 4)
    assert rep(SpaceId.V_dual, BasisId.parse("[x]col"), Generator.z, 3) == \
        build_canonical(family("E", t=True, z=True), 3)


def test_twelve_bases():
    assert len(set(ALL_BASES)) == 12
    assert {str(b) for b in ALL_BASES} == set(EQUITABLE_TABLE)
    assert dual_basis(BasisId.parse("[y]row")) == BasisId.parse("[y]inv_col")
    assert dual_basis(BasisId.parse("[z]inv_row")) == BasisId.parse("[z]col")


@pytest.mark.parametrize("s, b, d", [(SpaceId.V, "[y]row", 2), (SpaceId.V, "[y]row", 0),
                                     (SpaceId.V_dual, "[x]col", 3)])
def test_verify_algebra_examples(s, b, d):
    report = verify_algebra(s, BasisId.parse(b), d)
    assert report.passed, report.summary()
    if d == 0:
        for g in (Generator.n_x, Generator.n_y, Generator.n_z):
            assert rep(s, BasisId.parse(b), g, 0) == ExactMatrix.zeros(1, 1)


def test_verify_algebra_detects_a_wrong_table():
    # swap y and z in the relation check: the equitable relations must fail
    b = BasisId.parse("[x]row")
    mats = {g: rep(SpaceId.V, b, g, 2) for g in Generator}
    mats[Generator.y], mats[Generator.z] = mats[Generator.z], mats[Generator.y]
    from equitable.repkit import relation_report
    assert not relation_report(mats, 2, Q, "swapped").passed


def test_dagger_examples():
    lhs = rep(SpaceId.V, BasisId.parse("[y]row"), Generator.x, 2).T
    assert lhs == rep(SpaceId.V_dual, BasisId.parse("[y]inv_col"), Generator.x, 2)
    lhs = rep(SpaceId.V, BasisId.parse("[x]row"), Generator.n_z, 1).T
    assert lhs == -rep(SpaceId.V_dual, BasisId.parse("[x]inv_col"), Generator.n_z, 1)
    for b in ALL_BASES:
        assert dagger_transpose_check(b, 0).passed
        assert dagger_transpose_check(b, 3).passed


@pytest.mark.parametrize("d", [0, 1, 2, 4])
def test_y_inverse_and_spectrum(d):
    for s in SpaceId:
        for b in ALL_BASES:
            y = rep(s, b, Generator.y, d)
            assert y @ rep(s, b, Generator.y_inv, d) == ExactMatrix.identity(d + 1)
            for g in (Generator.x, Generator.y, Generator.z):
                assert spectrum_check(s, b, g, d)


def test_numeric_backend_agrees_with_evaluation():
    q0 = Fraction(3)
    for b in ALL_BASES[:4]:
        for g in Generator:
            sym = rep(SpaceId.V, b, g, 3)
            num = rep(SpaceId.V, b, g, 3, q0)
            assert num == sym.map(lambda x: eval_at(x, q0))

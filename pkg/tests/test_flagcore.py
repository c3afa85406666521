import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archquot.builders import CATALOG, SOLIDS, build, euler_expected
from archquot.flagcore import (
    FaceId,
    FlagGraph,
    VertexSymbol,
    apply_word,
    automorphisms,
    canonical_form,
    euler_characteristic,
    face_size,
    faces,
    flag_orbits,
    format_word,
    inverse_word,
    is_connected,
    is_isomorphic,
    is_orientable,
    parse_word,
    validate,
    vertex_degree,
    vertex_symbol,
    vertex_symbols,
    word_perm,
)

# (vertices, edges, faces) of each solid, from standard polyhedron tables
VEF = {
    "tetrahedron": (4, 6, 4),
    "cube": (8, 12, 6),
    "octahedron": (6, 12, 8),
    "dodecahedron": (20, 30, 12),
    "icosahedron": (12, 30, 20),
    "truncated tetrahedron": (12, 18, 8),
    "truncated octahedron": (24, 36, 14),
    "cuboctahedron": (12, 24, 14),
    "truncated cube": (24, 36, 14),
    "icosidodecahedron": (30, 60, 32),
    "truncated icosahedron": (60, 90, 32),
    "small rhombicuboctahedron": (24, 48, 26),
    "pseudorhombicuboctahedron": (24, 48, 26),
    "snub cube": (24, 60, 38),
    "small rhombicosidodecahedron": (60, 120, 62),
    "great rhombicosidodecahedron": (120, 180, 62),
    "snub dodecahedron": (60, 150, 92),
    "truncated dodecahedron": (60, 90, 32),
    "great rhombicuboctahedron": (48, 72, 26),
}

VERTEX_CONFIGS = {
    "truncated tetrahedron": "3.6.6",
    "truncated octahedron": "4.6.6",
    "cuboctahedron": "3.4.3.4",
    "truncated cube": "3.8.8",
    "icosidodecahedron": "3.5.3.5",
    "truncated icosahedron": "5.6.6",
    "small rhombicuboctahedron": "3.4.4.4",
    "pseudorhombicuboctahedron": "3.4.4.4",
    "snub cube": "3.3.3.3.4",
    "small rhombicosidodecahedron": "3.4.5.4",
    "great rhombicosidodecahedron": "4.6.10",
    "snub dodecahedron": "3.3.3.3.5",
    "truncated dodecahedron": "3.10.10",
    "great rhombicuboctahedron": "4.6.8",
}

# order of the full symmetry group of the geometric solid; the pseudo-
# rhombicuboctahedron has the 16-element antiprismatic group D4d
SYMMETRY_ORDER = {
    "tetrahedron": 24, "cube": 48, "octahedron": 48, "dodecahedron": 120,
    "icosahedron": 120, "truncated tetrahedron": 24, "truncated octahedron": 48,
    "cuboctahedron": 48, "truncated cube": 48, "icosidodecahedron": 120,
    "truncated icosahedron": 120, "small rhombicuboctahedron": 48,
    "pseudorhombicuboctahedron": 16, "snub cube": 24,
    "small rhombicosidodecahedron": 120, "great rhombicosidodecahedron": 120,
    "snub dodecahedron": 60, "truncated dodecahedron": 120,
    "great rhombicuboctahedron": 48,
}


def square() -> FlagGraph:
    # a square as a rank-2 polytope: 8 flags, alternately exchanging vertex and edge
    r0 = [1, 0, 3, 2, 5, 4, 7, 6]
    r1 = [7, 2, 1, 4, 3, 6, 5, 0]
    return FlagGraph(np.array([r0, r1]))


@pytest.mark.parametrize("name", list(VEF))
def test_face_counts_match_tables(name):
    g = build(name)
    v, e, f = VEF[name]
    assert g.n_flags == 4 * e
    assert (g.n_faces(0), g.n_faces(1), g.n_faces(2)) == (v, e, f)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_is_valid_and_euler(name):
    g = build(name)
    assert validate(g) == []
    assert euler_characteristic(g) == euler_expected(name)


@pytest.mark.parametrize("name", list(VERTEX_CONFIGS))
def test_vertex_configuration(name):
    assert vertex_symbols(build(name)) == {VertexSymbol.parse(VERTEX_CONFIGS[name])}


@pytest.mark.parametrize("name", list(SYMMETRY_ORDER))
def test_flag_orbits_against_symmetry_order(name):
    g = build(name)
    orbits = flag_orbits(g)
    assert orbits.count * SYMMETRY_ORDER[name] == g.n_flags
    assert len(automorphisms(g)) == SYMMETRY_ORDER[name]


def test_examples_of_orbit_counts():
    assert flag_orbits(build("cube")).count == 1
    assert flag_orbits(build("cuboctahedron")).count == 2
    assert flag_orbits(build("pseudorhombicuboctahedron")).count == 12


def test_orbit_labels_are_consistent():
    g = build("truncated cube")
    orbits = flag_orbits(g)
    for k, rep in enumerate(orbits.representatives):
        assert orbits.orbit_of[rep] == k
    # automorphisms commute with every exchange map
    for a in automorphisms(g):
        assert np.array_equal(a[g.exchange], g.exchange[:, a])


def test_square_rank_two():
    g = square()
    assert g.rank == 2 and validate(g) == []
    assert g.n_faces(0) == 4 and g.n_faces(1) == 4
    assert flag_orbits(g).count == 1


def test_validate_reports_broken_involution():
    ex = build("cube").exchange.copy()
    ex[0, [0, 1, 2]] = ex[0, [1, 2, 0]]
    kinds = {v.invariant for v in validate(FlagGraph(ex))}
    assert "involution" in kinds


def test_validate_reports_fixed_point():
    ex = build("tetrahedron").exchange.copy()
    a, b = 0, int(ex[1, 0])
    ex[1, a], ex[1, b] = a, b
    assert "fixed-point" in {v.invariant for v in validate(FlagGraph(ex))}


def test_validate_reports_diamond_failure():
    # two squares whose flags are glued with mismatched edge exchanges
    ex = square().exchange
    g = FlagGraph(np.vstack([ex, ex[1][ex[0]]]))
    assert validate(g) != []


def test_disconnected_union():
    ex = build("tetrahedron").exchange
    two = FlagGraph(np.hstack([ex, ex + ex.shape[1]]))
    assert not is_connected(two)
    assert "connectivity" in {v.invariant for v in validate(two)}
    with pytest.raises(ValueError):
        flag_orbits(two)


def test_faces_refinement_everywhere():
    g = build("great rhombicuboctahedron")
    for i in range(3):
        lab = g.face_labels(i)
        for j in range(3):
            moved = lab[g.exchange[j]]
            if j == i:
                assert np.all(moved != lab)
            else:
                assert np.array_equal(moved, lab)
    assert sum(len(f) for f in faces(g, 1)) == g.n_flags
    assert all(len(f) == 4 for f in faces(g, 1))


def test_face_sizes_and_degrees():
    g = build("truncated cube")
    assert sorted({face_size(g, f) for f in range(g.n_flags)}) == [3, 8]
    assert {vertex_degree(g, f) for f in range(g.n_flags)} == {3}


@pytest.mark.parametrize("name", ["cuboctahedron", "snub cube", "pseudorhombicuboctahedron"])
def test_vertex_symbol_constant_on_orbits(name):
    g = build(name)
    lab = g.face_labels(0)
    by_vertex = {k: vertex_symbol(g, FaceId(0, k)) for k in np.unique(lab).tolist()}
    for a in automorphisms(g):
        for f in range(0, g.n_flags, 7):
            assert by_vertex[int(lab[f])] == by_vertex[int(lab[a[f]])]


def test_vertex_symbol_normal_form():
    assert VertexSymbol.parse("4.3.4.3") == VertexSymbol.parse("3.4.3.4")
    assert VertexSymbol.parse("8.6.4") == VertexSymbol.parse("4.6.8")
    assert VertexSymbol.parse("4.6.4.8") != VertexSymbol.parse("4.6.8")
    assert str(VertexSymbol.parse("4.4.3.4")) == "3.4.4.4"
    with pytest.raises(ValueError):
        VertexSymbol.parse("3..4")


def test_snub_chirality_and_orientability():
    assert is_orientable(build("snub cube"))
    assert not is_orientable(build("hemi-cube"))
    assert is_orientable(build("torus {4,4} 3x3"))


def test_dual_of_cube_is_octahedron():
    assert is_isomorphic(build("cube").dual(), build("octahedron"))
    assert not is_isomorphic(build("cube"), build("octahedron"))


def test_canonical_form_ignores_relabelling():
    g = build("truncated tetrahedron")
    rng = np.random.default_rng(3)
    p = rng.permutation(g.n_flags)
    inv = np.argsort(p)
    relabelled = FlagGraph(p[g.exchange[:, inv]])
    assert validate(relabelled) == []
    assert canonical_form(relabelled) == canonical_form(g)


def test_parse_word():
    assert parse_word("abc") == (0, 1, 2)
    assert parse_word("(ab)^3") == (0, 1) * 3
    assert parse_word("((ab)^3)^{c}") == (2,) + (0, 1) * 3 + (2,)
    assert parse_word("(st)^2", "stu") == (0, 1, 0, 1)
    # conjugation x^g = g^-1 x g
    assert parse_word("(a)^{bc}") == (2, 1, 0, 1, 2)
    assert format_word(parse_word("cbab")) == "cbab"
    for bad in ["(ab", "ab)^2", "a^", "d", "a^{b"]:
        with pytest.raises(ValueError):
            parse_word(bad)


def test_inverse_word():
    assert inverse_word((0, 1, 2)) == (2, 1, 0)


words = st.lists(st.integers(0, 2), max_size=30).map(tuple)


@settings(max_examples=1000, deadline=None)
@given(u=words, v=words, f=st.integers(0, 95))
def test_word_action_is_a_right_action(u, v, f):
    g = build("cuboctahedron")
    assert apply_word(g, f, u + v) == apply_word(g, apply_word(g, f, u), v)
    assert int(word_perm(g, u + v)[f]) == apply_word(g, f, u + v)


@settings(max_examples=200, deadline=None)
@given(u=words, f=st.integers(0, 95))
def test_word_then_inverse_returns(u, f):
    g = build("cuboctahedron")
    assert apply_word(g, apply_word(g, f, u), inverse_word(u)) == f


def test_solids_in_table_order():
    assert len(SOLIDS) == 14
    assert SOLIDS[0] == "truncated tetrahedron" and SOLIDS[-1] == "great rhombicuboctahedron"

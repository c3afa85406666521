import pytest

from archquot.builders import (
    CATALOG,
    CUBE,
    PSEUDORHOMBICUBOCTAHEDRON,
    SNUB_CUBE,
    SNUB_DODECAHEDRON,
    LatticeBasis,
    PolyhedronSpec,
    SpecError,
    build,
    check_spec,
    format_spec,
    from_spec,
    full_truncate,
    hemi,
    petrie_counterexample_basis,
    parse_spec,
    rhombify,
    snub,
    square_bicupola,
    torus_44,
    truncate,
    truncate_full_truncate,
)
from archquot.flagcore import euler_characteristic, flag_orbits, is_isomorphic, validate

SEEDS = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"]

# each operation multiplies the edge count (and so the flag count) by a fixed
# factor: truncation keeps every edge and adds one per vertex-edge incidence
# pair, and so on
FLAG_FACTOR = [
    (truncate, 3),
    (full_truncate, 2),
    (rhombify, 4),
    (truncate_full_truncate, 6),
    (snub, 5),
]


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("op,factor", FLAG_FACTOR)
def test_operation_flag_count(seed, op, factor):
    g = build(seed)
    h = op(g)
    assert h.n_flags == factor * g.n_flags
    assert validate(h) == []
    assert euler_characteristic(h) == 2


@pytest.mark.parametrize("op", [full_truncate, rhombify, truncate_full_truncate, snub])
def test_dual_seeds_give_the_same_solid(op):
    assert is_isomorphic(op(build("cube")), op(build("octahedron")))
    assert is_isomorphic(op(build("dodecahedron")), op(build("icosahedron")))


def test_truncation_distinguishes_duals():
    assert not is_isomorphic(truncate(build("cube")), truncate(build("octahedron")))


def test_full_truncation_of_tetrahedron_is_octahedron():
    assert is_isomorphic(full_truncate(build("tetrahedron")), build("octahedron"))


def test_snub_tetrahedron_is_icosahedron():
    assert is_isomorphic(snub(build("tetrahedron")), build("icosahedron"))


@pytest.mark.parametrize("seed,fixture", [("cube", SNUB_CUBE), ("dodecahedron", SNUB_DODECAHEDRON)])
@pytest.mark.parametrize("hand", ["left", "right"])
def test_snub_matches_independent_face_list(seed, fixture, hand):
    assert is_isomorphic(snub(build(seed), hand), from_spec(fixture))


def test_snub_rejects_unknown_hand():
    with pytest.raises(ValueError):
        snub(build("cube"), "up")


def test_bicupolas():
    ortho = from_spec(square_bicupola(gyro=False))
    gyro = from_spec(PSEUDORHOMBICUBOCTAHEDRON)
    assert is_isomorphic(ortho, build("small rhombicuboctahedron"))
    assert not is_isomorphic(gyro, build("small rhombicuboctahedron"))
    assert gyro.n_flags == 192


def test_hemi_polytopes():
    hc, hd = build("hemi-cube"), build("hemi-dodecahedron")
    assert (hc.n_flags, hd.n_flags) == (24, 60)
    assert euler_characteristic(hc) == euler_characteristic(hd) == 1
    assert flag_orbits(hc).count == flag_orbits(hd).count == 1
    with pytest.raises(ValueError):
        hemi(build("tetrahedron"))


def test_catalog_lists_everything_needed():
    for name in ["cuboctahedron", "pseudorhombicuboctahedron", "tetrahedron",
                 "torus {4,4} (3,3),(5,-5)"]:
        assert name in CATALOG
    with pytest.raises(KeyError):
        build("rhombic triacontahedron")


# --- spec files ---------------------------------------------------------------


def test_spec_round_trip():
    text = format_spec(CUBE)
    spec = parse_spec(text)
    assert spec.name == "cube" and spec.faces == CUBE.faces and spec.expected_flags == 48
    assert from_spec(spec).n_flags == 48


def test_spec_comments_and_defaults():
    spec = parse_spec("# tetrahedron\n0 1 2\n0 3 1  # side\n0 2 3\n1 3 2\n", "t")
    assert spec.name == "t" and len(spec.faces) == 4 and spec.expected_flags is None


def test_non_manifold_edge_is_named():
    spec = parse_spec("name: fan\nfaces:\n0 1 2\n0 1 3\n0 1 4\n")
    with pytest.raises(SpecError, match=r"edge \(0, 1\) lies in 3 faces"):
        check_spec(spec)


def test_boundary_edge_is_named():
    with pytest.raises(SpecError, match=r"edge \(\d, \d\) lies in 1 faces"):
        check_spec(PolyhedronSpec("open", [(0, 1, 2), (0, 2, 3)]))


@pytest.mark.parametrize("text,needle", [
    ("0 1\n", "fewer than 3"),
    ("0 1 1\n", "repeats a vertex"),
    ("0 1 x\n", "must be integers"),
    ("colour: red\n0 1 2\n", "unknown header"),
    ("expected_flags: many\n", "integer"),
    ("", "no faces"),
])
def test_malformed_spec(text, needle):
    with pytest.raises(SpecError, match=needle):
        check_spec(parse_spec(text))


def test_two_tetrahedra_are_disconnected():
    faces = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
    faces += [tuple(v + 4 for v in f) for f in faces]
    with pytest.raises(SpecError, match="disconnected"):
        check_spec(PolyhedronSpec("pair", faces))


def test_expected_flag_mismatch():
    with pytest.raises(SpecError, match="expected 50"):
        from_spec(PolyhedronSpec("cube", CUBE.faces, 50))


def test_pinched_vertex_is_not_polytopal():
    # two tetrahedra sharing vertex 0: every edge is in two faces but the
    # vertex link is two circles
    faces = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2),
             (0, 4, 5), (0, 6, 4), (0, 5, 6), (4, 6, 5)]
    with pytest.raises(SpecError):
        from_spec(PolyhedronSpec("pinched", faces))


# --- tori ---------------------------------------------------------------------


def test_counterexample_lattice():
    basis = petrie_counterexample_basis()
    assert basis == LatticeBasis((3, 3), (5, -5))
    assert abs(basis.det) == 30


def test_torus_counts():
    # a torus on a lattice of index D has D squares, D vertices, 2D edges
    g = build("torus {4,4} (3,3),(5,-5)")
    assert g.n_flags == 8 * 30
    assert (g.n_faces(0), g.n_faces(1), g.n_faces(2)) == (30, 60, 30)
    assert euler_characteristic(g) == 0
    # point group of the lattice: identity, half-turn and the two diagonal
    # mirrors, so |Aut| = 4 * 30 and there are 240 / 120 flag orbits
    assert flag_orbits(g).count == 2


def test_square_torus_is_regular():
    g = torus_44(LatticeBasis((3, 0), (0, 3)))
    assert g.n_flags == 72 and flag_orbits(g).count == 1


def test_basis_order_and_sign_do_not_matter():
    a = torus_44(LatticeBasis((3, 3), (5, -5)))
    b = torus_44(LatticeBasis((-5, 5), (3, 3)))
    assert is_isomorphic(a, b)


def test_degenerate_lattices_rejected():
    with pytest.raises(ValueError, match="degenerate"):
        torus_44(LatticeBasis((1, 1), (2, 2)))
    # a 2x1 torus has two flags sharing all three faces
    with pytest.raises(ValueError, match="non-polytopal"):
        torus_44(LatticeBasis((2, 0), (0, 1)))

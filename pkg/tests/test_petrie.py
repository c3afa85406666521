import numpy as np
import pytest

from archquot.builders import SOLIDS, build
from archquot.flagcore import flag_orbits, word_perm
from archquot.permgrp import inverse
from archquot.petrie import (
    PetrieMap,
    acoptic_at,
    acoptic_ranks,
    coxeter_elements,
    first_repeat,
    is_acoptic,
    orbit_lengths,
    scheme,
    sigma_order_in_cover,
    summarize,
)

TORUS = "torus {4,4} (3,3),(5,-5)"

# length of the Petrie polygon of each regular solid (Coxeter number)
PETRIE_LENGTH = {"tetrahedron": 4, "cube": 6, "octahedron": 6,
                 "dodecahedron": 10, "icosahedron": 10}


@pytest.mark.parametrize("name", list(PETRIE_LENGTH))
def test_regular_solids_have_one_orbit_length(name):
    g = build(name)
    for m in coxeter_elements(g):
        assert orbit_lengths(g, m) == {PETRIE_LENGTH[name]}
        assert sigma_order_in_cover(g, m) == PETRIE_LENGTH[name]


@pytest.mark.parametrize("name", ["cube", "cuboctahedron", TORUS])
def test_two_coxeter_classes(name):
    maps = coxeter_elements(build(name))
    assert [m.word for m in maps] == [(0, 1, 2), (0, 2, 1)]


def test_petrie_map_checks_its_word():
    g = build("cube")
    with pytest.raises(ValueError):
        PetrieMap.of(g, (0, 1))
    with pytest.raises(ValueError):
        PetrieMap((0, 0, 2), word_perm(g, (0, 0, 2)))


def test_scheme_is_a_cycle():
    g = build("truncated cube")
    m = coxeter_elements(g)[0]
    s = scheme(g, 5, m)
    assert s.flags[0] == 5
    assert int(m.perm[s.flags[-1]]) == 5
    assert len(set(s.flags)) == len(s)


def test_torus_counterexample():
    g = build(TORUS)
    for m in coxeter_elements(g):
        lengths = orbit_lengths(g, m)
        assert lengths <= {6, 10}
        assert sigma_order_in_cover(g, m) == 30
        assert all(k < 30 for k in lengths)
    assert is_acoptic(g)
    summary = summarize(g)
    assert summary.orders == (30, 30)
    assert summary.to_dict()["acoptic_ranks"] == [0, 1, 2]


@pytest.mark.parametrize("name", SOLIDS)
def test_orbit_lengths_divide_order(name):
    g = build(name)
    for m in coxeter_elements(g):
        order = sigma_order_in_cover(g, m)
        assert all(order % k == 0 for k in orbit_lengths(g, m))


@pytest.mark.parametrize("name", ["truncated cube", "snub cube", "pseudorhombicuboctahedron",
                                  "great rhombicosidodecahedron"])
def test_representative_independence(name):
    g = build(name)
    orbits = flag_orbits(g)
    ref = acoptic_ranks(g)
    rng = np.random.default_rng(5)
    for _ in range(3):
        reps = [int(rng.choice(np.flatnonzero(orbits.orbit_of == k))) for k in range(orbits.count)]
        assert acoptic_ranks(g, reps) == ref
    # checking every flag gives the same answer as one flag per orbit
    assert acoptic_ranks(g, range(g.n_flags)) == ref


@pytest.mark.parametrize("name", ["truncated tetrahedron", "snub cube", "icosidodecahedron"])
def test_inverse_maps_classify_the_same(name):
    g = build(name)
    reps = flag_orbits(g).representatives
    maps = coxeter_elements(g)
    inverses = [PetrieMap(m.word[::-1], inverse(m.perm)) for m in maps]
    for i in range(3):
        assert acoptic_at(g, i, reps, maps) == acoptic_at(g, i, reps, inverses)
    for m, mi in zip(maps, inverses):
        for f in reps:
            assert set(scheme(g, f, m).flags) == set(scheme(g, f, mi).flags)


def test_first_repeat_on_tetrahedron():
    # the Petrie quadrilateral has four flags carrying four distinct vertices,
    # edges and faces (each face holds two consecutive Petrie edges)
    g = build("tetrahedron")
    m = coxeter_elements(g)[0]
    s = scheme(g, 0, m)
    assert len(s) == 4
    assert all(first_repeat(g, s, i) is None for i in range(3))
    assert acoptic_ranks(g) == frozenset({0, 1, 2})


def test_first_repeat_finds_the_return():
    # the truncated tetrahedron is not acoptic at rank 2, so some scheme meets
    # a face twice
    g = build("truncated tetrahedron")
    hits = [first_repeat(g, scheme(g, f, m), 2)
            for f in flag_orbits(g).representatives for m in coxeter_elements(g)]
    assert any(k is not None for k in hits)


def test_regular_seeds_acoptic():
    assert is_acoptic(build("cube"))
    assert is_acoptic(build("dodecahedron"))

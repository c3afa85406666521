"""Constructions of the Platonic seeds, the Archimedean operations and tori."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .flagcore import FlagGraph, automorphisms, orbit_labels, orientation, validate, walk


class SpecError(ValueError):
    """A face list that does not describe a closed polyhedral surface."""


class OperationKind(enum.Enum):
    TRUNCATE = "t"
    FULL_TRUNCATE = "ft"
    RHOMBIFY = "r"
    TRUNCATE_FULL_TRUNCATE = "tft"
    SNUB = "s"


@dataclass
class PolyhedronSpec:
    name: str
    faces: list[tuple[int, ...]]
    expected_flags: int | None = None

    def __post_init__(self):
        self.faces = [tuple(int(v) for v in f) for f in self.faces]


@dataclass(frozen=True)
class LatticeBasis:
    v1: tuple[int, int]
    v2: tuple[int, int]

    @property
    def det(self) -> int:
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def check_spec(spec: PolyhedronSpec) -> None:
    if not spec.faces:
        raise SpecError(f"{spec.name}: no faces")
    owners: dict[tuple[int, int], list[int]] = {}
    for k, face in enumerate(spec.faces):
        if len(face) < 3:
            raise SpecError(f"{spec.name}: face {k} has fewer than 3 vertices")
        if len(set(face)) != len(face):
            raise SpecError(f"{spec.name}: face {k} repeats a vertex: {face}")
        if min(face) < 0:
            raise SpecError(f"{spec.name}: face {k} has a negative vertex index")
        for j, v in enumerate(face):
            owners.setdefault(_edge(v, face[(j + 1) % len(face)]), []).append(k)
    for e, fs in sorted(owners.items()):
        if len(fs) != 2:
            raise SpecError(f"{spec.name}: edge {e} lies in {len(fs)} faces {fs}, expected 2")
    # faces sharing an edge are adjacent; the surface must be one piece
    parent = list(range(len(spec.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in owners.values():
        parent[find(a)] = find(b)
    roots = {find(k) for k in range(len(spec.faces))}
    if len(roots) > 1:
        raise SpecError(f"{spec.name}: faces form {len(roots)} disconnected pieces")


def from_spec(spec: PolyhedronSpec) -> FlagGraph:
    """Flag graph of a face list.

    Flags are numbered ``2 * (offset(face) + j) + side``: ``j`` walks the face
    cycle, side 0 pairs vertex ``j`` with the edge to vertex ``j + 1`` and side 1
    with the edge to vertex ``j - 1``.
    """
    check_spec(spec)
    triples = []
    for k, face in enumerate(spec.faces):
        m = len(face)
        for j, v in enumerate(face):
            triples.append((v, _edge(v, face[(j + 1) % m]), k))
            triples.append((v, _edge(v, face[j - 1]), k))
    index = {t: i for i, t in enumerate(triples)}
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for k, face in enumerate(spec.faces):
        for j, v in enumerate(face):
            edge_faces.setdefault(_edge(v, face[(j + 1) % len(face)]), []).append(k)

    n = len(triples)
    ex = np.empty((3, n), dtype=np.intp)
    for i, (v, e, k) in enumerate(triples):
        u = e[0] if e[1] == v else e[1]
        ex[0, i] = index[(u, e, k)]
        face = spec.faces[k]
        j = face.index(v)
        nbrs = (_edge(v, face[(j + 1) % len(face)]), _edge(v, face[j - 1]))
        ex[1, i] = index[(v, nbrs[1] if nbrs[0] == e else nbrs[0], k)]
        a, b = edge_faces[e]
        ex[2, i] = index[(v, e, b if a == k else a)]
    g = FlagGraph(ex)
    if spec.expected_flags is not None and spec.expected_flags != n:
        raise SpecError(f"{spec.name}: built {n} flags, expected {spec.expected_flags}")
    problems = validate(g)
    if problems:
        raise SpecError(f"{spec.name}: not polytopal: {problems[0]}")
    return g


def _cycle(labels: Sequence[int]) -> tuple[int, ...]:
    out = [x for k, x in enumerate(labels) if x != labels[k - 1]]
    return tuple(out)


def _relabel(faces: list[tuple]) -> list[tuple[int, ...]]:
    ids: dict = {}
    return [tuple(ids.setdefault(x, len(ids)) for x in f) for f in faces]


def _face_reps(g: FlagGraph, i: int) -> list[int]:
    labels = g.face_labels(i)
    _, first = np.unique(labels, return_index=True)
    return first.tolist()


def _face_cycles(g: FlagGraph, label: Callable[[int], object]) -> list[tuple]:
    """Original faces, then vertex figures, as cycles of ``label(flag)``."""
    out = [_cycle([label(f) for f in walk(g, start, 0, 1)]) for start in _face_reps(g, 2)]
    out += [_cycle([label(f) for f in walk(g, start, 2, 1)]) for start in _face_reps(g, 0)]
    return out


def truncate(g: FlagGraph, name: str = "truncation") -> FlagGraph:
    """New vertex per (vertex, edge) incidence; p-gons become 2p-gons."""
    pair = orbit_labels(g.n_flags, [g.exchange[2]])
    return from_spec(PolyhedronSpec(name, _relabel(_face_cycles(g, lambda f: pair[f]))))


def full_truncate(g: FlagGraph, name: str = "full truncation") -> FlagGraph:
    """New vertex per old edge; faces are old faces plus vertex figures."""
    edge = g.face_labels(1)
    return from_spec(PolyhedronSpec(name, _relabel(_face_cycles(g, lambda f: edge[f]))))


def rhombify(g: FlagGraph, name: str = "rhombification") -> FlagGraph:
    return full_truncate(full_truncate(g), name)


def truncate_full_truncate(g: FlagGraph, name: str = "truncated full truncation") -> FlagGraph:
    return truncate(full_truncate(g), name)


def oriented_faces(g: FlagGraph, color: np.ndarray) -> list[tuple[int, ...]]:
    """Vertex cycles of the 2-faces, all traversed with the same orientation."""
    vert = g.face_labels(0)
    faces = []
    for start in _face_reps(g, 2):
        if color[start]:
            start = int(g.exchange[0, start])
        faces.append(_cycle([int(vert[f]) for f in walk(g, start, 0, 1)]))
    return faces


def snub(g: FlagGraph, orientation_choice: str = "left", name: str = "snub") -> FlagGraph:
    """Rhombify, then cut every square from the second full truncation in two.

    In the oriented rhombification each such square reads ``x0 x1 x2 x3`` with
    ``x0 x1`` shared with an original face; "left" cuts along ``x0 x2``,
    "right" along ``x1 x3``.  The rule is invariant under rotations only.
    """
    if orientation_choice not in ("left", "right"):
        raise ValueError("orientation must be 'left' or 'right'")
    if orientation(g) is None:
        raise ValueError("snub needs an orientable polyhedron")
    n_orig = g.n_faces(2)
    first = full_truncate(g)
    rh = full_truncate(first)
    color = orientation(rh)
    cycles = oriented_faces(rh, color)
    n_first = first.n_faces(2)
    original = {_edge(c[j], c[(j + 1) % len(c)]) for c in cycles[:n_orig] for j in range(len(c))}
    faces = list(cycles[:n_first])
    for c in cycles[n_first:]:
        k = next(j for j in range(4) if _edge(c[j], c[(j + 1) % 4]) in original)
        x = c[k:] + c[:k]
        if orientation_choice == "left":
            faces += [(x[0], x[1], x[2]), (x[2], x[3], x[0])]
        else:
            faces += [(x[1], x[2], x[3]), (x[3], x[0], x[1])]
    return from_spec(PolyhedronSpec(name, faces))


def hemi(g: FlagGraph) -> FlagGraph:
    """Antipodal quotient by the central fixed-point-free automorphism."""
    auts = automorphisms(g)
    ident = np.arange(g.n_flags)
    vert = g.face_labels(0)
    for a in auts:
        if np.array_equal(a, ident) or (vert[a] == vert).any():
            continue
        if all(np.array_equal(a[b], b[a]) for b in auts):
            break
    else:
        raise ValueError("no central antipodal automorphism")
    cls = np.minimum(ident, a)
    keep, new = np.unique(cls, return_inverse=True)
    return FlagGraph(new[g.exchange[:, keep]])


# --- catalog data ---------------------------------------------------------

TETRAHEDRON = PolyhedronSpec("tetrahedron", [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)], 24)
CUBE = PolyhedronSpec(
    "cube",
    [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3)],
    48,
)
OCTAHEDRON = PolyhedronSpec(
    "octahedron",
    [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4), (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)],
    48,
)
ICOSAHEDRON = PolyhedronSpec(
    "icosahedron",
    [f for i in range(5) for f in (
        (0, 1 + i, 1 + (i + 1) % 5),
        (1 + i, 6 + i, 1 + (i + 1) % 5),
        (1 + (i + 1) % 5, 6 + i, 6 + (i + 1) % 5),
        (11, 6 + (i + 1) % 5, 6 + i),
    )],
    120,
)
DODECAHEDRON = PolyhedronSpec(
    "dodecahedron",
    [(0, 1, 2, 3, 4), (0, 4, 5, 6, 7), (0, 7, 8, 9, 1), (1, 9, 10, 11, 2),
     (2, 11, 12, 13, 3), (3, 13, 14, 5, 4), (5, 14, 15, 16, 6), (6, 16, 17, 8, 7),
     (8, 17, 18, 10, 9), (10, 18, 19, 12, 11), (12, 19, 15, 14, 13), (15, 19, 18, 17, 16)],
    120,
)


def _cupola(ring: Sequence[int], cap: Sequence[int], offset: int) -> list[tuple[int, ...]]:
    r = lambda k: ring[k % 8]  # noqa: E731
    out = [tuple(cap)]
    for j in range(4):
        c0, c1 = cap[j], cap[(j + 1) % 4]
        out.append((c0, c1, r(2 * j + offset + 2), r(2 * j + offset + 1)))
        out.append((c0, r(2 * j + offset), r(2 * j + offset + 1)))
    return out


def square_bicupola(gyro: bool = True, name: str | None = None) -> PolyhedronSpec:
    """Elongated square (gyro|ortho)bicupola: two cupolas on an octagonal prism.

    The gyro form is the pseudorhombicuboctahedron; the ortho form is the small
    rhombicuboctahedron.
    """
    top, upper, lower, bottom = range(0, 4), range(4, 12), range(12, 20), range(20, 24)
    faces = _cupola(list(upper), list(top), 0)
    faces += _cupola(list(lower), list(bottom), 1 if gyro else 0)
    for k in range(8):
        faces.append((upper[k], upper[(k + 1) % 8], lower[(k + 1) % 8], lower[k]))
    if name is None:
        name = "pseudorhombicuboctahedron" if gyro else "elongated square orthobicupola"
    return PolyhedronSpec(name, faces, 192)


PSEUDORHOMBICUBOCTAHEDRON = square_bicupola(gyro=True)

# Chiral face lists for the snubs, written out independently of ``snub`` and
# used to cross-check it: a Platonic face list, every vertex of the
# rhombification named by the (face, vertex) corner it comes from.


def _snub_from_corners(seed: PolyhedronSpec) -> PolyhedronSpec:
    faces = seed.faces
    corners = {(k, v): len_ for len_, (k, v) in enumerate((k, v) for k, f in enumerate(faces) for v in f)}
    owners: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for k, f in enumerate(faces):
        for j, v in enumerate(f):
            owners.setdefault(_edge(v, f[(j + 1) % len(f)]), []).append((k, j))
    out = [tuple(corners[k, v] for v in f) for k, f in enumerate(faces)]
    # one triangle per face-edge-face corner triple around each vertex,
    # plus the vertex polygon of corners
    vertex_faces: dict[int, list[int]] = {}
    for k, f in enumerate(faces):
        for v in f:
            vertex_faces.setdefault(v, []).append(k)
    for v, ks in sorted(vertex_faces.items()):
        # order faces around v: face k has v followed by w; next face has w -> v
        ring = [ks[0]]
        while len(ring) < len(ks):
            f = faces[ring[-1]]
            prev = f[f.index(v) - 1]
            ring.append(next(k for k in ks if faces[k][(faces[k].index(v) + 1) % len(faces[k])] == prev))
        out.append(tuple(corners[k, v] for k in ring))
    for (u, w), [(k1, j1), (k2, j2)] in sorted(owners.items()):
        f1 = faces[k1]
        a, b = f1[j1], f1[(j1 + 1) % len(f1)]
        # f1 runs a -> b, so the other face runs b -> a
        out.append((corners[k1, a], corners[k1, b], corners[k2, a]))
        out.append((corners[k2, a], corners[k1, b], corners[k2, b]))
    return PolyhedronSpec(f"snub {seed.name}", out, 5 * 2 * sum(len(f) for f in faces))


SNUB_CUBE = _snub_from_corners(CUBE)
SNUB_DODECAHEDRON = _snub_from_corners(DODECAHEDRON)


def torus_44(basis: LatticeBasis) -> FlagGraph:
    """The {4,4} map on the torus ``Z^2 / <v1, v2>``.

    Flags of the square tiling are affine images of the base flag (vertex 0,
    edge towards (1,0), square [0,1]^2) under [4,4]; exchanges compose with
    the three generating reflections on the right.
    """
    det = basis.det
    if det == 0:
        raise ValueError("degenerate lattice basis")
    (a, b), (c, d) = basis.v1, basis.v2
    # row reduce the lattice to {(p, q), (0, r)} with p, r > 0
    rows = [[a, b], [c, d]]
    while rows[1][0] != 0:
        k = rows[0][0] // rows[1][0]
        rows[0] = [rows[0][0] - k * rows[1][0], rows[0][1] - k * rows[1][1]]
        rows.reverse()
    if rows[0][0] < 0:
        rows[0] = [-rows[0][0], -rows[0][1]]
    p, q = rows[0]
    r = abs(rows[1][1])

    def reduce(x, y):
        k = x // p
        return x - k * p, (y - k * q) % r

    reflections = [
        (np.array([[-1, 0], [0, 1]]), (1, 0)),  # x -> 1 - x
        (np.array([[0, 1], [1, 0]]), (0, 0)),  # swap
        (np.array([[1, 0], [0, -1]]), (0, 0)),  # y -> -y
    ]
    index: dict = {}
    order = []
    start = ((1, 0, 0, 1), (0, 0))
    index[start] = 0
    order.append(start)
    ex_rows: list[list[int]] = [[], [], []]
    k = 0
    while k < len(order):
        (m00, m01, m10, m11), t = order[k]
        m = np.array([[m00, m01], [m10, m11]])
        for i, (rm, rt) in enumerate(reflections):
            mm = m @ rm
            tt = reduce(*(m @ np.array(rt) + np.array(t)))
            key = (tuple(int(x) for x in mm.ravel()), (int(tt[0]), int(tt[1])))
            if key not in index:
                index[key] = len(order)
                order.append(key)
            ex_rows[i].append(index[key])
        k += 1
    g = FlagGraph(np.array(ex_rows))
    problems = validate(g)
    if problems:
        raise ValueError(f"lattice {basis} gives a non-polytopal quotient: {problems[0]}")
    return g


AFFINE_44 = {
    0: np.array([[-1, 0, 1], [0, 1, 0], [0, 0, 1]]),
    1: np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    2: np.array([[1, 0, 0], [0, -1, 0], [0, 0, 1]]),
}


def affine_word(w: Sequence[int]) -> np.ndarray:
    """Affine matrix carrying the base flag of {4,4} to its image under ``w``."""
    m = np.eye(3, dtype=int)
    for letter in w:
        m = m @ AFFINE_44[letter]
    return m


def petrie_counterexample_basis() -> LatticeBasis:
    """Translations of (nu1 nu2)^3 and (nu1 nu2^-1)^5 with nu1 = s0s1s2s1, nu2 = s1s0s1s2."""
    nu1, nu2 = (0, 1, 2, 1), (1, 0, 1, 2)
    nu2_inv = tuple(reversed(nu2))
    t1 = affine_word((nu1 + nu2) * 3)
    t2 = affine_word((nu1 + nu2_inv) * 5)
    for t in (t1, t2):
        if not np.array_equal(t[:2, :2], np.eye(2, dtype=int)):
            raise AssertionError("expected a pure translation")
    return LatticeBasis(tuple(int(x) for x in t1[:2, 2]), tuple(int(x) for x in t2[:2, 2]))


# --- catalog --------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    build: Callable[[], FlagGraph]
    kind: OperationKind | None = None
    seed: str | None = None
    sphere: bool = True
    archimedean: bool = True
    tags: tuple[str, ...] = field(default_factory=tuple)


def _seed(spec: PolyhedronSpec) -> Callable[[], FlagGraph]:
    return lambda: from_spec(spec)


_CACHE: dict[str, FlagGraph] = {}


def build(name: str) -> FlagGraph:
    """Flag graph of a catalog entry (memoized)."""
    if name not in _CACHE:
        try:
            entry = CATALOG[name]
        except KeyError:
            raise KeyError(f"unknown polyhedron {name!r}; try one of {sorted(CATALOG)}") from None
        _CACHE[name] = entry.build()
    return _CACHE[name]


def _op(kind: OperationKind, seed: str) -> Callable[[], FlagGraph]:
    fn = {
        OperationKind.TRUNCATE: truncate,
        OperationKind.FULL_TRUNCATE: full_truncate,
        OperationKind.RHOMBIFY: rhombify,
        OperationKind.TRUNCATE_FULL_TRUNCATE: truncate_full_truncate,
        OperationKind.SNUB: snub,
    }[kind]
    return lambda: fn(build(seed))


SEEDS = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"]

# order of the published cover table
SOLIDS = [
    "truncated tetrahedron",
    "truncated octahedron",
    "cuboctahedron",
    "truncated cube",
    "icosidodecahedron",
    "truncated icosahedron",
    "small rhombicuboctahedron",
    "pseudorhombicuboctahedron",
    "snub cube",
    "small rhombicosidodecahedron",
    "great rhombicosidodecahedron",
    "snub dodecahedron",
    "truncated dodecahedron",
    "great rhombicuboctahedron",
]

T, FT, R, TFT, S = OperationKind

CATALOG: dict[str, CatalogEntry] = {}
for _spec in (TETRAHEDRON, CUBE, OCTAHEDRON, DODECAHEDRON, ICOSAHEDRON):
    CATALOG[_spec.name] = CatalogEntry(_spec.name, _seed(_spec), archimedean=False, tags=("seed",))
for _name, _kind, _seed_name in [
    ("truncated tetrahedron", T, "tetrahedron"),
    ("truncated octahedron", T, "octahedron"),
    ("cuboctahedron", FT, "cube"),
    ("truncated cube", T, "cube"),
    ("icosidodecahedron", FT, "dodecahedron"),
    ("truncated icosahedron", T, "icosahedron"),
    ("small rhombicuboctahedron", R, "cube"),
    ("snub cube", S, "cube"),
    ("small rhombicosidodecahedron", R, "dodecahedron"),
    ("great rhombicosidodecahedron", TFT, "dodecahedron"),
    ("snub dodecahedron", S, "dodecahedron"),
    ("truncated dodecahedron", T, "dodecahedron"),
    ("great rhombicuboctahedron", TFT, "cube"),
]:
    CATALOG[_name] = CatalogEntry(_name, _op(_kind, _seed_name), _kind, _seed_name)
CATALOG["pseudorhombicuboctahedron"] = CatalogEntry(
    "pseudorhombicuboctahedron", _seed(PSEUDORHOMBICUBOCTAHEDRON), tags=("spec",))
CATALOG["hemi-cube"] = CatalogEntry(
    "hemi-cube", lambda: hemi(build("cube")), sphere=False, archimedean=False, tags=("projective",))
CATALOG["hemi-dodecahedron"] = CatalogEntry(
    "hemi-dodecahedron", lambda: hemi(build("dodecahedron")), sphere=False, archimedean=False,
    tags=("projective",))
CATALOG["torus {4,4} 3x3"] = CatalogEntry(
    "torus {4,4} 3x3", lambda: torus_44(LatticeBasis((3, 0), (0, 3))), sphere=False,
    archimedean=False, tags=("torus",))
CATALOG["torus {4,4} (3,3),(5,-5)"] = CatalogEntry(
    "torus {4,4} (3,3),(5,-5)", lambda: torus_44(petrie_counterexample_basis()), sphere=False,
    archimedean=False, tags=("torus",))


def euler_expected(name: str) -> int:
    entry = CATALOG[name]
    if "torus" in entry.tags:
        return 0
    if "projective" in entry.tags:
        return 1
    return 2


# --- spec files -----------------------------------------------------------


def parse_spec(text: str, default_name: str = "polyhedron") -> PolyhedronSpec:
    """Parse the plain-text face-list format.

    Lines ``name: <text>`` and ``expected_flags: <int>`` are optional headers;
    every other non-blank, non-``#`` line is a face, given as whitespace
    separated 0-based vertex indices.
    """
    name, expected, faces = default_name, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if sep:
            key = key.strip().lower()
            if key == "name":
                name = value.strip()
            elif key == "expected_flags":
                try:
                    expected = int(value)
                except ValueError:
                    raise SpecError(f"line {lineno}: expected_flags must be an integer") from None
            elif key != "faces":
                raise SpecError(f"line {lineno}: unknown header {key!r}")
            continue
        try:
            faces.append(tuple(int(t) for t in line.replace(",", " ").split()))
        except ValueError:
            raise SpecError(f"line {lineno}: face must be integers, got {line!r}") from None
    return PolyhedronSpec(name, faces, expected)


def load_spec(path: str | Path) -> PolyhedronSpec:
    path = Path(path)
    return parse_spec(path.read_text(), default_name=path.stem)


def format_spec(spec: PolyhedronSpec) -> str:
    lines = [f"name: {spec.name}"]
    if spec.expected_flags is not None:
        lines.append(f"expected_flags: {spec.expected_flags}")
    lines.append("faces:")
    lines += [" ".join(map(str, f)) for f in spec.faces]
    return "\n".join(lines) + "\n"


def lcm(values) -> int:
    return math.lcm(*values)

"""Flag graphs of abstract polytopes.

A polytope is stored only through its flags and the exchange involutions
``exchange[i]`` that swap a flag with its ``i``-adjacent flag.  Faces,
words of the flag action, automorphism orbits and vertex symbols are all
computed from that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

Word = tuple[int, ...]

LETTERS = "abcdefgh"


class FaceId(NamedTuple):
    rank_index: int
    orbit_index: int


class Violation(NamedTuple):
    invariant: str
    flag: int
    detail: str = ""

    def __str__(self):
        msg = f"{self.invariant} at flag {self.flag}"
        return f"{msg}: {self.detail}" if self.detail else msg


class FlagOrbits(NamedTuple):
    count: int
    representatives: list[int]
    orbit_of: np.ndarray


@dataclass(frozen=True, eq=False)
class FlagGraph:
    """Flags ``0..n_flags-1`` with one exchange involution per rank.

    ``exchange`` has shape ``(rank, n_flags)``; ``exchange[i][f]`` is the flag
    differing from ``f`` only in its ``i``-face.
    """

    exchange: np.ndarray

    def __post_init__(self):
        ex = np.asarray(self.exchange, dtype=np.intp)
        if ex.ndim != 2 or ex.shape[0] < 1 or ex.shape[1] < 1:
            raise ValueError("exchange must be a non-empty (rank, n_flags) array")
        if ex.min() < 0 or ex.max() >= ex.shape[1]:
            raise ValueError("exchange maps must be total on [0, n_flags)")
        ex = ex.copy()
        ex.setflags(write=False)
        object.__setattr__(self, "exchange", ex)

    @property
    def rank(self) -> int:
        return self.exchange.shape[0]

    @property
    def n_flags(self) -> int:
        return self.exchange.shape[1]

    def __len__(self):
        return self.n_flags

    def __repr__(self):
        return f"FlagGraph(rank={self.rank}, n_flags={self.n_flags})"

    @cached_property
    def _face_labels(self) -> dict[int, np.ndarray]:
        return {}

    def face_labels(self, i: int) -> np.ndarray:
        """Orbit index of every flag under ``<exchange[j] : j != i>``."""
        if not 0 <= i < self.rank:
            raise ValueError(f"rank index {i} out of range for rank {self.rank}")
        cache = self._face_labels
        if i not in cache:
            gens = [self.exchange[j] for j in range(self.rank) if j != i]
            labels = orbit_labels(self.n_flags, gens)
            labels.setflags(write=False)
            cache[i] = labels
        return cache[i]

    def n_faces(self, i: int) -> int:
        return int(self.face_labels(i).max()) + 1

    def face_of(self, flag: int, i: int) -> FaceId:
        return FaceId(i, int(self.face_labels(i)[flag]))

    def dual(self) -> "FlagGraph":
        return FlagGraph(self.exchange[::-1])


def orbit_labels(n: int, gens: Sequence[np.ndarray]) -> np.ndarray:
    """Label points by orbit under ``gens``; labels ordered by smallest member."""
    low = np.arange(n)
    while True:
        prev = low
        for g in gens:
            low = np.minimum(low, low[g])
        low = low[low]
        if np.array_equal(low, prev):
            break
    _, labels = np.unique(low, return_inverse=True)
    return labels.astype(np.intp)


def _partition(labels: np.ndarray) -> list[list[int]]:
    order = np.argsort(labels, kind="stable")
    counts = np.bincount(labels)
    return [chunk.tolist() for chunk in np.split(order, np.cumsum(counts)[:-1])]


def faces(g: FlagGraph, i: int) -> list[list[int]]:
    """Flags of each ``i``-face, faces numbered by their smallest flag."""
    return _partition(g.face_labels(i))


def is_connected(g: FlagGraph) -> bool:
    return bool(orbit_labels(g.n_flags, list(g.exchange)).max() == 0)


def validate(g: FlagGraph) -> list[Violation]:
    """Check the polytope axioms on a flag graph; an empty list means valid."""
    report: list[Violation] = []
    n, flags = g.n_flags, np.arange(g.n_flags)
    bijective = True
    for i, e in enumerate(g.exchange):
        if len(np.unique(e)) != n:
            bijective = False
            counts = np.bincount(e, minlength=n)
            report.append(Violation("bijection", int(np.argmax(counts > 1)),
                                    f"exchange[{i}] is not a permutation"))
            continue
        fixed = np.flatnonzero(e == flags)
        for f in fixed[:1]:
            report.append(Violation("fixed-point", int(f), f"exchange[{i}] fixes it"))
        bad = np.flatnonzero(e[e] != flags)
        for f in bad[:1]:
            report.append(Violation("involution", int(f), f"exchange[{i}] squared moves it"))
    if not bijective:
        return report

    for i in range(g.rank):
        for j in range(i + 2, g.rank):
            ei, ej = g.exchange[i], g.exchange[j]
            bad = np.flatnonzero(ei[ej] != ej[ei])
            for f in bad[:1]:
                report.append(Violation("string", int(f),
                                        f"exchange[{i}] and exchange[{j}] do not commute"))
            if len(bad):
                continue
            # orbit {f, f.i, f.j, f.ij}; f.i != f and f.j != f are checked above
            bad = np.flatnonzero((ei == ej) | (ei[ej] == flags))
            for f in bad[:1]:
                report.append(Violation("diamond", int(f),
                                        f"<exchange[{i}], exchange[{j}]> orbit smaller than 4"))

    if not is_connected(g):
        labels = orbit_labels(n, list(g.exchange))
        report.append(Violation("connectivity", int(np.flatnonzero(labels)[0]),
                                "not reachable from flag 0"))
        return report

    chains = np.stack([g.face_labels(i) for i in range(g.rank)], axis=1)
    _, first, counts = np.unique(chains, axis=0, return_index=True, return_counts=True)
    for k in np.flatnonzero(counts > 1)[:1]:
        report.append(Violation("distinct-chains", int(first[k]),
                                "another flag has the same faces at every rank"))
    return report


def apply_word(g: FlagGraph, f: int, w: Iterable[int]) -> int:
    """Flag action: apply ``exchange[w[0]]`` first, then ``exchange[w[1]]``..."""
    ex = g.exchange
    for letter in w:
        if not 0 <= letter < g.rank:
            raise ValueError(f"letter {letter} out of range for rank {g.rank}")
        f = ex[letter, f]
    return int(f)


def word_perm(g: FlagGraph, w: Iterable[int]) -> np.ndarray:
    """The permutation of all flags induced by ``w`` (``perm[f] = f^w``)."""
    p = np.arange(g.n_flags)
    for letter in w:
        if not 0 <= letter < g.rank:
            raise ValueError(f"letter {letter} out of range for rank {g.rank}")
        p = g.exchange[letter][p]
    return p


def _bfs_tree(g: FlagGraph, root: int = 0):
    """Layers of a BFS from ``root`` as (children, parents, letters) arrays."""
    seen = np.zeros(g.n_flags, dtype=bool)
    seen[root] = True
    frontier = np.array([root])
    layers = []
    while len(frontier):
        kids, parents, letters = [], [], []
        for i, e in enumerate(g.exchange):
            nxt = e[frontier]
            fresh = ~seen[nxt]
            nxt, par = nxt[fresh], frontier[fresh]
            nxt, idx = np.unique(nxt, return_index=True)
            seen[nxt] = True
            kids.append(nxt)
            parents.append(par[idx])
            letters.append(np.full(len(nxt), i))
        frontier = np.concatenate(kids)
        if len(frontier):
            layers.append((frontier, np.concatenate(parents), np.concatenate(letters)))
    if not seen.all():
        raise ValueError("flag graph is disconnected")
    return layers


def _propagate(g: FlagGraph, root: int, images: np.ndarray) -> np.ndarray:
    """For each candidate image of ``root`` extend along a BFS tree.

    Returns a ``(len(images), n_flags)`` array of color-preserving maps that
    still have to be checked for consistency on non-tree edges.
    """
    maps = np.empty((len(images), g.n_flags), dtype=np.intp)
    maps[:, root] = images
    for kids, parents, letters in _bfs_tree(g, root):
        maps[:, kids] = g.exchange[letters, maps[:, parents]]
    return maps


def automorphisms(g: FlagGraph) -> np.ndarray:
    """All color-preserving automorphisms, one row per automorphism.

    An automorphism of a connected flag graph is fixed by the image of a
    single flag, so each candidate image of flag 0 is propagated and kept iff
    it commutes with every exchange map.
    """
    maps = _propagate(g, 0, np.arange(g.n_flags))
    ok = np.ones(len(maps), dtype=bool)
    for e in g.exchange:
        ok &= (maps[:, e] == e[maps]).all(axis=1)
    return maps[ok]


def flag_orbits(g: FlagGraph) -> FlagOrbits:
    auts = automorphisms(g)
    low = auts.min(axis=0)
    reps, orbit_of = np.unique(low, return_inverse=True)
    return FlagOrbits(len(reps), reps.tolist(), orbit_of.astype(np.intp))


def canonical_form(g: FlagGraph) -> bytes:
    """Isomorphism invariant: lexicographically least BFS relabeling."""
    n = g.n_flags
    best = None
    for root in range(n):
        order = [root]
        label = {root: 0}
        k = 0
        while k < len(order):
            f = order[k]
            for e in g.exchange:
                h = int(e[f])
                if h not in label:
                    label[h] = len(order)
                    order.append(h)
            k += 1
        if len(order) != n:
            raise ValueError("flag graph is disconnected")
        perm = np.empty(n, dtype=np.intp)
        perm[order] = np.arange(n)
        relabeled = perm[g.exchange[:, order]].astype(np.int32).tobytes()
        if best is None or relabeled < best:
            best = relabeled
    return bytes([g.rank]) + best


def is_isomorphic(g: FlagGraph, h: FlagGraph) -> bool:
    if g.rank != h.rank or g.n_flags != h.n_flags:
        return False
    return canonical_form(g) == canonical_form(h)


@dataclass(frozen=True)
class VertexSymbol:
    """Cyclic sequence of face sizes around a vertex, up to rotation and reflection."""

    cycle: tuple[int, ...]

    def __post_init__(self):
        cyc = tuple(int(p) for p in self.cycle)
        if not cyc:
            raise ValueError("empty vertex symbol")
        variants = []
        for seq in (cyc, cyc[::-1]):
            variants += [seq[k:] + seq[:k] for k in range(len(seq))]
        object.__setattr__(self, "cycle", min(variants))

    @classmethod
    def parse(cls, text: str) -> "VertexSymbol":
        return cls(tuple(int(t) for t in text.replace("·", ".").split(".")))

    def __str__(self):
        return ".".join(map(str, self.cycle))

    def __len__(self):
        return len(self.cycle)


def walk(g: FlagGraph, start: int, first: int, second: int) -> list[int]:
    """Flags met when alternately applying ``first`` and ``second`` from ``start``."""
    out = [start]
    f = int(g.exchange[first, start])
    letters = (second, first)
    k = 0
    while f != start:
        out.append(f)
        f = int(g.exchange[letters[k % 2], f])
        k += 1
    return out


def face_size(g: FlagGraph, flag: int) -> int:
    return len(walk(g, flag, 0, 1)) // 2


def vertex_degree(g: FlagGraph, flag: int) -> int:
    return len(walk(g, flag, 1, 2)) // 2


def vertex_symbol(g: FlagGraph, v: FaceId) -> VertexSymbol:
    if g.rank != 3:
        raise ValueError("vertex symbols need rank 3")
    if v.rank_index != 0 or not 0 <= v.orbit_index < g.n_faces(0):
        raise ValueError(f"{v} is not a vertex")
    start = int(np.flatnonzero(g.face_labels(0) == v.orbit_index)[0])
    around = walk(g, start, 1, 2)
    return VertexSymbol(tuple(face_size(g, f) for f in around[::2]))


def vertex_symbols(g: FlagGraph) -> set[VertexSymbol]:
    return {vertex_symbol(g, FaceId(0, v)) for v in range(g.n_faces(0))}


def euler_characteristic(g: FlagGraph) -> int:
    return g.n_faces(0) - g.n_faces(1) + g.n_faces(2)


def is_orientable(g: FlagGraph) -> bool:
    return orientation(g) is not None


def orientation(g: FlagGraph) -> np.ndarray | None:
    """Two-coloring of the flag graph (flags of color 0 are "positive")."""
    color = np.full(g.n_flags, -1)
    color[0] = 0
    for kids, parents, _ in _bfs_tree(g, 0):
        color[kids] = 1 - color[parents]
    for e in g.exchange:
        if (color[e] == color).any():
            return None
    return color


def parse_word(text: str, alphabet: str = "abc") -> Word:
    """Parse words like ``((ab)^4)^{cbacbacbc}``.

    ``x^n`` is a power; ``x^{g}`` is the conjugate ``g^-1 x g``.  Every letter is
    an involution, so inverses are reversed words.
    """
    pos = 0
    src = text.replace(" ", "")

    def atom() -> Word:
        nonlocal pos
        if src[pos] == "(":
            pos += 1
            w = seq(")")
            pos += 1
        elif src[pos] in alphabet:
            w = (alphabet.index(src[pos]),)
            pos += 1
        else:
            raise ValueError(f"unexpected {src[pos]!r} at {pos} in {text!r}")
        while pos < len(src) and src[pos] == "^":
            pos += 1
            if pos >= len(src):
                raise ValueError(f"missing exponent at end of {text!r}")
            if src[pos] == "{":
                pos += 1
                c = seq("}")
                pos += 1
                w = inverse_word(c) + w + c
            else:
                start = pos
                while pos < len(src) and src[pos].isdigit():
                    pos += 1
                if start == pos:
                    raise ValueError(f"bad exponent at {pos} in {text!r}")
                w = w * int(src[start:pos])
        return w

    def seq(stop: str | None) -> Word:
        out: Word = ()
        while pos < len(src) and (stop is None or src[pos] != stop):
            out += atom()
        if stop is not None and pos >= len(src):
            raise ValueError(f"missing {stop!r} in {text!r}")
        return out

    return seq(None)


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


def format_word(w: Sequence[int], alphabet: str = LETTERS) -> str:
    return "".join(alphabet[k] for k in w) or "1"

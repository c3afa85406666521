"""Quotient presentations P(W)/N of flag graphs.

The monodromy group generated by the exchange maps is W/Core(W, N) for the
minimal regular cover; the stabilizer of a base flag is N/Core(W, N).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import petrie
from .builders import OperationKind
from .flagcore import (
    FaceId,
    FlagGraph,
    VertexSymbol,
    Word,
    apply_word,
    face_size,
    faces,
    flag_orbits,
    format_word,
    inverse_word,
    parse_word,
    vertex_degree,
    vertex_symbols,
    word_perm,
)
from .permgrp import BigCount, PermGroup


@dataclass(frozen=True, eq=False)
class MonodromyRep:
    source: FlagGraph
    gens: tuple[np.ndarray, ...]
    group: PermGroup

    def perm(self, w: Sequence[int]) -> np.ndarray:
        return word_perm(self.source, w)


_MONODROMY: dict[int, MonodromyRep] = {}


def monodromy(g: FlagGraph) -> MonodromyRep:
    key = id(g)
    rep = _MONODROMY.get(key)
    if rep is None or rep.source is not g:
        gens = tuple(np.array(e) for e in g.exchange)
        rep = MonodromyRep(g, gens, PermGroup(gens, g.n_flags))
        _MONODROMY[key] = rep
    return rep


class SchlafliType(NamedTuple):
    p: int
    q: int

    def __str__(self):
        return f"{{{self.p},{self.q}}}"

    @classmethod
    def parse(cls, text: str) -> "SchlafliType":
        p, q = text.strip("{} ").split(",")
        return cls(int(p), int(q))


def schlafli_type(g: FlagGraph) -> SchlafliType:
    """lcm of the face sizes and lcm of the vertex degrees."""
    sizes = {face_size(g, f[0]) for f in faces(g, 2)}
    degrees = {vertex_degree(g, v[0]) for v in faces(g, 0)}
    return SchlafliType(math.lcm(*sizes), math.lcm(*degrees))


# --- stabilizer words --------------------------------------------------------


def shortest_path(g: FlagGraph, start: int, targets: set[int]) -> Word:
    """Shortest word leading ``start`` into ``targets`` (letters tried in order)."""
    prev: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = [start]
    k = 0
    while k < len(queue):
        f = queue[k]
        k += 1
        if f in targets:
            word = []
            while prev[f][0] >= 0:
                f, letter = prev[f]
                word.append(letter)
            return tuple(reversed(word))
        for letter, e in enumerate(g.exchange):
            h = int(e[f])
            if h not in prev:
                prev[h] = (f, letter)
                queue.append(h)
    raise ValueError("target face is unreachable from the base flag")


def face_circuit_word(g: FlagGraph, base: int, target: FaceId) -> Word:
    """``path . (01)^k . path^-1``: walk out to the face, circle it, walk back."""
    if target.rank_index != 2:
        raise ValueError("face circuits are taken around 2-faces")
    members = set(np.flatnonzero(g.face_labels(2) == target.orbit_index).tolist())
    if not members:
        raise ValueError(f"no face {target}")
    path = shortest_path(g, base, members)
    k = len(members) // 2
    return path + (0, 1) * k + inverse_word(path)


@dataclass
class StabilizerWords:
    base: int
    words: list[Word]
    n_face_words: int
    complete: bool
    generated_order: int
    stabilizer_order: int

    @property
    def appended(self) -> list[Word]:
        return self.words[self.n_face_words:]


def stabilizer_words(g: FlagGraph, base: int) -> StabilizerWords:
    """One face-circuit word per 2-face, completed with Schreier words if needed."""
    mono = monodromy(g)
    target = mono.group.order() // g.n_flags
    words = [face_circuit_word(g, base, FaceId(2, k)) for k in range(g.n_faces(2))]
    n_face = len(words)

    def generated(ws):
        return PermGroup([word_perm(g, w) for w in ws], g.n_flags).order()

    order = generated(words)
    complete = order == target
    if not complete:
        # Schreier words u_x . s . u_{x s}^-1 for the base flag's orbit
        tree = mono.group.orbit(base)
        for x, ux in tree.items():
            for s in range(g.rank):
                y = int(g.exchange[s, x])
                w = ux + (s,) + inverse_word(tree[y])
                if tree[y] == ux + (s,):
                    continue
                trial = words + [w]
                new = generated(trial)
                if new > order:
                    words, order = trial, new
                if order == target:
                    break
            if order == target:
                break
    return StabilizerWords(base, words, n_face, complete, order, target)


# --- psi maps ----------------------------------------------------------------


@dataclass(frozen=True)
class PsiMap:
    """Images of the generators of Aut(R) as words in a, b, c.

    For the snub the letters are the rotations ``rho1 rho0`` (0) and
    ``rho2 rho1`` (1); otherwise ``rho0, rho1, rho2``.
    """

    kind: OperationKind
    images: tuple[Word, ...]

    @property
    def rotational(self) -> bool:
        return self.kind is OperationKind.SNUB


def _w(text: str) -> Word:
    return tuple("abc".index(ch) for ch in text)


PSI_MAPS: dict[OperationKind, PsiMap] = {
    OperationKind.TRUNCATE: PsiMap(OperationKind.TRUNCATE, (_w("a"), _w("bab"), _w("c"))),
    OperationKind.FULL_TRUNCATE: PsiMap(OperationKind.FULL_TRUNCATE, (_w("b"), _w("a"), _w("cbc"))),
    OperationKind.RHOMBIFY: PsiMap(OperationKind.RHOMBIFY, (_w("a"), _w("b"), _w("cbabc"))),
    OperationKind.TRUNCATE_FULL_TRUNCATE: PsiMap(
        OperationKind.TRUNCATE_FULL_TRUNCATE, (_w("a"), _w("bab"), _w("cbabc"))),
    OperationKind.SNUB: PsiMap(OperationKind.SNUB, (_w("ab"), _w("bcbabcbc"))),
}

# rotation letters written in the reflections of R
ROTATIONS: tuple[Word, ...] = ((1, 0), (2, 1))


def psi_apply(m: PsiMap, w: Sequence[int]) -> Word:
    """Image of a word under psi; the order of the letters is reversed."""
    out: Word = ()
    for letter in reversed(tuple(w)):
        if not 0 <= letter < len(m.images):
            raise ValueError(f"letter {letter} is not a generator for {m.kind.name}")
        out += m.images[letter]
    return out


def expand_rotations(w: Sequence[int]) -> Word:
    out: Word = ()
    for letter in w:
        out += ROTATIONS[letter]
    return out


def seed_relators(seed: FlagGraph, rotational: bool = False) -> list[Word]:
    """Defining relators of the string C-group of a regular seed.

    With ``rotational`` the relators are in the letters ``X = rho1 rho0`` and
    ``Y = rho2 rho1``: ``X^p, Y^q, (XY)^2``.
    """
    p, q = schlafli_type(seed)
    if rotational:
        return [(0,) * p, (1,) * q, (0, 1) * 2]
    return [(0, 0), (1, 1), (2, 2), (0, 1) * p, (1, 2) * q, (0, 2) * 2]


def _inverse_rot(w: Word, orders: tuple[int, int]) -> Word:
    out: Word = ()
    for letter in reversed(w):
        out += (letter,) * (orders[letter] - 1)
    return out


@dataclass
class PsiReport:
    kind: OperationKind
    base: int
    relators_checked: int = 0
    random_checked: int = 0
    identities: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_psi(kind: OperationKind, seed: FlagGraph, derived: FlagGraph, base: int,
               n_random: int = 200, conj_len: int = 2, rng_seed: int = 0,
               quick: bool = False) -> PsiReport:
    """Check that psi sends exactly the identities of Aut(R) into the stabilizer.

    ``seed`` is the regular polytope R (the hemi-polytope for a snub).  Every
    relator and every conjugate of one by a short word must map to a word
    fixing ``base``; random words must fix ``base`` after psi exactly when
    they are trivial in Aut(R).  ``quick`` stops at the first failing relator
    and skips the random words.
    """
    m = PSI_MAPS[kind]
    report = PsiReport(kind, base)
    if flag_orbits(seed).count != 1:
        report.failures.append("seed is not regular")
        return report
    rot = m.rotational
    relators = seed_relators(seed, rot)
    n_letters = len(m.images)
    p, q = schlafli_type(seed)

    def to_reflections(w: Word) -> Word:
        return expand_rotations(w) if rot else w

    def inv(w: Word) -> Word:
        return _inverse_rot(w, (p, q)) if rot else inverse_word(w)

    def trivial_in_r(w: Word) -> bool:
        # R is regular: a word fixing one flag is the identity
        return apply_word(seed, 0, to_reflections(w)) == 0

    def fixes(w: Word) -> bool:
        return apply_word(derived, base, psi_apply(m, w)) == base

    conjugators = [()]
    for length in range(1, conj_len + 1):
        conjugators += list(itertools.product(range(n_letters), repeat=length))
    for r in relators:
        if not trivial_in_r(r):
            report.failures.append(f"relator {format_word(r)} is not trivial in R")
            continue
        for c in conjugators:
            w = inv(c) + r + c
            report.relators_checked += 1
            if not fixes(w):
                report.failures.append(f"psi({format_word(w)}) moves the base flag")
                if quick:
                    return report
    if quick:
        return report
    rng = random.Random(rng_seed)
    for _ in range(n_random):
        u = tuple(rng.randrange(n_letters) for _ in range(rng.randint(0, 8)))
        if rng.random() < 0.5:
            w = u + rng.choice(relators) + inv(u)
        else:
            w = u + tuple(rng.randrange(n_letters) for _ in range(rng.randint(1, 6)))
        one, fixed = trivial_in_r(w), fixes(w)
        report.random_checked += 1
        report.identities += one
        if one != fixed:
            report.failures.append(
                f"{format_word(w)}: trivial in R is {one}, psi image fixes base is {fixed}")
    return report


def base_candidates(kind: OperationKind, seed: FlagGraph, derived: FlagGraph) -> list[int]:
    """Flags matching the base-flag description for each operation."""
    p = face_size(seed, 0)
    out = []
    for f in range(derived.n_flags):
        size = face_size(derived, f)
        other = face_size(derived, int(derived.exchange[2, f]))
        if kind is OperationKind.TRUNCATE:
            ok = size == 2 * p and other == 2 * p
        elif kind is OperationKind.FULL_TRUNCATE:
            ok = size == p
        elif kind is OperationKind.RHOMBIFY:
            ok = size == p and other == 4
        elif kind is OperationKind.TRUNCATE_FULL_TRUNCATE:
            ok = size == 2 * p and other == 4
        else:
            ok = size == p
        if ok:
            out.append(f)
    return out


def select_base_flag(kind: OperationKind, seed: FlagGraph, derived: FlagGraph) -> int:
    """First described flag for which relators and their conjugates pass."""
    for f in base_candidates(kind, seed, derived):
        if verify_psi(kind, seed, derived, f, quick=True).ok:
            return f
    raise ValueError(f"no base flag of {kind.name} satisfies the relators")


# --- cover reports -----------------------------------------------------------


@dataclass
class CoverReport:
    name: str
    vertex_symbol: VertexSymbol | None
    schlafli: SchlafliType
    cover_order: BigCount
    stabilizer_order: BigCount
    n_flags: int
    orbit_count: int
    acoptic_ranks: frozenset[int]
    base_flag: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "vertex_symbol": str(self.vertex_symbol) if self.vertex_symbol else None,
            "schlafli": str(self.schlafli),
            "cover_order": self.cover_order.value,
            "cover_order_factored": self.cover_order.factored(),
            "stabilizer_order": self.stabilizer_order.value,
            "stabilizer_order_factored": self.stabilizer_order.factored(),
            "n_flags": self.n_flags,
            "orbit_count": self.orbit_count,
            "acoptic_ranks": sorted(self.acoptic_ranks),
            "base_flag": self.base_flag,
        }


def cover_report(g: FlagGraph, name: str, base: int = 0) -> CoverReport:
    if not 0 <= base < g.n_flags:
        raise ValueError(f"base flag {base} out of range")
    mono = monodromy(g)
    stab = mono.group.point_stabilizer(base)
    orbits = flag_orbits(g)
    reps = list(orbits.representatives)
    reps[orbits.orbit_of[base]] = base
    symbols = vertex_symbols(g) if g.rank == 3 else set()
    return CoverReport(
        name=name,
        vertex_symbol=next(iter(symbols)) if len(symbols) == 1 else None,
        schlafli=schlafli_type(g),
        cover_order=BigCount(mono.group.order()),
        stabilizer_order=BigCount(stab.order()),
        n_flags=g.n_flags,
        orbit_count=orbits.count,
        acoptic_ranks=petrie.acoptic_ranks(g, reps),
        base_flag=base,
    )


def psi_seed_name(entry_name: str) -> str | None:
    """Catalog name of the regular R whose group psi starts from, if any.

    Snubs use the hemi-polytope, since only the rotation subgroup acts.
    """
    from .builders import CATALOG

    entry = CATALOG[entry_name]
    if entry.kind is None:
        return None
    return f"hemi-{entry.seed}" if entry.kind is OperationKind.SNUB else entry.seed


# --- cuboctahedron worked example --------------------------------------------

# face-circuit words for the fourteen faces of the cuboctahedron, in a, b, c
CUBOCTAHEDRON_FACE_WORDS: tuple[str, ...] = (
    "(ab)^4", "((ab)^3)^{c}", "((ab)^4)^{cbabc}", "((ab)^3)^{cba}", "((ab)^4)^{cbcabab}",
    "((ab)^3)^{cbab}", "((ab)^4)^{cbacb}", "((ab)^3)^{cb}", "((ab)^4)^{cbc}",
    "((ab)^3)^{cbcabc}", "((ab)^3)^{cbcabcba}", "((ab)^3)^{cbcabcabab}",
    "((ab)^3)^{cbabacbc}", "((ab)^4)^{cbacbacbc}",
)

# identities of the cube group (s, t, u = rho0, rho1, rho2): square circuits
# and vertex stars, listed in the same face order as above
CUBE_IDENTITY_WORDS: tuple[str, ...] = (
    "(st)^4", "(ut)^3", "((st)^4)^{utu}", "((ut)^3)^{st}", "((st)^4)^{utsts}",
    "((ut)^3)^{sts}", "((st)^4)^{uts}", "((ut)^3)^{s}", "((st)^4)^{u}", "((ut)^3)^{stu}",
    "((ut)^3)^{stus}", "((ut)^3)^{stutsts}", "((ut)^3)^{ststu}", "((st)^4)^{utstu}",
)


class CorrespondenceItem(NamedTuple):
    index: int
    cube_word: str
    face_word: str
    image: str
    equal: bool
    image_fixes_base: bool
    face_word_fixes_base: bool


@dataclass
class CorrespondenceReport:
    items: list[CorrespondenceItem]
    base: int
    face_words_order: int
    stabilizer_order: int

    @property
    def matched(self) -> int:
        return sum(it.equal for it in self.items)

    @property
    def ok(self) -> bool:
        return self.matched == len(self.items)

    @property
    def face_words_generate_stabilizer(self) -> bool:
        return self.face_words_order == self.stabilizer_order


def cuboctahedron_correspondence(g: FlagGraph) -> CorrespondenceReport:
    """Compare psi(cube identity) with the face-circuit word, item by item.

    Equality is as flag permutations of ``g``.  The base flag is the first
    flag fixed by every face-circuit word.
    """
    m = PSI_MAPS[OperationKind.FULL_TRUNCATE]
    face_words = [parse_word(w, "abc") for w in CUBOCTAHEDRON_FACE_WORDS]
    perms = [word_perm(g, w) for w in face_words]
    fixed = np.flatnonzero(np.all([p == np.arange(g.n_flags) for p in perms], axis=0))
    if not len(fixed):
        raise ValueError("no flag is fixed by every face-circuit word")
    base = int(fixed[0])
    items = []
    for k, (text2, text1) in enumerate(zip(CUBE_IDENTITY_WORDS, CUBOCTAHEDRON_FACE_WORDS)):
        image = psi_apply(m, parse_word(text2, "stu"))
        img_perm = word_perm(g, image)
        items.append(CorrespondenceItem(
            k + 1, text2, text1, format_word(image),
            bool(np.array_equal(img_perm, perms[k])),
            int(img_perm[base]) == base, int(perms[k][base]) == base))
    mono = monodromy(g)
    return CorrespondenceReport(
        items, base, PermGroup(perms, g.n_flags).order(),
        mono.group.order() // g.n_flags)

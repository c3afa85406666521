"""Petrie maps, Petrie schemes and acoptic ranks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .flagcore import FlagGraph, Word, flag_orbits, word_perm
from .permgrp import inverse, perm_order


@dataclass(frozen=True, eq=False)
class PetrieMap:
    """A Coxeter element: every exchange map used exactly once, left to right."""

    word: Word
    perm: np.ndarray

    def __post_init__(self):
        if sorted(self.word) != list(range(len(self.word))):
            raise ValueError(f"{self.word} does not use each rank exactly once")

    @classmethod
    def of(cls, g: FlagGraph, word: Sequence[int]) -> "PetrieMap":
        word = tuple(word)
        if len(word) != g.rank:
            raise ValueError("a Petrie map uses each exchange map exactly once")
        return cls(word, word_perm(g, word))


@dataclass(frozen=True)
class PetrieScheme:
    """The cyclic sequence of flags ``f, f.s, f.s^2, ...`` (length ``m``)."""

    flags: tuple[int, ...]

    def __len__(self):
        return len(self.flags)


def coxeter_elements(g: FlagGraph) -> list[PetrieMap]:
    """Distinct Petrie maps, one from each inverse pair.

    For rank 3 these are ``s0 s1 s2`` and ``s0 s2 s1``.
    """
    distinct: list[PetrieMap] = []
    for word in itertools.permutations(range(g.rank)):
        m = PetrieMap.of(g, word)
        if not any(np.array_equal(m.perm, d.perm) for d in distinct):
            distinct.append(m)
    kept: list[PetrieMap] = []
    for m in distinct:
        inv = inverse(m.perm)
        if not any(np.array_equal(inv, k.perm) for k in kept):
            kept.append(m)
    return kept


def scheme(g: FlagGraph, f: int, m: PetrieMap) -> PetrieScheme:
    out = [f]
    x = int(m.perm[f])
    while x != f:
        out.append(x)
        x = int(m.perm[x])
    return PetrieScheme(tuple(out))


def sigma_order_in_cover(g: FlagGraph, m: PetrieMap) -> int:
    """Order of the Petrie map in the monodromy group."""
    return perm_order(m.perm)


def orbit_lengths(g: FlagGraph, m: PetrieMap) -> set[int]:
    """All values of ``m_{j,l}`` for this Petrie map."""
    seen = np.zeros(g.n_flags, dtype=bool)
    out = set()
    for f in range(g.n_flags):
        if not seen[f]:
            s = scheme(g, f, m)
            seen[list(s.flags)] = True
            out.add(len(s))
    return out


def first_repeat(g: FlagGraph, s: PetrieScheme, i: int) -> int | None:
    """Smallest ``1 <= k < len(s)`` whose ``i``-face equals the starting one."""
    labels = g.face_labels(i)[list(s.flags)]
    hits = np.flatnonzero(labels[1:] == labels[0])
    return int(hits[0]) + 1 if len(hits) else None


def acoptic_at(g: FlagGraph, i: int, representatives: Sequence[int] | None = None,
               maps: Sequence[PetrieMap] | None = None) -> bool:
    if representatives is None:
        representatives = flag_orbits(g).representatives
    if maps is None:
        maps = coxeter_elements(g)
    for f in representatives:
        for m in maps:
            if first_repeat(g, scheme(g, f, m), i) is not None:
                return False
    return True


def acoptic_ranks(g: FlagGraph, representatives: Sequence[int] | None = None) -> frozenset[int]:
    """Ranks ``i`` at which no ``i``-face repeats within any Petrie scheme.

    One starting flag per automorphism class suffices, since automorphisms
    commute with the Petrie maps.
    """
    if representatives is None:
        representatives = flag_orbits(g).representatives
    maps = coxeter_elements(g)
    return frozenset(i for i in range(g.rank) if acoptic_at(g, i, representatives, maps))


def is_acoptic(g: FlagGraph) -> bool:
    return acoptic_ranks(g) == frozenset(range(g.rank))


@dataclass(frozen=True)
class PetrieSummary:
    words: tuple[Word, ...]
    orbit_lengths: tuple[frozenset[int], ...]
    orders: tuple[int, ...]
    acoptic_ranks: frozenset[int]

    def to_dict(self) -> dict:
        return {
            "maps": ["".join("s" + str(i) for i in w) for w in self.words],
            "orbit_lengths": [sorted(s) for s in self.orbit_lengths],
            "orders": list(self.orders),
            "acoptic_ranks": sorted(self.acoptic_ranks),
        }


def summarize(g: FlagGraph) -> PetrieSummary:
    maps = coxeter_elements(g)
    return PetrieSummary(
        tuple(m.word for m in maps),
        tuple(frozenset(orbit_lengths(g, m)) for m in maps),
        tuple(sigma_order_in_cover(g, m) for m in maps),
        acoptic_ranks(g),
    )

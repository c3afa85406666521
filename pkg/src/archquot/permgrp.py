"""Permutation groups with a base and strong generating set.

Permutations are integer numpy arrays acting on ``0..n-1`` from the right:
``compose(p, q)`` applies ``p`` first, so ``compose(p, q)[x] == q[p[x]]``.
Orders are exact Python integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Perm = np.ndarray


def identity(n: int) -> Perm:
    return np.arange(n)


def compose(p: Perm, q: Perm) -> Perm:
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return q[p]


def inverse(p: Perm) -> Perm:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


def is_identity(p: Perm) -> bool:
    return bool((p == np.arange(len(p))).all())


def check_perm(p: Perm) -> Perm:
    p = np.asarray(p, dtype=np.intp)
    if p.ndim != 1 or not np.array_equal(np.sort(p), np.arange(len(p))):
        raise ValueError("not a permutation")
    return p


def cycle_lengths(p: Perm) -> list[int]:
    seen = np.zeros(len(p), dtype=bool)
    out = []
    for x in range(len(p)):
        if seen[x]:
            continue
        k = 0
        while not seen[x]:
            seen[x] = True
            x = p[x]
            k += 1
        out.append(k)
    return out


def perm_order(p: Perm) -> int:
    from math import lcm

    return lcm(*cycle_lengths(p))


def factorize(n: int) -> dict[int, int]:
    """Trial division; the orders met here are 11-smooth."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: Counter = Counter()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] += 1
            n //= d
        d += 1
    if n > 1:
        out[n] += 1
    return dict(sorted(out.items()))


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class BigCount:
    value: int

    @property
    def factors(self) -> dict[int, int]:
        return factorize(self.value)

    def factored(self, unicode: bool = False) -> str:
        parts = []
        for p, e in self.factors.items():
            if e == 1:
                parts.append(str(p))
            elif unicode:
                parts.append(f"{p}{str(e).translate(_SUP)}")
            else:
                parts.append(f"{p}^{e}")
        return ("·" if unicode else "*").join(parts) or "1"

    @classmethod
    def from_factors(cls, factors: dict[int, int]) -> "BigCount":
        v = 1
        for p, e in factors.items():
            v *= p**e
        return cls(v)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, BigCount):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)


class _Level:
    """One level of the stabilizer chain: a basic orbit with transversal."""

    __slots__ = ("point", "gens", "pos", "orbit", "inv_rows")

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[Perm] = []
        self.pos = np.full(n, -1, dtype=np.intp)
        self.orbit: list[int] = []
        self.inv_rows = np.empty((0, n), dtype=np.intp)

    def rebuild(self):
        """Breadth-first orbit of ``point`` under ``gens`` with inverse transversal."""
        n = len(self.pos)
        self.pos[:] = -1
        self.pos[self.point] = 0
        orbit = [self.point]
        reps = [np.arange(n)]
        k = 0
        while k < len(orbit):
            u = reps[k]
            x = orbit[k]
            for g in self.gens:
                y = int(g[x])
                if self.pos[y] < 0:
                    self.pos[y] = len(orbit)
                    orbit.append(y)
                    reps.append(g[u])
            k += 1
        self.orbit = orbit
        rows = np.stack(reps)
        inv = np.empty_like(rows)
        np.put_along_axis(inv, rows, np.broadcast_to(np.arange(n), rows.shape), axis=1)
        self.inv_rows = inv

    def transversal(self, x: int) -> Perm:
        return inverse(self.inv_rows[self.pos[x]])


class PermGroup:
    """Finite permutation group with a complete base and strong generating set.

    The chain is built eagerly.  A seeded random Schreier-Sims pass proposes
    strong generators; a deterministic Schreier-Sims pass then sifts every
    Schreier generator, so the result is exact and reproducible.

    ``base`` fixes a prefix of the base; further base points are the smallest
    (``base_rule="smallest"``) or largest moved point of the new generator.
    """

    def __init__(
        self,
        generators: Iterable[Perm],
        degree: int | None = None,
        base: Sequence[int] = (),
        base_rule: str = "smallest",
        seed: int = 0,
    ):
        gens = [check_perm(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators of different degree")
        if base_rule not in ("smallest", "largest"):
            raise ValueError("base_rule must be 'smallest' or 'largest'")
        self.degree = degree
        self.generators = gens
        self.base_rule = base_rule
        self._levels: list[_Level] = []
        for b in base:
            if not 0 <= b < degree:
                raise ValueError(f"base point {b} out of range")
            self._levels.append(_Level(int(b), degree))
        nontrivial = [g for g in gens if not is_identity(g)]
        if nontrivial:
            self._random_schreier_sims(nontrivial, np.random.default_rng(seed))
            self._complete(nontrivial)

    @classmethod
    def _from_levels(cls, degree: int, levels: list[_Level], generators: list[Perm]) -> "PermGroup":
        self = cls.__new__(cls)
        self.degree = degree
        self.generators = generators
        self.base_rule = "smallest"
        self._levels = levels
        return self

    # -- chain construction -------------------------------------------------

    def _new_base_point(self, h: Perm) -> int:
        moved = np.flatnonzero(h != np.arange(self.degree))
        return int(moved[0] if self.base_rule == "smallest" else moved[-1])

    def _strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            r = lv.pos[g[lv.point]]
            if r < 0:
                return g, i
            g = lv.inv_rows[r][g]
        return g, len(self._levels)

    def _add_strong(self, h: Perm, upto: int, start: int = 0):
        """Add ``h`` (fixing base points before ``upto``) to levels start..upto."""
        if upto == len(self._levels):
            self._levels.append(_Level(self._new_base_point(h), self.degree))
        for i in range(start, upto + 1):
            self._levels[i].gens.append(h)
            self._levels[i].rebuild()

    def _random_schreier_sims(self, gens: list[Perm], rng: np.random.Generator, patience: int = 40):
        # product replacement state
        state = [g.copy() for g in gens]
        while len(state) < 10:
            state.append(state[len(state) % len(gens)].copy())
        acc = np.arange(self.degree)

        def rand_elem():
            nonlocal acc
            i, j = rng.choice(len(state), 2, replace=False)
            if rng.random() < 0.5:
                state[i] = state[i][state[j]] if rng.random() < 0.5 else state[j][state[i]]
            else:
                jinv = inverse(state[j])
                state[i] = jinv[state[i]] if rng.random() < 0.5 else state[i][jinv]
            acc = state[i][acc]
            return acc

        for _ in range(50):
            rand_elem()
        for g in gens:
            h, j = self._strip(g)
            if not is_identity(h):
                self._add_strong(h, j)
        quiet = 0
        while quiet < patience:
            h, j = self._strip(rand_elem())
            if is_identity(h):
                quiet += 1
            else:
                quiet = 0
                self._add_strong(h, j)

    def _complete(self, gens: list[Perm]):
        """Deterministic Schreier-Sims check, repairing the chain where needed."""
        # the input generators must lie in the group described by the chain
        changed = True
        while changed:
            changed = False
            for g in gens:
                h, j = self._strip(g)
                if not is_identity(h):
                    self._add_strong(h, j)
                    changed = True
        i = len(self._levels) - 1
        while i >= 0:
            failed = self._check_level(i, gens if i == 0 else None)
            if failed is None:
                i -= 1
                continue
            h, j = failed
            self._add_strong(h, j, start=i + 1)
            i = j

    def _check_level(self, i: int, gens: list[Perm] | None = None, batch: int = 4096):
        """Sift the Schreier generators of level ``i`` through levels ``i+1..``.

        Any generating set of the level's group will do; at level 0 the input
        generators are much fewer than the strong generators.
        """
        lv = self._levels[i]
        n = self.degree
        orbit = np.array(lv.orbit)
        # u_beta as rows; Schreier generator = u_beta * s * u_{beta s}^-1
        u = np.empty_like(lv.inv_rows)
        np.put_along_axis(u, lv.inv_rows, np.broadcast_to(np.arange(n), u.shape), axis=1)
        for s in (lv.gens if gens is None else gens):
            targets = lv.pos[s[orbit]]
            rows = s[u]
            for lo in range(0, len(orbit), batch):
                B = lv.inv_rows[targets[lo:lo + batch]]
                B = np.take_along_axis(B, rows[lo:lo + batch], axis=1)
                res = self._strip_batch(B, i + 1)
                if res is not None:
                    return res
        return None

    def _strip_batch(self, B: np.ndarray, start: int):
        ident = np.arange(self.degree)
        for k in range(start, len(self._levels)):
            lv = self._levels[k]
            r = lv.pos[B[:, lv.point]]
            bad = np.flatnonzero(r < 0)
            if len(bad):
                return B[bad[0]].copy(), k
            B = np.take_along_axis(lv.inv_rows[r], B, axis=1)
        nontriv = np.flatnonzero((B != ident).any(axis=1))
        if len(nontriv):
            return B[nontriv[0]].copy(), len(self._levels)
        return None

    # -- queries ------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    @property
    def basic_orbit_lengths(self) -> list[int]:
        return [len(lv.orbit) for lv in self._levels]

    @property
    def strong_generators(self) -> list[Perm]:
        seen: dict[bytes, Perm] = {}
        for lv in self._levels:
            for g in lv.gens:
                seen.setdefault(g.tobytes(), g)
        return list(seen.values())

    def order(self) -> int:
        out = 1
        for lv in self._levels:
            out *= len(lv.orbit)
        return out

    def order_count(self) -> BigCount:
        return BigCount(self.order())

    def contains(self, p: Perm) -> bool:
        p = check_perm(p)
        if len(p) != self.degree:
            raise ValueError(f"degree mismatch: {len(p)} vs {self.degree}")
        h, _ = self._strip(p)
        return is_identity(h)

    __contains__ = contains

    def orbit(self, x: int) -> dict[int, tuple[int, ...]]:
        """Orbit of ``x`` with, per point, a word in generator indices reaching it."""
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range")
        words = {x: ()}
        queue = [x]
        k = 0
        while k < len(queue):
            y = queue[k]
            for i, g in enumerate(self.generators):
                z = int(g[y])
                if z not in words:
                    words[z] = words[y] + (i,)
                    queue.append(z)
            k += 1
        return words

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def point_stabilizer(self, x: int) -> "PermGroup":
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range")
        if self._levels and self._levels[0].point == x:
            chain = self
        else:
            chain = PermGroup(self.generators, self.degree, base=[x])
        levels = chain._levels[1:]
        gens = levels[0].gens if levels else []
        return PermGroup._from_levels(self.degree, levels, list(gens))

    def elements(self, limit: int = 10**5) -> list[Perm]:
        """Brute-force closure under the generators (for small groups)."""
        ident = np.arange(self.degree)
        seen = {ident.tobytes(): ident}
        queue = [ident]
        k = 0
        while k < len(queue):
            p = queue[k]
            for g in self.generators:
                q = g[p]
                key = q.tobytes()
                if key not in seen:
                    seen[key] = q
                    queue.append(q)
                    if len(seen) > limit:
                        raise ValueError(f"group has more than {limit} elements")
            k += 1
        return queue

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"

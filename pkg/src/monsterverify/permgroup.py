"""Permutation groups on the points 0..degree-1, with exact order computation.

Permutations are numpy int arrays p with p[i] = image of i; composition is
fancy indexing, so products cost one vectorized gather.  Orders come from a
deterministic stabilizer chain (Schreier-Sims): base points are chosen
greedily as points lying in the smallest nontrivial cycle of the generator
being placed, Schreier generators are processed in a fixed order, and the
order is the product of the transversal sizes,

    |G| = |orbit(b_1)| * |Stab(b_1) orbit(b_2)| * ...

which realizes the orbit-stabilizer recursion exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .gf2 import Subspace, rref

__all__ = ["PermGroup", "StabilizerChain", "orbit_of_point", "subspace_orbit"]


def _as_perm(p, degree: int) -> np.ndarray:
    arr = np.asarray(p, dtype=np.int64)
    if arr.shape != (degree,):
        raise ValueError("permutation has the wrong degree")
    return arr


def _inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


@dataclass
class _Level:
    base: int
    gens: list[np.ndarray] = field(default_factory=list)
    transversal: dict[int, np.ndarray] = field(default_factory=dict)

    def rebuild(self, identity: np.ndarray) -> None:
        t = {self.base: identity}
        frontier = [self.base]
        while frontier:
            nxt = []
            for p in frontier:
                for s in self.gens:
                    q = int(s[p])
                    if q not in t:
                        t[q] = s[t[p]]  # maps base -> p -> q
                        nxt.append(q)
            frontier = nxt
        self.transversal = t


class StabilizerChain:
    """Deterministic incremental Schreier-Sims structure."""

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = np.arange(degree, dtype=np.int64)
        self.levels: list[_Level] = []

    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.transversal)
        return out

    def contains(self, g) -> bool:
        residue, _ = self._sift(_as_perm(g, self.degree), 0)
        return bool(np.array_equal(residue, self.identity))

    def extend(self, g) -> None:
        self._place(_as_perm(g, self.degree), 0)

    # -- internals ---------------------------------------------------------

    def _sift(self, g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = int(g[lvl.base])
            rep = lvl.transversal.get(x)
            if rep is None:
                return g, i
            g = _inverse(rep)[g]
        return g, len(self.levels)

    def _place(self, g: np.ndarray, start: int) -> None:
        residue, i = self._sift(g, start)
        if np.array_equal(residue, self.identity):
            return
        if i == len(self.levels):
            self.levels.append(_Level(self._choose_base(residue)))
        lvl = self.levels[i]
        lvl.gens.append(residue)
        self._close(i)

    def _choose_base(self, g: np.ndarray) -> int:
        """A moved point in the smallest nontrivial cycle of g."""
        seen = np.zeros(self.degree, dtype=bool)
        best: tuple[int, int] | None = None
        for start in range(self.degree):
            if seen[start] or g[start] == start:
                continue
            length = 0
            p = start
            while not seen[p]:
                seen[p] = True
                length += 1
                p = int(g[p])
            if best is None or (length, start) < best:
                best = (length, start)
        if best is None:
            raise ValueError("identity permutation has no base point")
        return best[1]

    def _close(self, i: int) -> None:
        """Rebuild level i and sift all its Schreier generators downward."""
        lvl = self.levels[i]
        lvl.rebuild(self.identity)
        for p in sorted(lvl.transversal):
            t_p = lvl.transversal[p]
            for s in lvl.gens:
                rep = lvl.transversal[int(s[p])]
                schreier = _inverse(rep)[s[t_p]]
                if not np.array_equal(schreier, self.identity):
                    self._place(schreier, i + 1)


class PermGroup:
    """A permutation group given by generators on points 0..degree-1."""

    def __init__(self, degree: int, generators: Iterable):
        self.degree = degree
        self.generators = [_as_perm(g, degree) for g in generators]
        self._chain: StabilizerChain | None = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            chain = StabilizerChain(self.degree)
            for g in self.generators:
                chain.extend(g)
            self._chain = chain
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def base(self) -> list[int]:
        return [lvl.base for lvl in self.chain.levels]

    def contains(self, g) -> bool:
        return self.chain.contains(g)

    def small_generating_subset(self) -> list[np.ndarray]:
        """A prefix-greedy generating subset: generators that enlarged the
        group when added in order.  Useful to keep orbit walks cheap."""
        chain = StabilizerChain(self.degree)
        picked: list[np.ndarray] = []
        for g in self.generators:
            if not chain.contains(g):
                picked.append(g)
                chain.extend(g)
        return picked

    def orbit(self, point: int, gens: Sequence[np.ndarray] | None = None) -> set[int]:
        return orbit_of_point(gens if gens is not None else self.generators, point)

    def orbits(self) -> list[set[int]]:
        remaining = set(range(self.degree))
        out = []
        while remaining:
            p = min(remaining)
            orb = self.orbit(p)
            out.append(orb)
            remaining -= orb
        return out


def orbit_of_point(gens: Sequence[np.ndarray], point: int) -> set[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = int(g[p])
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def subspace_orbit(
    gens: Sequence[np.ndarray],
    start: Subspace,
    with_stabilizer: bool = False,
) -> tuple[int, list[np.ndarray]]:
    """Orbit size of a subspace under induced action of point permutations.

    Points are vectors of F2^n as ints, so the action on a subspace is
    image-of-basis followed by canonical rref.  With ``with_stabilizer`` the
    Schreier generators of the stabilizer of ``start`` are also returned, so
    that |G| = orbit * |<stabilizer gens>| can be verified independently.
    """
    n = start.ambient_dim
    identity = np.arange(1 << n, dtype=np.int64)

    def image(g: np.ndarray, rows: tuple[int, ...]) -> tuple[int, ...]:
        return rref((int(g[r]) for r in rows), n)

    start_key = start.rows
    transversal: dict[tuple[int, ...], np.ndarray] = {start_key: identity}
    frontier = [start_key]
    stab_gens: list[np.ndarray] = []
    seen_stab: set[bytes] = set()
    while frontier:
        nxt = []
        for key in frontier:
            t_k = transversal[key]
            for g in gens:
                img = image(g, key)
                if img not in transversal:
                    transversal[img] = g[t_k]
                    nxt.append(img)
                elif with_stabilizer:
                    schreier = _inverse(transversal[img])[g[t_k]]
                    h = schreier.tobytes()
                    if h not in seen_stab:
                        seen_stab.add(h)
                        stab_gens.append(schreier)
        frontier = nxt
    return len(transversal), stab_gens

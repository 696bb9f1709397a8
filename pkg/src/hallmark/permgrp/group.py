"""Permutation groups backed by a deterministic Schreier-Sims chain."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import FormatError, ResourceLimitError
from .perm import (
    Permutation,
    RawPerm,
    as_raw_list,
    raw_identity,
    raw_inv,
    raw_is_identity,
    raw_mul,
)

DEFAULT_MAX_ELEMENTS = 10**6


def element_cap() -> int:
    """Enumeration cap, overridable through HALLMARK_MAX_ELEMENTS."""
    env = os.environ.get("HALLMARK_MAX_ELEMENTS")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MAX_ELEMENTS


@dataclass
class _Level:
    point: int
    gens: list = field(default_factory=list)
    # point -> (u, u^-1) where u maps `point` to that point
    trans: dict = field(default_factory=dict)

    def extend_orbit(self, degree: int) -> None:
        if not self.trans:
            ident = raw_identity(degree)
            self.trans[self.point] = (ident, ident)
        queue = list(self.trans)
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            u = self.trans[beta][0]
            for s in self.gens:
                img = s[beta]
                if img not in self.trans:
                    v = raw_mul(u, s)
                    self.trans[img] = (v, raw_inv(v))
                    queue.append(img)


class StabChain:
    """Base, strong generators and transversals for a permutation group."""

    def __init__(self, degree: int, gens: Sequence[RawPerm]):
        self.degree = degree
        self.levels: list[_Level] = []
        gens = [g for g in gens if not raw_is_identity(g)]
        self._build(gens)

    def _new_level(self, moved_by: RawPerm) -> _Level:
        point = next(i for i, x in enumerate(moved_by) if x != i)
        lvl = _Level(point)
        self.levels.append(lvl)
        return lvl

    def _build(self, gens: list[RawPerm]) -> None:
        base: list[int] = []
        for g in gens:
            if all(g[b] == b for b in base):
                self._new_level(g)
                base.append(self.levels[-1].point)
        for lvl_idx, lvl in enumerate(self.levels):
            prefix = base[:lvl_idx]
            lvl.gens = [g for g in gens if all(g[b] == b for b in prefix)]
            lvl.extend_orbit(self.degree)
        done: list[set] = [set() for _ in self.levels]
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            restarted = False
            for beta in list(lvl.trans):
                u_beta = lvl.trans[beta][0]
                for gi, s in enumerate(lvl.gens):
                    if (beta, gi) in done[i]:
                        continue
                    done[i].add((beta, gi))
                    h = raw_mul(raw_mul(u_beta, s), lvl.trans[s[beta]][1])
                    if raw_is_identity(h):
                        continue
                    residue, j = self.sift(h, i + 1)
                    if j == len(self.levels) and raw_is_identity(residue):
                        continue
                    if j == len(self.levels):
                        self._new_level(residue)
                        done.append(set())
                    for l in range(i + 1, j + 1):
                        self.levels[l].gens.append(residue)
                        self.levels[l].extend_orbit(self.degree)
                    i = j
                    restarted = True
                    break
                if restarted:
                    break
            if not restarted:
                i -= 1

    def sift(self, g: RawPerm, start: int = 0) -> tuple[RawPerm, int]:
        for l in range(start, len(self.levels)):
            lvl = self.levels[l]
            beta = g[lvl.point]
            t = lvl.trans.get(beta)
            if t is None:
                return g, l
            g = raw_mul(g, t[1])
        return g, len(self.levels)

    def contains(self, g: RawPerm) -> bool:
        residue, j = self.sift(g)
        return j == len(self.levels) and raw_is_identity(residue)

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    def orbit_lengths(self) -> list[int]:
        return [len(lvl.trans) for lvl in self.levels]

    def order(self) -> int:
        o = 1
        for n in self.orbit_lengths():
            o *= n
        return o

    def elements(self) -> list[RawPerm]:
        elems = [raw_identity(self.degree)]
        for lvl in reversed(self.levels):
            us = [t[0] for _, t in sorted(lvl.trans.items())]
            elems = [raw_mul(h, u) for h in elems for u in us]
        return elems


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built on construction; the sorted element list
    is computed on first request and cached.
    """

    def __init__(self, degree: int, gens: Iterable[Permutation] = (), *, name: str | None = None):
        if degree < 1:
            raise FormatError(f"degree must be at least 1, got {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.raw_gens: list[RawPerm] = as_raw_list(self.generators, degree)
        self.name = name
        self.chain = StabChain(degree, self.raw_gens)
        self._order = self.chain.order()
        self._elements: list[RawPerm] | None = None
        for g in self.raw_gens:
            assert self.chain.contains(g)

    @classmethod
    def from_raw(cls, degree: int, raw_gens: Iterable[RawPerm], name: str | None = None) -> "PermGroup":
        return cls(degree, [Permutation.from_raw(g) for g in raw_gens], name=name)

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def contains(self, x: Permutation) -> bool:
        if x.degree != self.degree:
            raise FormatError(f"degree mismatch: {x.degree} vs {self.degree}")
        return self.chain.contains(x.raw)

    def __contains__(self, x: Permutation) -> bool:
        return self.contains(x)

    def raw_elements(self, cap: int | None = None) -> list[RawPerm]:
        if cap is None:
            cap = element_cap()
        if self._order > cap:
            raise ResourceLimitError(f"|G| = {self._order} exceeds the enumeration cap {cap}")
        if self._elements is None:
            self._elements = sorted(self.chain.elements())
        return self._elements

    def enumerate_elements(self, cap: int | None = None) -> list[Permutation]:
        return [Permutation.from_raw(e) for e in self.raw_elements(cap)]

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self._order}>"


def group_from_generators(degree: int, gens: Iterable[Permutation], name: str | None = None) -> PermGroup:
    return PermGroup(degree, gens, name=name)


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, x: Permutation) -> bool:
    return G.contains(x)


def enumerate_elements(G: PermGroup, cap: int | None = None) -> list[Permutation]:
    return G.enumerate_elements(cap)

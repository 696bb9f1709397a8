"""Subgroups as sets of element indices, and enumeration by cyclic extension.

An :class:`ElementTable` numbers the elements of a group in lexicographic
order of their image tuples.  A subgroup is then a frozenset of indices and
its canonical key is the sorted index tuple, which is the same thing as the
sorted list of its image arrays.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from ..errors import ResourceLimitError
from .group import PermGroup
from .perm import Permutation, RawPerm, raw_inv, raw_mul

DEFAULT_MAX_SUBGROUPS = 10**5


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup of a parent group of order ``parent_order``."""

    generators: tuple[Permutation, ...]
    order: int
    parent_order: int
    key: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.parent_order % self.order:
            raise ValueError(f"order {self.order} does not divide {self.parent_order}")
        if self.key is not None and len(self.key) != self.order:
            raise ValueError("canonical key size disagrees with the order")

    def as_group(self, degree: int) -> PermGroup:
        return PermGroup(degree, self.generators)


class ElementTable:
    """Indexed elements of G with inverses and lazily built conjugation maps."""

    def __init__(self, G: PermGroup, cap: int | None = None):
        self.group = G
        self.elems: list[RawPerm] = G.raw_elements(cap)
        self.index: dict[RawPerm, int] = {e: i for i, e in enumerate(self.elems)}
        self.identity = 0  # the identity tuple sorts first
        self.n = len(self.elems)
        self.gen_idx = [self.index[g] for g in G.raw_gens]
        self._inv: list[int] | None = None
        self._conj: dict[int, list[int]] = {}

    @property
    def inv(self) -> list[int]:
        if self._inv is None:
            idx = self.index
            self._inv = [idx[raw_inv(e)] for e in self.elems]
        return self._inv

    def mul(self, i: int, j: int) -> int:
        return self.index[raw_mul(self.elems[i], self.elems[j])]

    def conj(self, i: int, g: int) -> int:
        """Index of x^g = g^-1 x g."""
        e = self.elems
        return self.index[raw_mul(raw_mul(e[self.inv[g]], e[i]), e[g])]

    def conj_table(self, g: int) -> list[int]:
        t = self._conj.get(g)
        if t is None:
            e, idx = self.elems, self.index
            gr, gi = e[g], e[self.inv[g]]
            t = [idx[raw_mul(raw_mul(gi, x), gr)] for x in e]
            self._conj[g] = t
        return t

    def power_in(self, x: int, p: int, H: frozenset) -> bool:
        y = x
        for _ in range(p - 1):
            y = self.mul(y, x)
        return y in H

    def closure(self, gens: Iterable[int]) -> frozenset:
        """Subgroup generated by ``gens`` (index set), by breadth-first products."""
        gens = [g for g in gens if g != self.identity]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def conjugate_set(self, H: frozenset, g: int) -> frozenset:
        t = self.conj_table(g)
        return frozenset(t[h] for h in H)

    def conjugates(self, H: frozenset) -> list[frozenset]:
        """The conjugacy class of H, by orbiting under the generators of G."""
        tables = [self.conj_table(g) for g in self.gen_idx]
        seen = {H}
        out = [H]
        i = 0
        while i < len(out):
            K = out[i]
            i += 1
            for t in tables:
                L = frozenset(t[k] for k in K)
                if L not in seen:
                    seen.add(L)
                    out.append(L)
        return out

    def normalizer(self, H: frozenset, gens: Iterable[int]) -> list[int]:
        gens = list(gens)
        e, idx, inv = self.elems, self.index, self.inv
        out = []
        for x in range(self.n):
            xr, xi = e[x], e[inv[x]]
            if all(idx[raw_mul(raw_mul(xi, e[h]), xr)] in H for h in gens):
                out.append(x)
        return out

    def coset_union(self, H: frozenset, g: int, p: int) -> frozenset:
        """⟨H, g⟩ when g normalizes H and g^p ∈ H."""
        out = set(H)
        layer = H
        for _ in range(p - 1):
            layer = frozenset(self.mul(h, g) for h in layer)
            out |= layer
        return frozenset(out)

    def element_classes(self) -> list[list[int]]:
        """Conjugacy classes of elements, each sorted, ordered by least member."""
        tables = [self.conj_table(g) for g in self.gen_idx]
        label = [-1] * self.n
        classes = []
        for x in range(self.n):
            if label[x] >= 0:
                continue
            cid = len(classes)
            label[x] = cid
            cls = [x]
            i = 0
            while i < len(cls):
                y = cls[i]
                i += 1
                for t in tables:
                    z = t[y]
                    if label[z] < 0:
                        label[z] = cid
                        cls.append(z)
            classes.append(sorted(cls))
        return classes

    def perm(self, i: int) -> Permutation:
        return Permutation.from_raw(self.elems[i])

    def handle(self, H: frozenset, gens: Iterable[int]) -> SubgroupHandle:
        return SubgroupHandle(
            generators=tuple(self.perm(g) for g in gens),
            order=len(H),
            parent_order=self.n,
            key=tuple(sorted(H)),
        )


@dataclass
class SubgroupClass:
    rep: frozenset
    gens: tuple[int, ...]
    size: int  # number of conjugates

    @property
    def order(self) -> int:
        return len(self.rep)


class CyclicExtension:
    """Conjugacy classes of soluble subgroups, grown one prime at a time.

    Starting from the trivial group, every class representative H is
    extended by each element g of N(H) \\ H with g^p ∈ H for a prime p,
    giving ⟨H, g⟩ of order p|H|.  Every soluble subgroup has a subnormal
    series with prime factors, so all of them are reached.  ``order_filter``
    prunes orders; it must accept every divisor of an accepted order.
    """

    def __init__(
        self,
        table: ElementTable,
        order_filter: Callable[[int], bool] = lambda d: True,
        max_subgroups: int = DEFAULT_MAX_SUBGROUPS,
    ):
        self.table = table
        self.order_filter = order_filter
        self.max_subgroups = max_subgroups
        self.classes: list[SubgroupClass] = []
        self._class_of: dict[frozenset, int] = {}
        self._stored = 0

    def _register(self, K: frozenset, gens: tuple[int, ...]) -> int | None:
        if K in self._class_of:
            return None
        orbit = self.table.conjugates(K)
        self._stored += len(orbit)
        if self._stored > self.max_subgroups:
            raise ResourceLimitError(
                f"more than {self.max_subgroups} subgroups stored during cyclic extension"
            )
        cid = len(self.classes)
        for L in orbit:
            self._class_of[L] = cid
        self.classes.append(SubgroupClass(K, gens, len(orbit)))
        return cid

    def run(self) -> Iterator[SubgroupClass]:
        """Yield each new class as soon as it is found, smallest orders first."""
        t = self.table
        trivial = frozenset([t.identity])
        cid = self._register(trivial, ())
        heap = [(1, cid)]
        while heap:
            _, cid = heapq.heappop(heap)
            cls = self.classes[cid]
            yield cls
            H = cls.rep
            covered = set(H)
            for x in t.normalizer(H, cls.gens):
                if x in covered:
                    continue
                # least m with x^m in H; extend by a prime power of x
                m, y = 1, x
                while y not in H:
                    y = t.mul(y, x)
                    m += 1
                p = _least_prime_factor(m)
                g = x
                for _ in range(m // p - 1):
                    g = t.mul(g, x)
                if not self.order_filter(len(H) * p):
                    continue
                K = t.coset_union(H, g, p)
                if m == p:
                    covered |= K
                new = self._register(K, cls.gens + (g,))
                if new is not None:
                    heapq.heappush(heap, (len(K), new))

    def all_classes(self) -> list[SubgroupClass]:
        for _ in self.run():
            pass
        return self.classes


def _least_prime_factor(m: int) -> int:
    p = 2
    while p * p <= m:
        if m % p == 0:
            return p
        p += 1
    return m


def enumerate_soluble_subgroups(
    G: PermGroup,
    order_filter: Callable[[int], bool] = lambda d: True,
    max_subgroups: int = DEFAULT_MAX_SUBGROUPS,
    cap: int | None = None,
) -> list[SubgroupHandle]:
    """One representative per conjugacy class of soluble subgroups whose
    order passes ``order_filter``."""
    table = ElementTable(G, cap)
    ce = CyclicExtension(table, order_filter, max_subgroups)
    return [table.handle(c.rep, c.gens) for c in ce.all_classes()]


def naive_subgroups(table: ElementTable) -> set[frozenset]:
    """Every subgroup, as joins of cyclic subgroups closed under pairwise join.

    Independent of cyclic extension; quadratic in the subgroup count, so only
    for small groups.
    """
    cyclic: dict[frozenset, int] = {}
    for x in range(table.n):
        cyclic.setdefault(table.closure([x]), x)
    subs: dict[frozenset, tuple[int, ...]] = {C: (x,) for C, x in cyclic.items()}
    frontier = dict(subs)
    while frontier:
        new: dict[frozenset, tuple[int, ...]] = {}
        for A, gens in frontier.items():
            for C, x in cyclic.items():
                if C <= A:
                    continue
                J = table.closure(gens + (x,))
                if J not in subs and J not in new:
                    new[J] = gens + (x,)
        subs.update(new)
        frontier = new
    return set(subs)

"""Sylow and Hall subgroup search, Hall E/C/D checks, normal structure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..arith import PrimeSet, factorize, pi_part
from ..errors import ScopeError
from .group import PermGroup, StabChain
from .lattice import CyclicExtension, ElementTable, SubgroupHandle
from .perm import Permutation, raw_conj, raw_inv


@dataclass(frozen=True)
class HallWitness:
    subgroup: SubgroupHandle
    pi: PrimeSet
    conjugacy_class_count: int | None = None

    def __post_init__(self):
        expected = pi_part(self.subgroup.parent_order, self.pi)
        if self.subgroup.order != expected:
            raise ValueError(f"witness of order {self.subgroup.order}, expected {expected}")

    @property
    def order(self) -> int:
        return self.subgroup.order


@dataclass(frozen=True)
class HallClasses:
    count: int
    representatives: tuple[SubgroupHandle, ...]


@dataclass(frozen=True)
class HallProperties:
    """E, C, D for one (G, π).  C and D are None when not computed."""

    E: bool
    C: bool | None
    D: bool | None
    witness: HallWitness | None = None
    class_count: int | None = None
    method: str = ""


def _tables(G: PermGroup, table: ElementTable | None) -> ElementTable:
    return table if table is not None else ElementTable(G)


def relevant_primes(G: PermGroup, pi: Iterable[int]) -> PrimeSet:
    return PrimeSet(pi) & factorize(G.order()).primes()


# ---------------------------------------------------------------------------
# Sylow subgroups


def sylow_subgroup(table: ElementTable, p: int) -> tuple[frozenset, tuple[int, ...]]:
    """A Sylow p-subgroup, grown by adjoining g in N(H) \\ H with g^p in H.

    A p-subgroup that is not Sylow has p dividing |N(H) : H|, so the loop
    always finds an extension.  Elements are scanned in index order, so the
    result is deterministic.
    """
    target = pi_part(table.n, [p])
    H = frozenset([table.identity])
    gens: tuple[int, ...] = ()
    while len(H) < target:
        for x in range(table.n):
            if x in H or not table.power_in(x, p, H):
                continue
            if all(table.conj(h, x) in H for h in gens):
                H = table.coset_union(H, x, p)
                gens += (x,)
                break
        else:  # pragma: no cover - Sylow's theorem
            raise AssertionError("no p-extension found below the Sylow order")
    return H, gens


# ---------------------------------------------------------------------------
# Hall subgroups


def _product_sets(table: ElementTable, sigma: PrimeSet) -> tuple[list[frozenset], list[tuple[int, ...]]]:
    """All Hall sigma-subgroups containing a fixed Sylow r-subgroup P, for
    sigma = {r, s}.

    A Hall subgroup H ⊇ P has the form PQ for a Sylow s-subgroup Q of H, and
    PQ is a subgroup exactly when qP ⊆ PQ for each generator q of Q.  Every
    Hall subgroup is conjugate to one containing P, so the list meets every
    class.
    """
    r, s = sigma.primes
    P, pgens = sylow_subgroup(table, r)
    Q0, qgens0 = sylow_subgroup(table, s)
    found: list[frozenset] = []
    found_gens: list[tuple[int, ...]] = []
    seen: set[frozenset] = set()
    # walk the Sylow s-class with generator images tracked alongside
    tables = [table.conj_table(g) for g in table.gen_idx]
    queue = [(Q0, qgens0)]
    visited = {Q0}
    i = 0
    while i < len(queue):
        Q, qgens = queue[i]
        i += 1
        PQ = frozenset(table.mul(x, y) for x in P for y in Q)
        if PQ not in seen and all(table.mul(q, x) in PQ for q in qgens for x in P):
            seen.add(PQ)
            found.append(PQ)
            found_gens.append(pgens + qgens)
        for t in tables:
            Q2 = frozenset(t[x] for x in Q)
            if Q2 not in visited:
                visited.add(Q2)
                queue.append((Q2, tuple(t[x] for x in qgens)))
    return found, found_gens


def _hall_search(G: PermGroup, pi: Iterable[int], table: ElementTable | None, all_classes: bool):
    """Returns (table, [(set, gens)] class representatives, complete).

    The set is None for the trivial subgroup and "whole" for G itself; no
    element table is built in those two cases.
    """
    sigma = relevant_primes(G, pi)
    spectrum = factorize(G.order()).primes()
    target = pi_part(G.order(), sigma)
    if not sigma:
        return table, [(None, ())], True
    if sigma.primes == spectrum:
        return table, [("whole", ())], True
    t = _tables(G, table)
    if len(sigma) == 1:
        return t, [sylow_subgroup(t, sigma.primes[0])], True
    if len(sigma) == 2:
        reps = []
        assigned: set[frozenset] = set()
        for H, g in zip(*_product_sets(t, sigma)):
            if H in assigned:
                continue
            reps.append((H, g))
            if not all_classes:
                break
            assigned.update(t.conjugates(H))
        return t, reps, True
    # three or more primes: soluble Hall subgroups only
    reps = []
    for cls in CyclicExtension(t, lambda d: target % d == 0).run():
        if cls.order == target:
            reps.append((cls.rep, cls.gens))
            if not all_classes:
                break
    return t, reps, False


def _to_handle(G: PermGroup, t: ElementTable | None, H, gens) -> SubgroupHandle:
    if H is None:
        return SubgroupHandle((), 1, G.order(), None)
    if H == "whole":
        return SubgroupHandle(G.generators, G.order(), G.order(), None)
    return t.handle(H, gens)


def find_hall_subgroup(G: PermGroup, pi: Iterable[int], table: ElementTable | None = None) -> HallWitness | None:
    """A Hall pi-subgroup of G, or None.

    With at most two primes of pi dividing |G| the search is exhaustive, so
    None proves there is none.  With more primes only soluble subgroups are
    searched and None is inconclusive.
    """
    t, reps, _ = _hall_search(G, pi, table, all_classes=False)
    if not reps:
        return None
    return HallWitness(_to_handle(G, t, *reps[0]), PrimeSet(pi))


def hall_conjugacy_classes(G: PermGroup, pi: Iterable[int], table: ElementTable | None = None) -> HallClasses:
    """Number of conjugacy classes of Hall pi-subgroups, with representatives."""
    sigma = relevant_primes(G, pi)
    if 2 < len(sigma) < len(factorize(G.order())):
        raise ScopeError(
            f"conjugacy classes of Hall subgroups need |pi ∩ pi(G)| <= 2, got {sigma}"
        )
    t, reps, _ = _hall_search(G, pi, table, all_classes=True)
    return HallClasses(len(reps), tuple(_to_handle(G, t, H, g) for H, g in reps))


def _d_property(table: ElementTable, hall: frozenset, target: int) -> bool:
    """Every pi-subgroup lies in a conjugate of ``hall``.

    The pi-subgroups here are soluble, so cyclic extension meets every class
    of them; one representative per class suffices.
    """
    conjugates = table.conjugates(hall)
    ce = CyclicExtension(table, lambda d: target % d == 0)
    for cls in ce.run():
        if not any(cls.rep <= K for K in conjugates):
            return False
    return True


def check_E_C_D(G: PermGroup, pi: Iterable[int], table: ElementTable | None = None) -> HallProperties:
    """Decide E_pi, C_pi and D_pi for G by exhaustive search.

    With |pi ∩ pi(G)| > 2 only E can be shown (by finding a soluble Hall
    subgroup) and C, D are left as None; if no soluble Hall subgroup exists
    the question is out of scope.
    """
    pi = PrimeSet(pi)
    sigma = relevant_primes(G, pi)
    spectrum = factorize(G.order()).primes()
    if not sigma or sigma.primes == spectrum:
        w = find_hall_subgroup(G, pi, table)
        return HallProperties(True, True, True, w, 1, "trivial" if not sigma else "whole group")
    table = _tables(G, table)
    if len(sigma) == 1:
        w = find_hall_subgroup(G, pi, table)
        return HallProperties(True, True, True, w, 1, "sylow")
    if len(sigma) > 2:
        w = find_hall_subgroup(G, pi, table)
        if w is None:
            raise ScopeError(
                f"no soluble Hall {sigma}-subgroup; non-soluble candidates are not searched"
            )
        return HallProperties(True, None, None, w, None, "soluble search")
    table, reps, _ = _hall_search(G, pi, table, all_classes=True)
    if not reps:
        return HallProperties(False, False, False, None, 0, "sylow product")
    H, gens = reps[0]
    count = len(reps)
    w = HallWitness(table.handle(H, gens), pi, count)
    if count > 1:
        return HallProperties(True, False, False, w, count, "sylow product")
    D = _d_property(table, H, pi_part(G.order(), sigma))
    return HallProperties(True, True, D, w, count, "sylow product")


def hall_classes_by_extension(G: PermGroup, pi: Iterable[int], table: ElementTable | None = None) -> int:
    """Number of classes of soluble Hall pi-subgroups, by cyclic extension.

    An independent route used to cross-check the Sylow-product search.
    """
    table = _tables(G, table)
    target = pi_part(G.order(), relevant_primes(G, pi))
    ce = CyclicExtension(table, lambda d: target % d == 0)
    return sum(1 for c in ce.all_classes() if c.order == target)


# ---------------------------------------------------------------------------
# normal structure


def _closure_chain(degree: int, gens: list, seed: list) -> StabChain:
    n_gens = [x for x in seed]
    chain = StabChain(degree, n_gens)
    inv_gens = [raw_inv(g) for g in gens]
    changed = True
    while changed:
        changed = False
        for x in list(n_gens):
            for g, gi in zip(gens, inv_gens):
                c = raw_conj(x, g, gi)
                if not chain.contains(c):
                    n_gens.append(c)
                    chain = StabChain(degree, n_gens)
                    changed = True
    return chain, n_gens


def normal_closure(G: PermGroup, seed: Iterable[Permutation]) -> SubgroupHandle:
    """Smallest normal subgroup of G containing ``seed``."""
    raw_seed = [s.raw for s in seed if not s.is_identity()]
    for s in raw_seed:
        if not G.chain.contains(s):
            raise ValueError("seed element not in G")
    chain, gens = _closure_chain(G.degree, G.raw_gens, raw_seed)
    return SubgroupHandle(tuple(Permutation.from_raw(g) for g in gens), chain.order(), G.order())


def is_simple(G: PermGroup, table: ElementTable | None = None) -> bool:
    """|G| > 1 and the normal closure of every non-identity element is G."""
    if G.order() == 1:
        return False
    table = _tables(G, table)
    for cls in table.element_classes():
        x = cls[0]
        if x == table.identity:
            continue
        if normal_closure(G, [table.perm(x)]).order != G.order():
            return False
    return True


def _same_subgroup(a: SubgroupHandle, b: SubgroupHandle, degree: int) -> bool:
    if a.order != b.order:
        return False
    chain = StabChain(degree, [g.raw for g in b.generators])
    return all(chain.contains(g.raw) for g in a.generators)


def normal_subgroups(G: PermGroup, table: ElementTable | None = None) -> list[SubgroupHandle]:
    """All normal subgroups, as joins of normal closures of single elements."""
    table = _tables(G, table)
    found: list[SubgroupHandle] = []

    def add(h: SubgroupHandle) -> bool:
        if any(_same_subgroup(h, k, G.degree) for k in found):
            return False
        found.append(h)
        return True

    for cls in table.element_classes():
        add(normal_closure(G, [table.perm(cls[0])]))
    grew = True
    while grew:
        grew = False
        for a in list(found):
            for b in list(found):
                if add(normal_closure(G, a.generators + b.generators)):
                    grew = True
    return sorted(found, key=lambda h: h.order)


def composition_factor_orders(G: PermGroup) -> list[int]:
    """Orders of the composition factors from the top of a composition series
    down, passing each time to a maximal normal subgroup (a proper normal
    subgroup of largest order)."""
    out: list[int] = []
    while G.order() > 1:
        proper = [h for h in normal_subgroups(G) if h.order < G.order()]
        M = max(proper, key=lambda h: h.order)
        out.append(G.order() // M.order)
        G = PermGroup(G.degree, M.generators)
    return out

"""Explicit permutation representations of catalog groups.

Points of projective spaces are normalized vectors (first nonzero
coordinate 1) sorted by their coordinate encodings; the projective line
puts infinity first, so point 1 is infinity and field element i is point
i + 2.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Sequence

from ..arith import is_prime_power
from ..errors import DomainError, ScopeError
from ..permgrp.group import PermGroup
from ..permgrp.perm import Permutation, RawPerm
from .fields import FiniteField, field_of_order
from .ids import SimpleGroupId, order_of


def _check_order(G: PermGroup, expected: int, what: str) -> PermGroup:
    if G.order() != expected:
        raise AssertionError(f"{what}: constructed order {G.order()}, expected {expected}")
    return G


def alternating_group(n: int) -> PermGroup:
    """A_n on n points from an n- or (n-1)-cycle and (1 2 3)."""
    if n < 3:
        raise DomainError("alternating group needs n >= 3")
    long = list(range(1, n + 1)) if n % 2 else list(range(2, n + 1))
    cyc = "(" + " ".join(map(str, long)) + ")"
    G = PermGroup(n, [Permutation.from_cycles(cyc, n), Permutation.from_cycles("(1 2 3)", n)],
                  name=f"A{n}")
    return _check_order(G, order_of(SimpleGroupId("A", n)) if n >= 5 else (3 if n == 3 else 12), f"A{n}")


# ---------------------------------------------------------------------------
# projective line


def _mobius_perm(F: FiniteField, a: int, b: int, c: int, d: int) -> RawPerm:
    """x -> (a x + b) / (c x + d) on the points of PG(1, q), 0-based."""
    q = F.q
    img = [0] * (q + 1)
    # infinity -> a/c
    img[0] = 0 if c == 0 else 1 + F.div(a, c)
    for x in range(q):
        num = F.add(F.mul(a, x), b)
        den = F.add(F.mul(c, x), d)
        img[1 + x] = 0 if den == 0 else 1 + F.div(num, den)
    return tuple(img)


def projective_line_group(q: int, kind: str = "PSL") -> PermGroup:
    """PSL(2,q) or PGL(2,q) acting on the q + 1 points of the projective line."""
    if not 4 <= q <= 101 or is_prime_power(q) is None:
        raise DomainError(f"projective line groups need a prime power 4 <= q <= 101, got {q}")
    kind = kind.upper()
    if kind not in ("PSL", "PGL"):
        raise DomainError(f"kind must be PSL or PGL, got {kind!r}")
    F = field_of_order(q)
    w = F.prim(1)
    w2 = F.prim(2)
    one, zero = 1, 0
    minus_one = F.neg(one)
    mats = [
        (one, one, zero, one),  # x + 1
        (w2, zero, zero, one),  # w^2 x
        (zero, minus_one, one, zero),  # -1/x
    ]
    if F.f > 1:
        mats.append((one, w, zero, one))  # x + w
    if kind == "PGL":
        mats.append((w, zero, zero, one))  # w x
    gens = [Permutation.from_raw(_mobius_perm(F, *m)) for m in mats]
    G = PermGroup(q + 1, gens, name=f"{kind}(2,{q})")
    expected = q * (q * q - 1)
    if kind == "PSL":
        expected = order_of(SimpleGroupId("PSL", 2, q))
    elif q % 2 == 0:
        expected = q * (q * q - 1)  # PGL = PSL in characteristic 2
    return _check_order(G, expected, G.name)


# ---------------------------------------------------------------------------
# projective spaces of dimension >= 2


def _normalized_points(F: FiniteField, dim: int, keep: Callable[[tuple], bool] = lambda v: True) -> list[tuple]:
    pts = []
    for v in product(range(F.q), repeat=dim):
        nz = next((x for x in v if x), None)
        if nz == 1 and keep(v):
            pts.append(v)
    return pts


def _normalize(F: FiniteField, v: Sequence[int]) -> tuple:
    nz = next(x for x in v if x)
    s = F.inv(nz)
    return tuple(F.mul(s, x) for x in v)


def _mat_vec(F: FiniteField, M: Sequence[Sequence[int]], v: Sequence[int]) -> tuple:
    out = []
    for row in M:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return tuple(out)


def _matrix_perm(F: FiniteField, M, points: list[tuple], index: dict) -> RawPerm:
    return tuple(index[_normalize(F, _mat_vec(F, M, v))] for v in points)


def projective_plane_group(q: int) -> PermGroup:
    """PSL(3,q) acting on the q^2 + q + 1 points of PG(2,q), from transvections."""
    if is_prime_power(q) is None or not 2 <= q <= 9:
        raise DomainError(f"PSL(3,q) construction supports prime powers 2 <= q <= 9, got {q}")
    F = field_of_order(q)
    pts = _normalized_points(F, 3)
    index = {v: i for i, v in enumerate(pts)}
    scalars = [1] if F.f == 1 else [1, F.prim(1)]
    gens = []
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for s in scalars:
                M = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
                M[i][j] = s
                gens.append(Permutation.from_raw(_matrix_perm(F, M, pts, index)))
    G = PermGroup(len(pts), gens, name=f"PSL(3,{q})")
    return _check_order(G, order_of(SimpleGroupId("PSL", 3, q)), G.name)


# ---------------------------------------------------------------------------
# unitary groups


def unitary_group_3(q: int) -> PermGroup:
    """PSU(3,q), q in {3, 4}, on the q^3 + 1 isotropic points of the Hermitian
    form x1 y3^q + x2 y2^q + x3 y1^q over GF(q^2).

    Generators are found by scanning unitriangular, diagonal and monomial
    antidiagonal determinant-one matrices that preserve the form, keeping each
    one that enlarges the group until the order is |PSU(3,q)|.
    """
    if q not in (3, 4):
        raise ScopeError(f"unitary construction supports q in {{3, 4}}, got {q}")
    F = field_of_order(q * q)
    bar = lambda x: F.pow(x, q)  # noqa: E731

    def herm(u, v):
        acc = 0
        for a, b in ((u[0], v[2]), (u[1], v[1]), (u[2], v[0])):
            acc = F.add(acc, F.mul(a, bar(b)))
        return acc

    pts = _normalized_points(F, 3, keep=lambda v: herm(v, v) == 0)
    if len(pts) != q**3 + 1:
        raise AssertionError("wrong number of isotropic points")
    index = {v: i for i, v in enumerate(pts)}
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def is_unitary(M) -> bool:
        cols = [tuple(M[r][c] for r in range(3)) for c in range(3)]
        return all(herm(cols[i], cols[j]) == herm(basis[i], basis[j]) for i in range(3) for j in range(3))

    def det(M) -> int:
        t = 0
        for (a, b, c), sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                                ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
            term = F.mul(F.mul(M[0][a], M[1][b]), M[2][c])
            t = F.add(t, term) if sign == 1 else F.sub(t, term)
        return t

    candidates = []
    els = range(F.q)
    for a, b, c in product(els, repeat=3):
        candidates.append([[1, a, b], [0, 1, c], [0, 0, 1]])
    nonzero = range(1, F.q)
    for x, y, z in product(nonzero, repeat=3):
        candidates.append([[x, 0, 0], [0, y, 0], [0, 0, z]])
    for x, y, z in product(nonzero, repeat=3):
        candidates.append([[0, 0, x], [0, y, 0], [z, 0, 0]])
    target = order_of(SimpleGroupId("PSU", 3, q))
    gens: list[Permutation] = []
    G = PermGroup(len(pts), [])
    for M in candidates:
        if det(M) != 1 or not is_unitary(M):
            continue
        g = Permutation.from_raw(_matrix_perm(F, M, pts, index))
        if g.is_identity() or G.contains(g):
            continue
        gens.append(g)
        G = PermGroup(len(pts), gens)
        if G.order() == target:
            break
    G.name = f"PSU(3,{q})"
    return _check_order(G, target, G.name)


def symplectic_group_4_3() -> PermGroup:
    """PSp(4,3), isomorphic to PSU(4,2), on the 40 points of PG(3,3), generated
    by the symplectic transvections x -> x + B(x, v) v."""
    F = field_of_order(3)
    pts = _normalized_points(F, 4)
    index = {v: i for i, v in enumerate(pts)}

    def form(u, v):  # u1 v3 - u3 v1 + u2 v4 - u4 v2
        return (u[0] * v[2] - u[2] * v[0] + u[1] * v[3] - u[3] * v[1]) % 3

    gens = []
    for v in pts:
        img = []
        for x in pts:
            t = form(x, v)
            y = tuple((xi + t * vi) % 3 for xi, vi in zip(x, v))
            img.append(index[_normalize(F, y)])
        gens.append(Permutation.from_raw(tuple(img)))
    G = PermGroup(len(pts), gens, name="PSU(4,2)")
    return _check_order(G, 25920, G.name)


def construct(g: SimpleGroupId | str) -> PermGroup:
    """Permutation representation of a catalog label, or of PGL(2,q)."""
    if isinstance(g, str):
        if g.startswith("PGL(2,"):
            return projective_line_group(int(g[6:-1]), "PGL")
        from .ids import parse_group

        g = parse_group(g)
    if g.family == "A":
        return alternating_group(g.n)
    if g.family == "PSL" and g.n == 2:
        return projective_line_group(g.q, "PSL")
    if g.family == "PSL" and g.n == 3:
        return projective_plane_group(g.q)
    if g.family == "PSU" and g.n == 3:
        return unitary_group_3(g.q)
    if (g.family, g.n, g.q) == ("PSU", 4, 2):
        return symplectic_group_4_3()
    if g.family == "C":
        p = g.n
        cyc = "(" + " ".join(map(str, range(1, p + 1))) + ")"
        return PermGroup(p, [Permutation.from_cycles(cyc, p)], name=g.label)
    raise ScopeError(f"no construction for {g}")

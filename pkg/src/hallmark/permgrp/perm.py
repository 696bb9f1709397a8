"""Permutations on {1..n}.

Internally a permutation is a 0-based tuple of images.  Products compose
left to right: ``(a * b)(x) = b(a(x))``, so ``a * b`` applies ``a`` first.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from ..errors import FormatError

RawPerm = tuple  # tuple[int, ...], 0-based images


def raw_mul(a: RawPerm, b: RawPerm) -> RawPerm:
    return tuple(map(b.__getitem__, a))


def raw_inv(a: RawPerm) -> RawPerm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def raw_identity(n: int) -> RawPerm:
    return tuple(range(n))


def raw_is_identity(a: RawPerm) -> bool:
    return all(i == x for i, x in enumerate(a))


def raw_conj(x: RawPerm, g: RawPerm, g_inv: RawPerm) -> RawPerm:
    """x^g = g^-1 x g."""
    return raw_mul(raw_mul(g_inv, x), g)


def raw_pow(a: RawPerm, k: int) -> RawPerm:
    result = raw_identity(len(a))
    base = a
    while k:
        if k & 1:
            result = raw_mul(result, base)
        base = raw_mul(base, base)
        k >>= 1
    return result


def raw_cycles(a: RawPerm) -> list[list[int]]:
    """Nontrivial cycles, 0-based, each starting at its least point."""
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        out.append(cyc)
    return out


def raw_order(a: RawPerm) -> int:
    o = 1
    for c in raw_cycles(a):
        o = o * len(c) // math.gcd(o, len(c))
    return o


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> RawPerm:
    """Parse ``(1 2 3)(4 5)`` (spaces or commas) into a raw permutation."""
    text = text.strip()
    if text in ("", "()", "1", "id", "e"):
        return raw_identity(degree)
    if _CYCLE_RE.sub("", text).strip():
        raise FormatError(f"cannot parse cycle notation {text!r}")
    img = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        toks = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            pts = [int(t) for t in toks]
        except ValueError as exc:
            raise FormatError(f"non-integer point in cycle ({body})") from exc
        for p in pts:
            if not 1 <= p <= degree:
                raise FormatError(f"point {p} outside 1..{degree}")
            if p in used:
                raise FormatError(f"point {p} repeated in {text!r}")
            used.add(p)
        for x, y in zip(pts, pts[1:] + pts[:1]):
            img[x - 1] = y - 1
    return tuple(img)


def format_cycles(a: RawPerm) -> str:
    cycles = raw_cycles(a)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)


class Permutation:
    """A bijection of {1..degree}, exposed with 1-based points."""

    __slots__ = ("raw",)

    def __init__(self, images: Sequence[int]):
        """``images[i-1]`` is the image of point ``i`` (1-based values)."""
        img = tuple(int(x) - 1 for x in images)
        if sorted(img) != list(range(len(img))):
            raise FormatError(f"not a permutation of 1..{len(img)}: {list(images)}")
        self.raw: RawPerm = img

    @classmethod
    def from_raw(cls, raw: RawPerm) -> "Permutation":
        p = cls.__new__(cls)
        p.raw = tuple(raw)
        return p

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return cls.from_raw(parse_cycles(text, degree))

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls.from_raw(raw_identity(degree))

    @property
    def degree(self) -> int:
        return len(self.raw)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.raw)

    def __call__(self, point: int) -> int:
        return self.raw[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise FormatError("degree mismatch")
        return Permutation.from_raw(raw_mul(self.raw, other.raw))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return Permutation.from_raw(raw_pow(raw_inv(self.raw), -k))
        return Permutation.from_raw(raw_pow(self.raw, k))

    def inverse(self) -> "Permutation":
        return Permutation.from_raw(raw_inv(self.raw))

    def is_identity(self) -> bool:
        return raw_is_identity(self.raw)

    def order(self) -> int:
        return raw_order(self.raw)

    def cycles(self) -> list[tuple[int, ...]]:
        return [tuple(p + 1 for p in c) for c in raw_cycles(self.raw)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.raw == other.raw

    def __lt__(self, other: "Permutation") -> bool:
        return self.raw < other.raw

    def __hash__(self) -> int:
        return hash(self.raw)

    def __str__(self) -> str:
        return format_cycles(self.raw)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self.raw)!r}, degree={self.degree})"


def as_raw_list(gens: Iterable[Permutation], degree: int) -> list[RawPerm]:
    out = []
    for g in gens:
        if g.degree != degree:
            raise FormatError(f"generator of degree {g.degree} in a degree-{degree} group")
        out.append(g.raw)
    return out

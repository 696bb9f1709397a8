"""Recorded Hall-subgroup facts about specific groups.

Each fact states whether a group has property E, C or D for a prime set,
and says where the claim comes from.  The oracle re-derives every fact
whose group it can build.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..arith import PrimeSet
from .ids import SimpleGroupId, parse_group

PROPERTIES = ("E", "C", "D")


@dataclass(frozen=True)
class HallFact:
    group: SimpleGroupId | str  # str only for non-simple groups such as PGL(2,7)
    pi: PrimeSet
    property: str
    holds: bool
    provenance: str

    def __post_init__(self):
        if self.property not in PROPERTIES:
            raise ValueError(f"property must be one of {PROPERTIES}, got {self.property!r}")
        if not self.provenance.strip():
            raise ValueError("a Hall fact needs a provenance")
        if not isinstance(self.pi, PrimeSet):
            object.__setattr__(self, "pi", PrimeSet(self.pi))

    @property
    def label(self) -> str:
        return self.group if isinstance(self.group, str) else self.group.label

    @property
    def is_simple_group(self) -> bool:
        return isinstance(self.group, SimpleGroupId)

    def __str__(self) -> str:
        sign = "" if self.holds else "not "
        return f"{self.label} {sign}in {self.property}{self.pi}"


_WORKED_EXAMPLE = "worked example of a non-3-soluble group in U_{3,3'}"
_UNITARY_EXAMPLE = "worked example: PSU(3,4) has Hall {2,3}-, {3,5}- and {3,13}-subgroups"
_EXTENSION_EXAMPLE = "worked example: the extension PGL(2,7) has no Hall {2,3}-subgroup"
_DICKSON = "subgroup structure of PSL(2,p): a Hall {2,7}-subgroup of PSL(2,7) would have index 3"
_REVIN = "Hall {2,3}-subgroups of PSL(2,7) fall into two conjugacy classes (Revin)"
_ATLAS = "published maximal-subgroup tables of simple groups"
_PSL28 = "PSL(2,8) has a Borel subgroup of order 56, a Hall 3'-subgroup"


def _fact(group: str, primes: Iterable[int], prop: str, holds: bool, source: str) -> HallFact:
    g: SimpleGroupId | str = group if group.startswith("PGL") else parse_group(group)
    return HallFact(g, PrimeSet(primes), prop, holds, source)


def hall_facts() -> list[HallFact]:
    return [
        _fact("PSL(2,7)", {2, 3}, "E", True, _WORKED_EXAMPLE),
        _fact("PSL(2,7)", {3, 7}, "E", True, _WORKED_EXAMPLE),
        _fact("PSL(2,7)", {2, 7}, "E", False, _DICKSON),
        _fact("PSL(2,7)", {2, 3}, "D", False, _REVIN),
        _fact("PSU(3,4)", {2, 3}, "E", True, _UNITARY_EXAMPLE),
        _fact("PSU(3,4)", {3, 5}, "E", True, _UNITARY_EXAMPLE),
        _fact("PSU(3,4)", {3, 13}, "E", True, _UNITARY_EXAMPLE),
        _fact("PSU(3,4)", {5, 13}, "E", False, _ATLAS),
        _fact("PSU(4,2)", {3, 5}, "E", False, _ATLAS),
        _fact("PSL(2,8)", {2, 7}, "E", True, _PSL28),
        _fact("PGL(2,7)", {2, 3}, "E", False, _EXTENSION_EXAMPLE),
    ]


def facts_for(label: str) -> list[HallFact]:
    return [f for f in hall_facts() if f.label == label]

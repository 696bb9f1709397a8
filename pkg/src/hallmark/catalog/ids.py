"""Descriptors, orders and prime spectra of the simple groups the criteria name."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from ..arith import PrimeSet, factorize, is_prime, is_prime_power, prime_spectrum
from ..errors import FormatError

FAMILIES = ("C", "A", "PSL", "PSU")


@dataclass(frozen=True, order=True)
class SimpleGroupId:
    """A finite simple group.

    family "C": cyclic of prime order n.  "A": alternating of degree n.
    "PSL"/"PSU": projective special linear/unitary of dimension n over GF(q)
    (GF(q^2) for the unitary groups).
    """

    family: str
    n: int
    q: int = 0

    def __post_init__(self):
        check_valid(self)

    @property
    def label(self) -> str:
        if self.family == "C":
            return f"C{self.n}"
        if self.family == "A":
            return f"A{self.n}"
        return f"{self.family}({self.n},{self.q})"

    def __str__(self) -> str:
        return self.label

    @property
    def is_abelian(self) -> bool:
        return self.family == "C"

    @property
    def char_p(self) -> int | None:
        """Defining characteristic of a Lie-type group."""
        if self.family in ("PSL", "PSU"):
            return is_prime_power(self.q)[0]
        return None

    @property
    def field_exponent(self) -> int | None:
        if self.family in ("PSL", "PSU"):
            return is_prime_power(self.q)[1]
        return None


def check_valid(g: SimpleGroupId) -> None:
    fam, n, q = g.family, g.n, g.q
    if fam == "C":
        if not is_prime(n):
            raise FormatError(f"C{n}: order must be prime")
        return
    if fam == "A":
        if n < 5:
            raise FormatError(f"A{n}: alternating groups need n >= 5")
        return
    if fam not in ("PSL", "PSU"):
        raise FormatError(f"unknown family {fam!r}")
    if is_prime_power(q) is None:
        raise FormatError(f"{fam}({n},{q}): q must be a prime power")
    if fam == "PSL":
        if n == 2 and q < 4:
            raise FormatError(f"PSL(2,{q}) is soluble; need q >= 4")
        if n not in (2, 3):
            raise FormatError(f"PSL({n},q) is outside the catalog (n must be 2 or 3)")
        return
    if n == 3:
        if q < 3:
            raise FormatError("PSU(3,2) is soluble; need q >= 3")
        return
    if (n, q) != (4, 2):
        raise FormatError(f"PSU({n},{q}) is outside the catalog (only PSU(3,q) and PSU(4,2))")


# exceptional isomorphisms, mapped to one label
_ISOMORPHISMS = {
    ("PSL", 2, 4): ("A", 5, 0),
    ("PSL", 2, 5): ("A", 5, 0),
    ("PSL", 2, 9): ("A", 6, 0),
    ("PSL", 3, 2): ("PSL", 2, 7),
}


def normalize(g: SimpleGroupId) -> SimpleGroupId:
    key = _ISOMORPHISMS.get((g.family, g.n, g.q))
    return SimpleGroupId(*key) if key else g


_TOKEN = re.compile(
    r"""^\s*(?:
        C(?P<c>\d+) | Cyclic\((?P<c2>\d+)\) |
        A(?P<a>\d+) | Alt\((?P<a2>\d+)\) |
        (?P<fam>PSL|PSU|L|U)\(\s*(?P<n>\d+)\s*,\s*(?P<q>\d+)\s*\)
    )\s*$""",
    re.VERBOSE,
)


def parse_group(token: str, normalize_iso: bool = True) -> SimpleGroupId:
    """Parse C7, Cyclic(7), A5, Alt(5), PSL(2,7), PSU(3,4)."""
    m = _TOKEN.match(token)
    if not m:
        raise FormatError(f"cannot parse group token {token!r}")
    if m["c"] or m["c2"]:
        g = SimpleGroupId("C", int(m["c"] or m["c2"]))
    elif m["a"] or m["a2"]:
        g = SimpleGroupId("A", int(m["a"] or m["a2"]))
    else:
        fam = {"L": "PSL", "U": "PSU"}.get(m["fam"], m["fam"])
        g = SimpleGroupId(fam, int(m["n"]), int(m["q"]))
    return normalize(g) if normalize_iso else g


def _split_factors(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise FormatError(f"unbalanced parentheses in {text!r}")
    out.append("".join(cur))
    return [t.strip() for t in out]


def parse_factors(text: str) -> list[SimpleGroupId]:
    """Comma-separated factor list, e.g. ``C2,PSL(2,7)``."""
    tokens = _split_factors(text)
    if not tokens or any(not t for t in tokens):
        raise FormatError(f"empty factor in {text!r}")
    return [parse_group(t) for t in tokens]


# ---------------------------------------------------------------------------
# orders and spectra


def order_of(g: SimpleGroupId) -> int:
    fam, n, q = g.family, g.n, g.q
    if fam == "C":
        return n
    if fam == "A":
        return math.factorial(n) // 2
    if fam == "PSL" and n == 2:
        return q * (q * q - 1) // math.gcd(2, q - 1)
    if fam == "PSL" and n == 3:
        return q**3 * (q**3 - 1) * (q * q - 1) // math.gcd(3, q - 1)
    if fam == "PSU" and n == 3:
        return q**3 * (q**3 + 1) * (q * q - 1) // math.gcd(3, q + 1)
    return 25920  # PSU(4,2)


def _order_pieces(g: SimpleGroupId) -> list[int]:
    """Integers whose prime spectra union to pi(g).  Dividing by the centre
    never removes a prime, since the centre's primes divide |g| to a higher
    power than the centre has."""
    fam, n, q = g.family, g.n, g.q
    if fam == "C":
        return [n]
    if fam == "A":
        return [math.factorial(n) // 2]
    if fam == "PSL" and n == 2:
        return [q, q - 1, q + 1]
    if fam == "PSL" and n == 3:
        return [q, q * q + q + 1, q - 1, q + 1]
    if fam == "PSU" and n == 3:
        return [q, q * q - q + 1, q + 1, q - 1]
    return [25920]


def spectrum_of(g: SimpleGroupId) -> PrimeSet:
    primes: set[int] = set()
    for piece in _order_pieces(g):
        if piece > 1:
            primes.update(prime_spectrum(piece))
    return PrimeSet(primes)


def order_factors(g: SimpleGroupId) -> dict[int, int]:
    """Prime factorization of |g|, assembled from the factored pieces."""
    fam, n, q = g.family, g.n, g.q
    if fam in ("C", "A") or (fam, n) == ("PSU", 4):
        return factorize(order_of(g)).as_dict()
    if fam == "PSL" and n == 2:
        pieces, d = [q, q - 1, q + 1], math.gcd(2, q - 1)
    elif fam == "PSL":
        pieces, d = [q, q, q, q * q + q + 1, q - 1, q - 1, q + 1], math.gcd(3, q - 1)
    else:
        pieces, d = [q, q, q, q * q - q + 1, q + 1, q + 1, q - 1], math.gcd(3, q + 1)
    out: dict[int, int] = {}
    for piece in pieces:
        for p, e in factorize(piece):
            out[p] = out.get(p, 0) + e
    if d > 1:
        out[d] -= 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# catalog scans


def _prime_powers(lo: int, hi: int) -> list[int]:
    return [x for x in range(lo, hi + 1) if is_prime_power(x) is not None]


@lru_cache(maxsize=1)
def _order_index() -> dict[int, tuple[SimpleGroupId, ...]]:
    table: dict[int, list[SimpleGroupId]] = {}

    def put(g: SimpleGroupId) -> None:
        g = normalize(g)
        bucket = table.setdefault(order_of(g), [])
        if g not in bucket:
            bucket.append(g)

    for n in range(5, 13):
        put(SimpleGroupId("A", n))
    qs = _prime_powers(2, 1000)
    for q in qs:
        if q >= 4:
            put(SimpleGroupId("PSL", 2, q))
        put(SimpleGroupId("PSL", 3, q))
        if q >= 3:
            put(SimpleGroupId("PSU", 3, q))
    put(SimpleGroupId("PSU", 4, 2))
    return {k: tuple(sorted(v)) for k, v in table.items()}


def identify_by_order(n: int) -> list[SimpleGroupId]:
    """All catalog groups of order n (cyclic groups included when n is prime)."""
    if n < 2:
        return []
    if is_prime(n):
        return [SimpleGroupId("C", n)]
    return list(_order_index().get(n, ()))


def k3_groups() -> list[SimpleGroupId]:
    """The simple groups whose orders have exactly three prime divisors."""
    return [parse_group(t) for t in (
        "A5", "A6", "PSL(2,7)", "PSL(2,8)", "PSL(2,17)", "PSL(3,3)", "PSU(3,3)", "PSU(4,2)",
    )]

"""Exact integer arithmetic used by the Hall-subgroup criteria.

Prime spectra, pi-parts, multiplicative orders, Mersenne and congruence
predicates, and bounded exhaustive solvers for the two exponential
Diophantine equations that drive the simple-group case analysis:

* ``p**k +- 1 == 2**n`` with ``p`` prime, and
* ``k**2 +- k + 1 == 3**n``.

Everything here is pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError

INT64_MAX = 2**63 - 1
SOLVER_BOUND_MAX = 2**40

_TRIAL_LIMIT = 10**6
# Deterministic for every n < 3.3e24, which covers signed 64-bit.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ---------------------------------------------------------------------------
# primality and factorization


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    limit = _TRIAL_LIMIT
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i in range(limit + 1) if sieve[i])


def _pollard_brent(n: int) -> int:
    # Fixed polynomial x^2 + c, seed 2; c is bumped deterministically on failure.
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as sorted ``(prime, exponent)`` pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def value(self) -> int:
        v = 1
        for p, e in self.pairs:
            v *= p**e
        return v

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


def _check_positive(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"expected an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    if n > INT64_MAX:
        raise DomainError(f"{n} exceeds the signed 64-bit range")


def factorize(n: int) -> Factorization:
    """Factor ``1 <= n <= 2**63 - 1`` exactly.

    Trial division by the primes below 10**6, then Pollard-Brent rho on
    whatever cofactor is left.
    """
    _check_positive(n)
    found: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        _split(m, found)
    return Factorization(tuple(sorted(found.items())))


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k``, ``k >= 1``, or None."""
    if n < 2:
        return None
    for k in range(n.bit_length(), 0, -1):
        root = _iroot(n, k)
        if root >= 2 and root**k == n and is_prime(root):
            return root, k
    return None


def _iroot(n: int, k: int) -> int:
    if k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


# ---------------------------------------------------------------------------
# prime sets


class PrimeSet:
    """A finite set of primes, kept as a sorted tuple.

    Complements are never materialized: use :meth:`complement_in` with an
    explicit universe such as a group's prime spectrum.
    """

    __slots__ = ("primes",)

    def __init__(self, primes: Iterable[int] = ()):
        ps = sorted({int(p) for p in primes})
        for p in ps:
            if not is_prime(p):
                raise DomainError(f"{p} is not a prime")
        self.primes: tuple[int, ...] = tuple(ps)

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        text = text.strip().strip("{}")
        if not text:
            return cls()
        try:
            values = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError as exc:
            raise DomainError(f"cannot parse prime set {text!r}") from exc
        return cls(values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, p: object) -> bool:
        return p in self.primes

    def __bool__(self) -> bool:
        return bool(self.primes)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeSet):
            return self.primes == other.primes
        if isinstance(other, (set, frozenset)):
            return set(self.primes) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.primes)

    def __lt__(self, other: "PrimeSet") -> bool:
        return self <= other and self != other

    def __le__(self, other: "PrimeSet | set | frozenset") -> bool:
        return set(self.primes) <= set(other)

    def __or__(self, other: Iterable[int]) -> "PrimeSet":
        return PrimeSet(set(self.primes) | set(other))

    def __and__(self, other: Iterable[int]) -> "PrimeSet":
        return PrimeSet(set(self.primes) & set(other))

    def __sub__(self, other: Iterable[int]) -> "PrimeSet":
        return PrimeSet(set(self.primes) - set(other))

    def isdisjoint(self, other: Iterable[int]) -> bool:
        return set(self.primes).isdisjoint(other)

    def complement_in(self, universe: Iterable[int]) -> "PrimeSet":
        return PrimeSet(set(universe) - set(self.primes))

    def __repr__(self) -> str:
        return f"PrimeSet({list(self.primes)})"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.primes)) + "}"


def prime_spectrum(n: int) -> PrimeSet:
    """pi(n): the set of primes dividing n."""
    return PrimeSet(factorize(n).primes())


def pi_part(n: int, pi: Iterable[int]) -> int:
    """Largest divisor of n whose prime factors all lie in pi."""
    wanted = set(pi)
    part = 1
    for p, e in factorize(n):
        if p in wanted:
            part *= p**e
    return part


def is_pi_number(n: int, pi: Iterable[int]) -> bool:
    return pi_part(n, pi) == n


# ---------------------------------------------------------------------------
# multiplicative order and named predicates


def mult_order(q: int, r: int) -> int:
    """e(q, r): least e >= 1 with q**e = 1 (mod r).

    For r == 2 the convention is 1 when q = 1 (mod 4) and 2 when
    q = 3 (mod 4); q must then be odd.
    """
    if not is_prime(r):
        raise DomainError(f"modulus {r} is not prime")
    if q < 1:
        raise DomainError(f"expected q >= 1, got {q}")
    if r == 2:
        if q % 2 == 0:
            raise DomainError("e(q, 2) needs q odd")
        return 1 if q % 4 == 1 else 2
    if q % r == 0:
        raise DomainError(f"gcd({q}, {r}) != 1")
    e = r - 1
    for f, _ in factorize(r - 1):
        while e % f == 0 and pow(q, e // f, r) == 1:
            e //= f
    return e


def is_mersenne_prime(p: int) -> int | None:
    """Return f when p = 2**f - 1 is prime, else None."""
    if p < 3 or (p + 1) & p:
        return None
    if not is_prime(p):
        return None
    return (p + 1).bit_length() - 1


@dataclass(frozen=True)
class CongruencePredicates:
    q_mod9_in_4_7: bool
    f_mod6_pm1: bool
    f_mod6_eq5: bool
    q_mod12_eq7: bool
    q_odd_power_of_3: bool


def congruence_predicates(x: int) -> CongruencePredicates:
    """Evaluate every residue test used by the classification at once.

    ``x`` plays the role of q for the q-predicates and of the exponent f
    for the f-predicates.
    """
    if x < 1:
        raise DomainError(f"expected a positive integer, got {x}")
    pp = is_prime_power(x)
    odd_power_of_3 = pp is not None and pp[0] == 3 and pp[1] % 2 == 1 and x > 3
    return CongruencePredicates(
        q_mod9_in_4_7=x % 9 in (4, 7),
        f_mod6_pm1=x % 6 in (1, 5),
        f_mod6_eq5=x % 6 == 5,
        q_mod12_eq7=x % 12 == 7,
        q_odd_power_of_3=odd_power_of_3,
    )


# ---------------------------------------------------------------------------
# bounded exhaustive solvers


def _normalize_sign(sign: str) -> str:
    s = sign.strip().lower()
    if s in ("plus", "+"):
        return "plus"
    if s in ("minus", "-"):
        return "minus"
    raise DomainError(f"sign must be 'plus' or 'minus', got {sign!r}")


def _check_bound(bound: int) -> None:
    if bound < 0:
        raise DomainError(f"bound must be non-negative, got {bound}")
    if bound > SOLVER_BOUND_MAX:
        raise DomainError(f"bound {bound} exceeds 2**40")


def prime_powers_beside_two_power(sign: str, bound: int) -> list[tuple[int, int, int]]:
    """All ``(p, k, n)`` with ``p**k <= bound`` and ``p**k + 1 == 2**n`` (plus)
    or ``p**k - 1 == 2**n`` (minus); p prime, k, n >= 1.

    Every candidate value of p**k is 2**n -+ 1, so scanning n is exhaustive.
    """
    sign = _normalize_sign(sign)
    _check_bound(bound)
    out = []
    n = 1
    while True:
        value = 2**n - 1 if sign == "plus" else 2**n + 1
        if value > bound:
            break
        pp = is_prime_power(value)
        if pp is not None:
            out.append((pp[0], pp[1], n))
        n += 1
    return out


def beside_two_power_is_expected(sign: str, solutions: Iterable[tuple[int, int, int]]) -> bool:
    """True when every solution has k == 1, or is 3**2 - 1 == 2**3 (minus only)."""
    sign = _normalize_sign(sign)
    for p, k, n in solutions:
        if k == 1:
            continue
        if sign == "minus" and (p, k, n) == (3, 2, 3):
            continue
        return False
    return True


def solve_three_power_quadratic(sign: str, bound: int) -> list[tuple[int, int]]:
    """All ``(k, n)`` with ``1 <= k <= bound``, ``n >= 1`` and
    ``k**2 + k + 1 == 3**n`` (plus) or ``k**2 - k + 1 == 3**n`` (minus).

    Solves the quadratic for each power of three: the discriminant
    ``4 * 3**n - 3`` has to be a perfect square.
    """
    sign = _normalize_sign(sign)
    _check_bound(bound)
    out = []
    if bound < 1:
        return out
    top = bound * bound + bound + 1
    n, power = 1, 3
    while power <= top:
        disc = 4 * power - 3
        s = math.isqrt(disc)
        if s * s == disc:
            k2 = s - 1 if sign == "plus" else s + 1
            if k2 % 2 == 0:
                k = k2 // 2
                lhs = k * k + k + 1 if sign == "plus" else k * k - k + 1
                if 1 <= k <= bound and lhs == power:
                    out.append((k, n))
        n += 1
        power *= 3
    return out


def three_power_quadratic_is_expected(sign: str, solutions: Iterable[tuple[int, int]]) -> bool:
    sign = _normalize_sign(sign)
    allowed = (1, 1) if sign == "plus" else (2, 1)
    return all(sol == allowed for sol in solutions)

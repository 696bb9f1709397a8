"""Small finite fields GF(p^f) with integer-encoded elements.

An element c_0 + c_1 x + ... + c_{f-1} x^{f-1} is encoded as the integer
sum c_i p^i.  Multiplication goes through log/exp tables built from a
primitive element.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..arith import factorize, is_prime, is_prime_power
from ..errors import DomainError

MAX_FIELD_SIZE = 2**20


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coefficient lists (low to high) modulo a monic ``mod``."""
    f = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for j in range(f + 1):
                prod[k - f + j] = (prod[k - f + j] - c * mod[j]) % p
    out = prod[:f] + [0] * (f - len(prod[:f]))
    return out


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p) by exhaustive trial
    division by every monic polynomial of degree <= deg/2."""
    f = len(poly) - 1
    for d in range(1, f // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if _poly_rem(poly, divisor, p) == [0] * d:
                return False
    return True


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return a[:db]


def least_irreducible(p: int, f: int) -> list[int]:
    """Monic irreducible of degree f over GF(p) whose lower coefficients have
    the least base-p encoding; returned low to high including the leading 1."""
    if f == 1:
        return [0, 1]
    for code in range(p**f):
        low = [(code // p**i) % p for i in range(f)]
        poly = low + [1]
        if low[0] != 0 and _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    def __init__(self, p: int, f: int = 1):
        if not is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if f < 1:
            raise DomainError(f"degree must be >= 1, got {f}")
        if p**f > MAX_FIELD_SIZE:
            raise DomainError(f"GF({p}^{f}) is larger than 2^20")
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = least_irreducible(p, f)
        self._build_tables()

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.f)]

    def _encode(self, digits: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(digits))

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        order = q - 1
        prime_divs = factorize(order).primes() if order > 1 else ()
        for cand in range(1, q):
            if q == 2:
                gen = 1
                break
            digits = self._digits(cand)

            def power(k, d=digits):
                result = [1] + [0] * (self.f - 1)
                base = d
                while k:
                    if k & 1:
                        result = _poly_mulmod(result, base, self.modulus, p)
                    base = _poly_mulmod(base, base, self.modulus, p)
                    k >>= 1
                return result

            one = [1] + [0] * (self.f - 1)
            if all(power(order // r) != one for r in prime_divs):
                gen = cand
                break
        self.generator = gen
        exp = [0] * order
        log = [0] * q
        cur = [1] + [0] * (self.f - 1)
        g = self._digits(gen)
        for k in range(order):
            v = self._encode(cur)
            exp[k] = v
            log[v] = k
            cur = _poly_mulmod(cur, g, self.modulus, p)
        if len(set(exp)) != order:
            raise AssertionError("multiplicative group is not cyclic on the chosen generator")
        self._exp = exp
        self._log = log

    # arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.f == 1:
            return (a + b) % self.p
        return self._encode([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.f == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def prim(self, k: int = 1) -> int:
        """omega^k for the fixed primitive element omega."""
        return self._exp[k % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self._log[a] % 2 == 0

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def finite_field(p: int, f: int = 1) -> FiniteField:
    return FiniteField(p, f)


def field_of_order(q: int) -> FiniteField:
    pp = is_prime_power(q)
    if pp is None:
        raise DomainError(f"{q} is not a prime power")
    return finite_field(*pp)

"""Hall-class membership decided from composition factors.

Each class is decided factor by factor.  Verdicts are three-valued
because some criteria only give necessary conditions: a factor list can
satisfy them and still belong to groups on both sides of the class.

Throughout, for a factor D, ``sig(D) = pi ∩ pi(D)`` and
``tau(D) = pi(D) \\ pi``.  Group-level conditions such as "pi' = {3}" are
read, by default, relative to the joint spectrum of the factor list
(``reading="relative"``); ``reading="absolute"`` takes pi literally and
treats pi' as the infinite complement, so that "pi' = {r}" never holds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arith import PrimeSet, is_mersenne_prime, is_prime, prime_spectrum
from .catalog.ids import SimpleGroupId, normalize, spectrum_of
from .errors import ScopeError

CLASS_NAMES = ("U", "V", "hatU", "hatV", "Ustar", "Vstar", "hatUstar", "hatVstar", "D_pi_pipr")

RULES: dict[str, str] = {
    "hall.separable": (
        "A pi-separable group has Hall {r,s}-subgroups for all r in pi, s in pi', "
        "Hall (pi' ∪ {r})- and (pi ∪ {s})-subgroups, and each of these classes "
        "also satisfies the D-property (P. Hall)."
    ),
    "one_sided": "pi(D) ⊆ pi or pi(D) ∩ pi = ∅.",
    "U.necessity": (
        "In U every factor D is one-sided, or D is PSL(2,7) or PSU(3,q) with "
        "q ≡ 4 or 7 (mod 9) and sig(D) = {3} or tau(D) = {3}."
    ),
    "U.two": "U with pi ∩ pi(G) = {2} or pi' ∩ pi(G) = {2} contains only soluble groups (Tyutyanov).",
    "U.undetermined": (
        "The factors pass the necessary condition, which does not decide U: "
        "PSL(2,7) lies in U_{3,3'} while PGL(2,7), with the same factors up to C2, does not."
    ),
    "V.criterion": "If pi ≠ {3} and pi' ≠ {3}, G is in V exactly when G is pi-separable.",
    "V.three": "If pi = {3} or pi' = {3}, V equals U_{3,3'}.",
    "hatU.criterion": "G is in hatU, equivalently in hatV, exactly when G is pi-separable.",
    "D_pi_pipr.criterion": (
        "G is in D_{pi,pi'} exactly when each factor D is one-sided, or D = PSL(2,q) "
        "with q = 3^f > 3 and f odd, or q ≡ 7 (mod 12), and sig(D) or tau(D) "
        "equals pi(q+1) (Gilotti)."
    ),
    "Ustar.criterion": (
        "G is in U* exactly when each factor D has sig(D) ⊆ {2} or tau(D) ⊆ {2}, "
        "or D = PSL(2,p) with p > 3 a Mersenne prime, or D = PSL(3,2^f) with "
        "f > 1, f ≡ ±1 (mod 6), or PSU(3,q) with q ≡ 4, 7 (mod 9), where in the "
        "last two cases sig(D) ⊆ {2,3} or tau(D) ⊆ {2,3}."
    ),
    "hatUstar.criterion": (
        "G is in hatU* exactly when each factor D has sig(D) ⊆ {2} or tau(D) ⊆ {2}, "
        "or D = PSL(2,p) with p > 3 a Mersenne prime, or D = PSU(3,p) with p = 7 "
        "or p = 2^f - 1 prime, f ≡ 5 (mod 6), and sig(D) ⊆ {2,3} or tau(D) ⊆ {2,3}."
    ),
    "Vstar.necessity": (
        "In V* every factor D is one-sided, or PSL(2,7) with sig(D) or tau(D) = {7}, "
        "or PSL(2,p), p > 3 Mersenne, with pi or pi' = {r} for some r | p(p-1)/2, "
        "or PSL(3,2^f) (f > 1, f ≡ ±1 mod 6) or PSU(3,q) (q ≡ 4, 7 mod 9) with pi or pi' = {3}."
    ),
    "Vstar.undetermined": "The factors pass the necessary condition for V*, which does not decide membership.",
    "hatVstar.criterion": (
        "G is in hatV* exactly when each factor D is one-sided, or PSL(2,p), p > 3 "
        "Mersenne, with pi or pi' = {r} for some r | p(p-1)/2, or PSU(3,p) with p = 7 "
        "or p = 2^f - 1 prime, f ≡ 5 (mod 6), and pi or pi' = {3}."
    ),
    "simple.Ustar.criterion": (
        "For non-abelian simple S and ∅ ≠ pi ⊊ pi(S) \\ {2}: S is in U* exactly when "
        "S = PSL(2,p) with p > 3 Mersenne, or S is PSL(3,2^f) (f > 1, f ≡ ±1 mod 6) "
        "or PSU(3,q) (q ≡ 4, 7 mod 9) with pi = {3} or pi = pi(S) \\ {2,3}."
    ),
    # corollaries
    "U.pi_soluble_equivalence": (
        "If 3 ∉ pi and 2 ∉ pi, or |pi| = 1, or |pi| = 2 with pi ≠ {2,7}, or |pi| = 3 "
        "with {2,7} ⊄ pi and pi ≠ {2,5,13}, then U holds exactly when G is pi-soluble."
    ),
    "U_cap_E.separable": "G is pi-separable exactly when G is in U ∩ E_{pi,pi'}, and exactly when G is in V ∩ E_{pi,pi'} (Du).",
    "Ustar.single_prime": (
        "For a prime r ∉ {2,3}, a group in U*_{r,r'} is r-soluble or has a factor "
        "PSL(2,p), p Mersenne, with r | p(p-1)/2."
    ),
    "Ustar_cap_E.necessity": (
        "In U* ∩ E_{pi,pi'} every factor D is one-sided, or PSL(2,p) with p > 3 "
        "Mersenne and sig(D) or tau(D) = {2}, or PSL(2,7) with sig(D) or tau(D) = {7}."
    ),
    "hatUstar_cap_D.criterion": (
        "G is in hatU* ∩ D_{pi,pi'} exactly when each factor is one-sided, or PSL(2,p) "
        "with p > 3 Mersenne and sig(D) or tau(D) = {2}."
    ),
    "Ustar_cap_E.single_prime": "For r ∉ {2,7}, G is r-soluble exactly when G is in U*_{r,r'} ∩ E_{r,r'}.",
    "hatUstar_cap_D.single_prime": "For r ≠ 2, G is r-soluble exactly when G is in hatU*_{r,r'} ∩ D_{r,r'}.",
    "Vstar.pi_soluble_equivalence": "If 2 ∉ pi, 7 ∉ pi and |pi| ≥ 2, then V* holds exactly when G is pi-soluble.",
    "hatVstar.separable": "If |pi| ≥ 2 and |pi'| ≥ 2, then hatV* holds exactly when G is pi-separable.",
    "Vstar_cap_E.necessity": (
        "In V* ∩ E_{pi,pi'} every factor D is one-sided, or PSL(2,7) with sig(D) or tau(D) = {7}."
    ),
    "Vstar_cap_E.single_prime": "For r ≠ 7, G is r-soluble exactly when G is in V*_{r,r'} ∩ E_{r,r'}.",
    "hatVstar_cap_D.separable": "G is pi-separable exactly when G is in hatV* ∩ D_{pi,pi'}.",
    "hall_facts": "Recorded Hall-subgroup facts for this simple group decide every required E-property.",
}


class Value(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    NECESSARY_ONLY = "NecessaryOnly"

    def __str__(self) -> str:
        return self.value


_RANK = {Value.NO: 0, Value.NECESSARY_ONLY: 1, Value.YES: 2}


def value_rank(v: Value) -> int:
    return _RANK[v]


@dataclass(frozen=True)
class Citation:
    rule: str
    factor: str | None = None

    @property
    def statement(self) -> str:
        return RULES[self.rule]

    def as_dict(self) -> dict:
        return {"rule": self.rule, "factor": self.factor, "statement": self.statement}


@dataclass(frozen=True)
class Verdict:
    value: Value
    justification: tuple[Citation, ...]
    blocking: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.justification:
            raise ValueError("a verdict needs at least one justification")
        if self.value is Value.NECESSARY_ONLY and not self.blocking:
            raise ValueError("NecessaryOnly verdicts name their blocking factors")


def _yes(*rules: str) -> Verdict:
    return Verdict(Value.YES, tuple(Citation(r) for r in rules))


def _no(rule: str, factor: SimpleGroupId) -> Verdict:
    return Verdict(Value.NO, (Citation(rule, factor.label),))


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class Context:
    """pi together with the joint spectrum of a factor list."""

    factors: tuple[SimpleGroupId, ...]
    pi: PrimeSet
    spectrum: PrimeSet
    reading: str = "relative"

    @property
    def sigma(self) -> PrimeSet:
        return self.pi & self.spectrum

    @property
    def tau(self) -> PrimeSet:
        return self.spectrum - self.pi

    def pi_is(self, r: int) -> bool:
        """"pi = {r}" under the chosen reading."""
        if self.reading == "absolute":
            return self.pi.primes == (r,)
        return self.sigma.primes == (r,)

    def pipr_is(self, r: int) -> bool:
        """"pi' = {r}"; never true in the absolute reading."""
        if self.reading == "absolute":
            return False
        return self.tau.primes == (r,)

    def singleton_side(self) -> int | None:
        """r when pi = {r} or pi' = {r}; None otherwise (pi side wins if both)."""
        for r in self.spectrum:
            if self.pi_is(r) or self.pipr_is(r):
                return r
        if self.reading == "absolute" and len(self.pi) == 1:
            return self.pi.primes[0]
        return None

    def sig(self, D: SimpleGroupId) -> PrimeSet:
        return self.pi & spectrum_of(D)

    def tau_of(self, D: SimpleGroupId) -> PrimeSet:
        return spectrum_of(D) - self.pi


def make_context(factors: Iterable[SimpleGroupId], pi: Iterable[int], reading: str = "relative") -> Context:
    if reading not in ("relative", "absolute"):
        raise ValueError(f"reading must be 'relative' or 'absolute', got {reading!r}")
    fs = tuple(normalize(f) for f in factors)
    if not fs:
        raise ValueError("factor list must be non-empty")
    spec: set[int] = set()
    for f in fs:
        spec.update(spectrum_of(f))
    return Context(fs, PrimeSet(pi), PrimeSet(spec), reading)


def _ctx(factors, pi, reading="relative") -> Context:
    if isinstance(factors, Context):
        return factors
    return make_context(factors, pi, reading)


# ---------------------------------------------------------------------------
# family predicates


def is_psl2_7(D: SimpleGroupId) -> bool:
    return (D.family, D.n, D.q) == ("PSL", 2, 7)


def is_psl2_mersenne(D: SimpleGroupId) -> bool:
    """PSL(2,p) with p > 3 a Mersenne prime."""
    return D.family == "PSL" and D.n == 2 and D.q > 3 and is_mersenne_prime(D.q) is not None


def is_psl3_even(D: SimpleGroupId) -> bool:
    """PSL(3,2^f) with f > 1 and f ≡ ±1 (mod 6)."""
    if not (D.family == "PSL" and D.n == 3):
        return False
    p, f = D.char_p, D.field_exponent
    return p == 2 and f > 1 and f % 6 in (1, 5)


def is_psu3_mod9(D: SimpleGroupId) -> bool:
    """PSU(3,q) with q ≡ 4 or 7 (mod 9)."""
    return D.family == "PSU" and D.n == 3 and D.q % 9 in (4, 7)


def is_psu3_mersenne(D: SimpleGroupId) -> bool:
    """PSU(3,p) with p = 7, or p = 2^f - 1 prime with f ≡ 5 (mod 6)."""
    if not (D.family == "PSU" and D.n == 3 and is_prime(D.q)):
        return False
    if D.q == 7:
        return True
    f = is_mersenne_prime(D.q)
    return f is not None and f % 6 == 5


def is_gilotti_psl2(D: SimpleGroupId) -> bool:
    """PSL(2,q) with q = 3^f > 3, f odd, or q ≡ 7 (mod 12)."""
    if not (D.family == "PSL" and D.n == 2):
        return False
    q = D.q
    if D.char_p == 3 and q > 3 and D.field_exponent % 2 == 1:
        return True
    return q % 12 == 7


def mersenne_half_spectrum(p: int) -> PrimeSet:
    """pi(p(p-1)/2)."""
    return prime_spectrum(p * (p - 1) // 2)


# ---------------------------------------------------------------------------
# predicates on factor lists


def _one_sided(ctx: Context, D: SimpleGroupId) -> bool:
    return not ctx.sig(D) or not ctx.tau_of(D)


def is_pi_separable(factors, pi=None, reading="relative") -> bool:
    ctx = _ctx(factors, pi, reading)
    return all(_one_sided(ctx, D) for D in ctx.factors)


def is_pi_soluble(factors, pi=None, reading="relative") -> bool:
    ctx = _ctx(factors, pi, reading)
    return all((D.family == "C" and D.n in ctx.pi) or not ctx.sig(D) for D in ctx.factors)


def is_pi_selected(factors, pi=None, reading="relative") -> bool:
    ctx = _ctx(factors, pi, reading)
    return all(len(ctx.sig(D)) <= 1 for D in ctx.factors)


def factor_condition_A(D: SimpleGroupId, pi: Iterable[int]) -> bool:
    """The per-factor necessary condition for membership in U."""
    D = normalize(D)
    ctx = make_context([D], pi)
    return _cond_U(ctx, D)


def _cond_U(ctx: Context, D: SimpleGroupId) -> bool:
    if _one_sided(ctx, D):
        return True
    if is_psl2_7(D) or is_psu3_mod9(D):
        return ctx.sig(D).primes == (3,) or ctx.tau_of(D).primes == (3,)
    return False


def _cond_Ustar(ctx: Context, D: SimpleGroupId) -> bool:
    s, t = ctx.sig(D), ctx.tau_of(D)
    if s <= {2} or t <= {2}:
        return True
    if is_psl2_mersenne(D):
        return True
    if is_psl3_even(D) or is_psu3_mod9(D):
        return s <= {2, 3} or t <= {2, 3}
    return False


def _cond_hatUstar(ctx: Context, D: SimpleGroupId) -> bool:
    s, t = ctx.sig(D), ctx.tau_of(D)
    if s <= {2} or t <= {2}:
        return True
    if is_psl2_mersenne(D):
        return True
    if is_psu3_mersenne(D):
        return s <= {2, 3} or t <= {2, 3}
    return False


def _mersenne_singleton(ctx: Context, D: SimpleGroupId) -> bool:
    half = mersenne_half_spectrum(D.q)
    return any(ctx.pi_is(r) or ctx.pipr_is(r) for r in half) or (
        ctx.reading == "absolute" and len(ctx.pi) == 1 and ctx.pi.primes[0] in half
    )


def _three_side(ctx: Context) -> bool:
    return ctx.pi_is(3) or ctx.pipr_is(3)


def _cond_Vstar(ctx: Context, D: SimpleGroupId) -> bool:
    if _one_sided(ctx, D):
        return True
    if is_psl2_7(D) and (ctx.sig(D).primes == (7,) or ctx.tau_of(D).primes == (7,)):
        return True
    if is_psl2_mersenne(D) and _mersenne_singleton(ctx, D):
        return True
    if (is_psl3_even(D) or is_psu3_mod9(D)) and _three_side(ctx):
        return True
    return False


def _cond_hatVstar(ctx: Context, D: SimpleGroupId) -> bool:
    if _one_sided(ctx, D):
        return True
    if is_psl2_mersenne(D) and _mersenne_singleton(ctx, D):
        return True
    if is_psu3_mersenne(D) and _three_side(ctx):
        return True
    return False


def _cond_gilotti(ctx: Context, D: SimpleGroupId) -> bool:
    if _one_sided(ctx, D):
        return True
    if is_gilotti_psl2(D):
        target = prime_spectrum(D.q + 1)
        return ctx.sig(D) == target or ctx.tau_of(D) == target
    return False


def _not_one_sided(ctx: Context) -> tuple[str, ...]:
    seen: list[str] = []
    for D in ctx.factors:
        if not _one_sided(ctx, D) and D.label not in seen:
            seen.append(D.label)
    return tuple(seen)


def _iff(ctx: Context, cond, rule: str) -> Verdict:
    for D in ctx.factors:
        if not cond(ctx, D):
            return _no(rule, D)
    return _yes(rule)


def _necessity(ctx: Context, cond, rule: str, undetermined: str) -> Verdict:
    for D in ctx.factors:
        if not cond(ctx, D):
            return _no(rule, D)
    if is_pi_separable(ctx):
        return _yes("hall.separable")
    return Verdict(
        Value.NECESSARY_ONLY,
        (Citation(rule), Citation(undetermined)),
        blocking=_not_one_sided(ctx),
    )


# ---------------------------------------------------------------------------
# the classes


def classify_U(factors, pi=None, reading="relative") -> Verdict:
    ctx = _ctx(factors, pi, reading)
    v = _necessity(ctx, _cond_U, "U.necessity", "U.undetermined")
    if ctx.sigma.primes == (2,) or ctx.tau.primes == (2,):
        v = Verdict(v.value, v.justification + (Citation("U.two"),), v.blocking)
    return v


def classify_V(factors, pi=None, reading="relative") -> Verdict:
    ctx = _ctx(factors, pi, reading)
    if _three_side(ctx):
        u = classify_U(ctx)
        return Verdict(u.value, (Citation("V.three"),) + u.justification, u.blocking)
    if is_pi_separable(ctx):
        return _yes("V.criterion", "hall.separable")
    return _no("V.criterion", next(D for D in ctx.factors if not _one_sided(ctx, D)))


def classify_hatU(factors, pi=None, reading="relative") -> Verdict:
    ctx = _ctx(factors, pi, reading)
    return _iff(ctx, lambda c, D: _one_sided(c, D), "hatU.criterion")


def classify_hatV(factors, pi=None, reading="relative") -> Verdict:
    return classify_hatU(factors, pi, reading)


def classify_D_pi_pipr(factors, pi=None, reading="relative") -> Verdict:
    return _iff(_ctx(factors, pi, reading), _cond_gilotti, "D_pi_pipr.criterion")


def classify_Ustar(factors, pi=None, reading="relative") -> Verdict:
    return _iff(_ctx(factors, pi, reading), _cond_Ustar, "Ustar.criterion")


def classify_hatUstar(factors, pi=None, reading="relative") -> Verdict:
    return _iff(_ctx(factors, pi, reading), _cond_hatUstar, "hatUstar.criterion")


def classify_Vstar(factors, pi=None, reading="relative") -> Verdict:
    return _necessity(_ctx(factors, pi, reading), _cond_Vstar, "Vstar.necessity", "Vstar.undetermined")


def classify_hatVstar(factors, pi=None, reading="relative") -> Verdict:
    return _iff(_ctx(factors, pi, reading), _cond_hatVstar, "hatVstar.criterion")


CLASSIFIERS = {
    "U": classify_U,
    "V": classify_V,
    "hatU": classify_hatU,
    "hatV": classify_hatV,
    "Ustar": classify_Ustar,
    "Vstar": classify_Vstar,
    "hatUstar": classify_hatUstar,
    "hatVstar": classify_hatVstar,
    "D_pi_pipr": classify_D_pi_pipr,
}

IFF_CLASSES = ("hatU", "hatV", "Ustar", "hatUstar", "hatVstar", "D_pi_pipr")


def simple_Ustar_iff(S: SimpleGroupId, pi: Iterable[int]) -> Verdict:
    """U* membership for a simple group, for pi inside pi(S) \\ {2}."""
    S = normalize(S)
    pi = PrimeSet(pi)
    if S.is_abelian:
        raise ScopeError(f"{S} is abelian; use the factor-list classifier")
    odd_part = spectrum_of(S) - {2}
    if not pi or not (pi <= odd_part) or pi == odd_part:
        raise ScopeError(
            f"pi = {pi} must be a non-empty proper subset of pi({S}) \\ {{2}} = {odd_part}; "
            "use the factor-list classifier instead"
        )
    rule = "simple.Ustar.criterion"
    if is_psl2_mersenne(S):
        return _yes(rule)
    if is_psl3_even(S) or is_psu3_mod9(S):
        if pi.primes == (3,) or pi == spectrum_of(S) - {2, 3}:
            return _yes(rule)
    return _no(rule, S)


# ---------------------------------------------------------------------------
# corollaries


@dataclass(frozen=True)
class Conclusion:
    rule: str
    target: str  # class or class intersection the conclusion is about
    verdict: Verdict | None
    note: str = ""


def _solubility_verdict(rule: str, holds: bool, ctx: Context) -> Verdict:
    if holds:
        return _yes(rule)
    bad = next((D for D in ctx.factors if not _one_sided(ctx, D) or D.family != "C"), ctx.factors[0])
    return _no(rule, bad)


def apply_corollaries(factors, pi=None, facts=None, reading="relative") -> list[Conclusion]:
    """Sharpened statements whose side conditions hold for this input.

    Conditions on pi are tested on sig = pi ∩ pi(G), which is legitimate
    because every class here depends on pi only through sig.
    """
    ctx = _ctx(factors, pi, reading)
    sigma, tau = ctx.sigma, ctx.tau
    out: list[Conclusion] = []
    soluble = is_pi_soluble(ctx)
    separable = is_pi_separable(ctx)
    s = set(sigma)

    # U as pi-solubility
    if 3 not in s and (
        2 not in s
        or len(s) == 1
        or (len(s) == 2 and s != {2, 7})
        or (len(s) == 3 and not {2, 7} <= s and s != {2, 5, 13})
    ):
        out.append(Conclusion("U.pi_soluble_equivalence", "U",
                              _solubility_verdict("U.pi_soluble_equivalence", soluble, ctx)))

    # Du: separability through U ∩ E and V ∩ E
    v = _solubility_verdict("U_cap_E.separable", separable, ctx)
    out.append(Conclusion("U_cap_E.separable", "U∩E_pi_pipr", v))
    out.append(Conclusion("U_cap_E.separable", "V∩E_pi_pipr", v))

    single = sigma.primes[0] if len(sigma) == 1 else None

    # U*_{r,r'} for a single prime r ∉ {2,3}
    if single is not None and single not in (2, 3):
        r = single
        r_soluble = soluble
        escape = [D for D in ctx.factors if is_psl2_mersenne(D) and r in mersenne_half_spectrum(D.q)]
        if not r_soluble and not escape:
            note = "not r-soluble and no Mersenne PSL(2,p) factor with r | p(p-1)/2, so U* fails"
            verdict = Verdict(Value.NO, (Citation("Ustar.single_prime"),))
        else:
            note = "necessary condition met"
            verdict = None
        out.append(Conclusion("Ustar.single_prime", "Ustar", verdict, note))

    # U* ∩ E_{pi,pi'}: necessity; hatU* ∩ D_{pi,pi'}: criterion
    def cond_ue(c, D):
        if _one_sided(c, D):
            return True
        two = c.sig(D).primes == (2,) or c.tau_of(D).primes == (2,)
        seven = c.sig(D).primes == (7,) or c.tau_of(D).primes == (7,)
        return (is_psl2_mersenne(D) and two) or (is_psl2_7(D) and seven)

    def cond_hd(c, D):
        if _one_sided(c, D):
            return True
        return is_psl2_mersenne(D) and (c.sig(D).primes == (2,) or c.tau_of(D).primes == (2,))

    out.append(Conclusion("Ustar_cap_E.necessity", "Ustar∩E_pi_pipr",
                          _necessity(ctx, cond_ue, "Ustar_cap_E.necessity", "Vstar.undetermined")))
    out.append(Conclusion("hatUstar_cap_D.criterion", "hatUstar∩D_pi_pipr",
                          _iff(ctx, cond_hd, "hatUstar_cap_D.criterion")))

    if single is not None and single not in (2, 7):
        out.append(Conclusion("Ustar_cap_E.single_prime", "Ustar∩E_pi_pipr",
                              _solubility_verdict("Ustar_cap_E.single_prime", soluble, ctx)))
    if single is not None and single != 2:
        out.append(Conclusion("hatUstar_cap_D.single_prime", "hatUstar∩D_pi_pipr",
                              _solubility_verdict("hatUstar_cap_D.single_prime", soluble, ctx)))

    # V*
    if 2 not in s and 7 not in s and len(s) >= 2:
        out.append(Conclusion("Vstar.pi_soluble_equivalence", "Vstar",
                              _solubility_verdict("Vstar.pi_soluble_equivalence", soluble, ctx)))
    pipr_big = len(tau) >= 2 if reading == "relative" else True
    if len(s) >= 2 and pipr_big:
        out.append(Conclusion("hatVstar.separable", "hatVstar",
                              _solubility_verdict("hatVstar.separable", separable, ctx)))

    def cond_ve(c, D):
        if _one_sided(c, D):
            return True
        return is_psl2_7(D) and (c.sig(D).primes == (7,) or c.tau_of(D).primes == (7,))

    out.append(Conclusion("Vstar_cap_E.necessity", "Vstar∩E_pi_pipr",
                          _necessity(ctx, cond_ve, "Vstar_cap_E.necessity", "Vstar.undetermined")))
    if single is not None and single != 7:
        out.append(Conclusion("Vstar_cap_E.single_prime", "Vstar∩E_pi_pipr",
                              _solubility_verdict("Vstar_cap_E.single_prime", soluble, ctx)))
    out.append(Conclusion("hatVstar_cap_D.separable", "hatVstar∩D_pi_pipr",
                          _solubility_verdict("hatVstar_cap_D.separable", separable, ctx)))

    if facts:
        out.extend(_fact_conclusions(ctx, facts))
    return out


def _fact_conclusions(ctx: Context, facts) -> list[Conclusion]:
    """Decide U for a single simple factor from recorded E-facts."""
    if len(ctx.factors) != 1 or ctx.factors[0].is_abelian:
        return []
    S = ctx.factors[0]
    table = {}
    for f in facts:
        if f.group == S and f.property == "E":
            table[f.pi] = f.holds
    sig, tau = ctx.sig(S), ctx.tau_of(S)
    needed = [PrimeSet([r, s]) for r in sig for s in tau]
    if not needed or any(p not in table for p in needed):
        return []
    holds = all(table[p] for p in needed)
    verdict = Verdict(Value.YES if holds else Value.NO, (Citation("hall_facts", S.label),))
    out = [Conclusion("hall_facts", "U", verdict, "E{r,s} for " + ", ".join(str(p) for p in needed))]
    if _three_side(ctx):
        out.append(Conclusion("hall_facts", "V", verdict, "V equals U here"))
    return out


# ---------------------------------------------------------------------------
# reports


@dataclass
class ClassReport:
    factors: tuple[SimpleGroupId, ...]
    pi: PrimeSet
    reading: str
    verdicts: dict[str, Verdict]
    pi_separable: bool
    pi_soluble: bool
    pi_selected: bool
    corollaries: list[Conclusion] = field(default_factory=list)
    flags: tuple[str, ...] = ()

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]


def classify(factors: Sequence[SimpleGroupId], pi: Iterable[int], reading: str = "relative", facts=None) -> ClassReport:
    ctx = make_context(factors, pi, reading)
    verdicts = {name: fn(ctx) for name, fn in CLASSIFIERS.items()}
    flags = [f"reading={reading}"]
    outside = ctx.pi - ctx.spectrum
    if outside:
        flags.append(f"pi_outside_spectrum={outside}")
    if not ctx.sigma or not ctx.tau:
        flags.append("pi_covers_no_or_all_primes")
    report = ClassReport(
        factors=ctx.factors,
        pi=ctx.pi,
        reading=reading,
        verdicts=verdicts,
        pi_separable=is_pi_separable(ctx),
        pi_soluble=is_pi_soluble(ctx),
        pi_selected=is_pi_selected(ctx),
        corollaries=apply_corollaries(ctx, facts=facts, reading=reading),
        flags=tuple(flags),
    )
    check_consistency(report)
    return report


class InconsistentReport(AssertionError):
    pass


def check_consistency(report: ClassReport) -> None:
    """Internal implications every report must satisfy."""
    v = {k: x.value for k, x in report.verdicts.items()}
    Y, N = Value.YES, Value.NO
    problems = []
    if report.pi_separable:
        for k in ("U", "V", "hatU", "hatV", "Ustar", "Vstar", "hatUstar", "hatVstar", "D_pi_pipr"):
            if v[k] is not Y:
                problems.append(f"separable but {k} = {v[k]}")
    if (v["hatU"] is Y) != report.pi_separable:
        problems.append("hatU disagrees with separability")
    if v["hatU"] != v["hatV"]:
        problems.append("hatU and hatV differ")
    if v["hatVstar"] is Y and v["hatUstar"] is not Y:
        problems.append("hatV* holds without hatU*")
    if v["Vstar"] is not N and v["Ustar"] is N:
        problems.append("V* possible without U*")
    if v["V"] is not N and v["U"] is N:
        problems.append("V possible without U")
    if report.pi_soluble and not report.pi_separable:
        problems.append("soluble but not separable")
    if report.pi_soluble and not report.pi_selected:
        problems.append("soluble but not selected")
    for c in report.corollaries:
        if c.verdict is None or c.target not in v:
            continue
        base, got = v[c.target], c.verdict.value
        if base is not Value.NECESSARY_ONLY and got is not Value.NECESSARY_ONLY and base is not got:
            problems.append(f"{c.rule} gives {c.target} = {got}, base verdict {base}")
    by_target: dict[str, set] = {}
    for c in report.corollaries:
        if c.verdict is not None and c.verdict.value is not Value.NECESSARY_ONLY:
            by_target.setdefault(c.target, set()).add(c.verdict.value)
    for target, values in by_target.items():
        if len(values) > 1:
            problems.append(f"corollaries disagree on {target}")
    if problems:
        raise InconsistentReport("; ".join(problems))


def report_as_dict(report: ClassReport) -> dict:
    def verdict_dict(name, v: Verdict):
        flags = list(report.flags)
        if v.blocking:
            flags.append("blocked_by=" + ",".join(v.blocking))
            flags.append("oracle_escalation_suggested")
        return {
            "class": name,
            "verdict": v.value.value,
            "citations": [c.as_dict() for c in v.justification],
            "flags": flags,
        }

    return {
        "factors": [f.label for f in report.factors],
        "pi": list(report.pi.primes),
        "reading": report.reading,
        "classes": [verdict_dict(k, x) for k, x in report.verdicts.items()],
        "pi_separable": report.pi_separable,
        "pi_soluble": report.pi_soluble,
        "pi_selected": report.pi_selected,
        "corollaries": [
            {
                "rule": c.rule,
                "target": c.target,
                "verdict": c.verdict.value.value if c.verdict else None,
                "statement": RULES[c.rule],
                "note": c.note,
            }
            for c in report.corollaries
        ],
    }

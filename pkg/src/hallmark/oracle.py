"""Brute-force cross-validation of the classifier and the recorded facts.

For each group in a small built-in corpus the permutation-group engine
decides E, C and D for prime sets of size at most two (larger sets when a
soluble Hall subgroup exists), derives the nine class memberships from
those answers, and compares everything against the recorded Hall facts,
the factor-based classifier and a frozen golden file.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .arith import PrimeSet, factorize
from .catalog import construct, hall_facts, identify_by_order, parse_group, spectrum_of
from .catalog.ids import SimpleGroupId
from .classifier import CLASS_NAMES, Value, make_context, CLASSIFIERS
from .errors import ResourceLimitError, ScopeError
from .permgrp.group import PermGroup
from .permgrp.hall import (
    HallProperties,
    check_E_C_D,
    composition_factor_orders,
    find_hall_subgroup,
)
from .permgrp.lattice import ElementTable

GOLDEN_NAME = "crosscheck_golden.json"
CHECKS = ("E", "C", "D")


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    factors: tuple[SimpleGroupId, ...]
    degree: int
    tier: str  # "core" or "stretch"

    def build(self) -> PermGroup:
        return construct(self.name)

    @property
    def is_simple(self) -> bool:
        return len(self.factors) == 1 and not self.factors[0].is_abelian

    @property
    def spectrum(self) -> PrimeSet:
        out: set[int] = set()
        for f in self.factors:
            out.update(spectrum_of(f))
        return PrimeSet(out)


def _simple(label: str, degree: int, tier: str) -> CorpusEntry:
    return CorpusEntry(label, (parse_group(label),), degree, tier)


def builtin_corpus() -> list[CorpusEntry]:
    return [
        _simple("A5", 5, "core"),
        _simple("A6", 6, "core"),
        _simple("PSL(2,7)", 8, "core"),
        CorpusEntry("PGL(2,7)", (parse_group("C2"), parse_group("PSL(2,7)")), 8, "core"),
        _simple("PSL(2,8)", 9, "core"),
        _simple("PSL(2,17)", 18, "core"),
        _simple("PSL(2,31)", 32, "core"),
        _simple("PSL(3,3)", 13, "core"),
        _simple("PSU(3,3)", 28, "stretch"),
        _simple("PSU(3,4)", 65, "stretch"),
        _simple("PSU(4,2)", 40, "stretch"),
    ]


def corpus_entry(name: str) -> CorpusEntry:
    for e in builtin_corpus():
        if e.name == name:
            return e
    raise KeyError(f"no builtin group named {name!r}; choose from "
                   + ", ".join(e.name for e in builtin_corpus()))


# ---------------------------------------------------------------------------
# per-group oracle with caching


class HallOracle:
    """E/C/D answers for one group, cached by the relevant prime set."""

    def __init__(self, G: PermGroup, cap: int | None = None):
        self.group = G
        self.cap = cap
        self.spectrum = PrimeSet(factorize(G.order()).primes())
        self._cache: dict[PrimeSet, HallProperties | str] = {}

    @cached_property
    def table(self) -> ElementTable:
        return ElementTable(self.group, self.cap)

    def sigma(self, pi: Iterable[int]) -> PrimeSet:
        return PrimeSet(pi) & self.spectrum

    def properties(self, pi: Iterable[int]) -> HallProperties | str:
        """HallProperties, or a string naming why the question is out of reach."""
        key = self.sigma(pi)
        if key not in self._cache:
            trivial = not key or key == self.spectrum
            try:
                self._cache[key] = check_E_C_D(self.group, key, None if trivial else self.table)
            except ScopeError as exc:
                self._cache[key] = f"out of scope: {exc}"
        return self._cache[key]

    def value(self, pi: Iterable[int], check: str) -> bool | None:
        props = self.properties(pi)
        if isinstance(props, str):
            return None
        return getattr(props, check)

    def reason(self, pi: Iterable[int], check: str) -> str:
        props = self.properties(pi)
        if isinstance(props, str):
            return props
        if getattr(props, check) is None:
            return f"{check} not decided for |pi ∩ pi(G)| > 2 (method: {props.method})"
        return ""


def all3(values: Iterable[bool | None]) -> bool | None:
    """Conjunction in three-valued logic, None meaning unknown."""
    seen_unknown = False
    for v in values:
        if v is False:
            return False
        if v is None:
            seen_unknown = True
    return None if seen_unknown else True


def class_requirements(spectrum: PrimeSet, sigma: PrimeSet, cls: str) -> list[tuple[PrimeSet, str]]:
    """The (prime set, property) pairs whose conjunction defines the class,
    with pi' read as the complement of sigma inside the spectrum."""
    tau = spectrum - sigma
    if cls == "D_pi_pipr":
        return [(sigma, "D"), (tau, "D")]
    prop = "D" if cls.startswith("hat") else "E"
    star = cls.endswith("star")
    S = sigma - {2} if star else sigma
    T = tau - {2} if star else tau
    if cls.removeprefix("hat").startswith("U"):
        return [(PrimeSet([r, s]), prop) for r in S for s in T]
    return [(tau | {r}, prop) for r in S] + [(sigma | {s}, prop) for s in T]


def class_truth(oracle: HallOracle, sigma: PrimeSet, cls: str) -> tuple[bool | None, str]:
    reqs = class_requirements(oracle.spectrum, sigma, cls)
    vals = [oracle.value(p, c) for p, c in reqs]
    truth = all3(vals)
    note = ""
    if truth is None:
        missing = [f"{c}{p}" for (p, c), v in zip(reqs, vals) if v is None]
        note = "undecided: " + ", ".join(missing)
    return truth, note


# ---------------------------------------------------------------------------
# report rows


@dataclass
class Row:
    group: str
    pi: PrimeSet
    check: str  # E, C, D or a class name
    oracle: bool | None
    fact: bool | None = None
    fact_source: str = ""
    classifier: str | None = None
    golden: object = None  # True/False/None, or MISSING when no golden file is used
    status: str = ""
    note: str = ""
    seconds: float = 0.0

    @property
    def key(self) -> str:
        return f"{self.group}|{self.pi}|{self.check}"

    @property
    def sources(self) -> list[str]:
        out = []
        if self.fact is not None:
            out.append("HallFact")
        if self.classifier is not None:
            out.append("classifier")
        if self.golden is not MISSING:
            out.append("golden")
        return out or ["none"]

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "pi": list(self.pi.primes),
            "check": self.check,
            "oracle": self.oracle,
            "fact": self.fact,
            "classifier": self.classifier,
            "sources": self.sources,
            "status": self.status,
            "note": self.note,
        }


class _Missing:
    def __repr__(self) -> str:
        return "MISSING"


MISSING = _Missing()

_CHECK_ORDER = {c: i for i, c in enumerate(CHECKS + CLASS_NAMES)}


def _row_sort_key(row: Row):
    return (row.group, len(row.pi), row.pi.primes, _CHECK_ORDER.get(row.check, 99), row.check)


def _finish(row: Row) -> Row:
    """Set status from the collected expectations."""
    problems = []
    if row.fact is not None and row.oracle is not None and row.fact != row.oracle:
        problems.append(f"recorded fact says {row.fact}")
    if row.classifier in (Value.YES.value, Value.NO.value) and row.oracle is not None:
        if (row.classifier == Value.YES.value) != row.oracle:
            problems.append(f"classifier says {row.classifier}")
    if row.golden is not MISSING and row.golden != row.oracle:
        problems.append(f"golden file says {row.golden}")
    if problems:
        row.status = "DISAGREE"
        row.note = "; ".join(filter(None, [row.note] + problems))
    elif row.oracle is None:
        row.status = "SKIPPED"
    elif row.fact is not None or row.classifier in (Value.YES.value, Value.NO.value):
        row.status = "agree"
    else:
        row.status = "recorded"
    return row


@dataclass
class ExampleCheck:
    claim: str
    status: str  # PASS, FAIL or SKIPPED
    detail: str = ""


@dataclass
class CrosscheckReport:
    rows: list[Row] = field(default_factory=list)
    examples: list[ExampleCheck] = field(default_factory=list)
    skipped_groups: list[tuple[str, str]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def disagreements(self) -> list[Row]:
        return [r for r in self.rows if r.status == "DISAGREE"]

    @property
    def ok(self) -> bool:
        return (not self.disagreements and not self.failures
                and all(e.status != "FAIL" for e in self.examples))

    def sort(self) -> "CrosscheckReport":
        self.rows.sort(key=_row_sort_key)
        self.skipped_groups.sort()
        return self

    def as_dict(self) -> dict:
        return {
            "rows": [r.as_dict() for r in self.rows],
            "examples": [vars(e) for e in self.examples],
            "skipped_groups": [{"group": g, "reason": why} for g, why in self.skipped_groups],
            "failures": list(self.failures),
            "disagreements": len(self.disagreements),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self, timings: bool = False) -> str:
        lines = []
        for e in self.examples:
            lines.append(f"[{e.status}] {e.claim}" + (f"  ({e.detail})" if e.detail else ""))
        for g, why in self.skipped_groups:
            lines.append(f"[SKIPPED] {g}: {why}")
        for f in self.failures:
            lines.append(f"[FAIL] {f}")
        fmt = lambda v: "?" if v is None else ("yes" if v is True else "no")  # noqa: E731
        for r in self.rows:
            parts = [f"{r.status:8}", f"{r.group:10}", f"{str(r.pi):14}", f"{r.check:10}",
                     f"oracle={fmt(r.oracle)}"]
            if r.fact is not None:
                parts.append(f"fact={fmt(r.fact)}")
            if r.classifier is not None:
                parts.append(f"classifier={r.classifier}")
            if timings:
                parts.append(f"{r.seconds:.3f}s")
            if r.note:
                parts.append(f"# {r.note}")
            lines.append(" ".join(parts))
        n = len(self.disagreements)
        lines.append(f"{len(self.rows)} rows, {n} disagreement{'s' if n != 1 else ''}")
        for r in self.disagreements:
            lines.append(f"DISAGREE {r.key}" + (f": {r.note}" if r.note else ""))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# golden file


def golden_path() -> Path:
    return Path(str(resources.files("hallmark") / "data" / GOLDEN_NAME))


def load_golden(path: str | Path | None = None) -> dict[str, bool | None] | None:
    p = Path(path) if path is not None else golden_path()
    if not p.exists():
        return None
    data = json.loads(p.read_text())
    if not isinstance(data, dict) or not isinstance(data.get("rows"), dict):
        raise ValueError(f"{p}: not a golden crosscheck file")
    return data["rows"]


def golden_from_report(report: CrosscheckReport) -> str:
    rows = {r.key: r.oracle for r in sorted(report.rows, key=_row_sort_key)}
    return json.dumps({"format": 1, "rows": rows}, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# sweeps


def _facts_by_key() -> dict[str, tuple[bool, str]]:
    return {f"{f.label}|{f.pi}|{f.property}": (f.holds, f.provenance) for f in hall_facts()}


def crosscheck_group(entry: CorpusEntry, oracle: HallOracle, pis: Iterable[PrimeSet],
                     golden: dict | None = None) -> list[Row]:
    """Rows for E, C, D and the nine classes, for each prime set in ``pis``."""
    facts = _facts_by_key()
    rows: list[Row] = []

    def golden_value(key):
        if golden is None:
            return MISSING
        return golden.get(key, MISSING)

    for pi in pis:
        pi = PrimeSet(pi)
        for check in CHECKS:
            t0 = time.perf_counter()
            v = oracle.value(pi, check)
            row = Row(entry.name, pi, check, v, note=oracle.reason(pi, check))
            row.seconds = time.perf_counter() - t0
            if row.key in facts:
                row.fact, row.fact_source = facts[row.key]
            row.golden = golden_value(row.key)
            rows.append(_finish(row))
            p = oracle.properties(pi)
            if check == "D" and not isinstance(p, str):
                chain = [p.E, p.C, p.D]
                if any(a is False and b is True for a, b in zip(chain, chain[1:])):
                    row.status = "DISAGREE"
                    row.note += "; D => C => E violated"
        ctx = make_context(entry.factors, pi)
        for cls in CLASS_NAMES:
            t0 = time.perf_counter()
            truth, note = class_truth(oracle, pi & oracle.spectrum, cls)
            row = Row(entry.name, pi, cls, truth, note=note)
            row.classifier = CLASSIFIERS[cls](ctx).value.value
            row.seconds = time.perf_counter() - t0
            row.golden = golden_value(row.key)
            rows.append(_finish(row))
    return rows


def sweep_sets(spectrum: PrimeSet, max_pi_size: int) -> list[PrimeSet]:
    out = []
    for k in range(1, min(max_pi_size, len(spectrum)) + 1):
        out.extend(PrimeSet(c) for c in combinations(spectrum.primes, k))
    return out


def full_sweep(max_pi_size: int = 2, include_stretch: bool = False, require_stretch: bool = False,
               golden: dict | None = None, cap: int | None = None,
               groups: Iterable[str] | None = None) -> CrosscheckReport:
    """Crosscheck every enabled corpus group over all pi ⊆ pi(G) with
    |pi| <= max_pi_size; recorded facts on other prime sets are added too."""
    report = CrosscheckReport()
    wanted = set(groups) if groups is not None else None
    fact_sets: dict[str, list[PrimeSet]] = {}
    for f in hall_facts():
        fact_sets.setdefault(f.label, []).append(f.pi)
    stretch = include_stretch or require_stretch
    for entry in builtin_corpus():
        if wanted is not None and entry.name not in wanted:
            continue
        if entry.tier == "stretch" and not stretch:
            report.skipped_groups.append((entry.name, "stretch tier not enabled"))
            continue
        try:
            G = entry.build()
            oracle = HallOracle(G, cap)
            pis = sweep_sets(entry.spectrum, max_pi_size)
            pis += [p for p in fact_sets.get(entry.name, []) if p not in pis]
            report.rows.extend(crosscheck_group(entry, oracle, pis, golden))
        except (ResourceLimitError, ScopeError) as exc:
            why = f"{type(exc).__name__}: {exc}"
            if entry.tier == "stretch" and not require_stretch:
                report.skipped_groups.append((entry.name, why))
            else:
                report.failures.append(f"{entry.name}: {why}")
    report.examples = run_examples(stretch=stretch, require_stretch=require_stretch, cap=cap)
    return report.sort()


# ---------------------------------------------------------------------------
# reproduction of the worked examples


def _witness_check(G: PermGroup, table: ElementTable | None, pi, order: int | None, label: str) -> ExampleCheck:
    disp = "{" + ",".join(map(str, sorted(pi))) + "}"
    w = find_hall_subgroup(G, pi, table)
    if order is None:
        claim = f"{label} has no Hall {disp}-subgroup"
        ok = w is None
        detail = "exhaustive search found none" if ok else f"found one of order {w.order}"
    else:
        claim = f"{label} has a Hall {disp}-subgroup of order {order}"
        ok = w is not None and w.order == order
        detail = (f"witness generators {' '.join(str(g) for g in w.subgroup.generators)}"
                  if w is not None else "none found")
    return ExampleCheck(claim, "PASS" if ok else "FAIL", detail)


def run_examples(stretch: bool = False, require_stretch: bool = False, cap: int | None = None) -> list[ExampleCheck]:
    out: list[ExampleCheck] = []

    G = construct("PSL(2,7)")
    T = ElementTable(G, cap)
    out.append(_witness_check(G, T, {2, 3}, 24, "PSL(2,7)"))
    out.append(_witness_check(G, T, {3, 7}, 21, "PSL(2,7)"))
    out.append(_witness_check(G, T, {2, 7}, None, "PSL(2,7)"))
    p = check_E_C_D(G, {2, 3}, T)
    ok = p.class_count == 2 and p.C is False and p.D is False
    out.append(ExampleCheck("PSL(2,7) has exactly 2 classes of Hall {2,3}-subgroups, so C and D fail",
                            "PASS" if ok else "FAIL", f"classes={p.class_count} C={p.C} D={p.D}"))

    H = construct("PGL(2,7)")
    w = find_hall_subgroup(H, {2, 3})
    out.append(ExampleCheck("PGL(2,7) has no subgroup of order 48",
                            "PASS" if w is None else "FAIL",
                            "a subgroup of order 48 would be a Hall {2,3}-subgroup; exhaustive search found none"))
    orders = composition_factor_orders(H)
    labels = sorted(identify_by_order(n)[0].label for n in orders)
    ok = labels == ["C2", "PSL(2,7)"]
    out.append(ExampleCheck("PGL(2,7) has composition factors C2 and PSL(2,7)",
                            "PASS" if ok else "FAIL", f"factor orders {orders}"))
    ctx = make_context([parse_group("C2"), parse_group("PSL(2,7)")], {3})
    u, hu = CLASSIFIERS["U"](ctx).value, CLASSIFIERS["hatU"](ctx).value
    ok = u is Value.NECESSARY_ONLY and hu is Value.NO
    out.append(ExampleCheck("factors [C2, PSL(2,7)] with pi={3}: U undetermined, hatU fails",
                            "PASS" if ok else "FAIL", f"U={u.value} hatU={hu.value}"))

    claims = [({2, 3}, 192), ({3, 5}, 75), ({3, 13}, 39), ({5, 13}, None)]
    if not stretch:
        facts = _facts_by_key()
        for pi, order in claims:
            disp = "{" + ",".join(map(str, sorted(pi))) + "}"
            holds, source = facts[f"PSU(3,4)|{disp}|E"]
            claim = (f"PSU(3,4) has a Hall {disp}-subgroup of order {order}" if order
                     else f"PSU(3,4) has no Hall {disp}-subgroup")
            agrees = holds == (order is not None)
            out.append(ExampleCheck(claim, "SKIPPED" if agrees else "FAIL",
                                    f"stretch tier not enabled; asserted from recorded fact ({source})"))
        return out
    try:
        U = construct("PSU(3,4)")
        TU = ElementTable(U, cap)
        for pi, order in claims:
            out.append(_witness_check(U, TU, pi, order, "PSU(3,4)"))
    except (ResourceLimitError, ScopeError) as exc:
        status = "FAIL" if require_stretch else "SKIPPED"
        out.append(ExampleCheck("PSU(3,4) Hall subgroups", status, f"{type(exc).__name__}: {exc}"))
    return out

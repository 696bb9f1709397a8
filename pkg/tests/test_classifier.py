import pytest
from hypothesis import assume, given, settings, strategies as st

from hallmark.arith import PrimeSet, is_prime_power
from hallmark.catalog import hall_facts, parse_group, spectrum_of
from hallmark.catalog.ids import SimpleGroupId
from hallmark.classifier import (
    CLASS_NAMES,
    Value,
    apply_corollaries,
    classify,
    classify_D_pi_pipr,
    classify_hatU,
    classify_hatUstar,
    classify_hatV,
    classify_hatVstar,
    classify_U,
    classify_Ustar,
    classify_V,
    classify_Vstar,
    factor_condition_A,
    is_pi_selected,
    is_pi_separable,
    is_pi_soluble,
    report_as_dict,
    simple_Ustar_iff,
    value_rank,
)
from hallmark.errors import ScopeError

Y, N, NO = Value.YES, Value.NO, Value.NECESSARY_ONLY


def F(*tokens):
    return [parse_group(t) for t in tokens]


# predicates -----------------------------------------------------------------

@pytest.mark.parametrize("factors, pi, sep, sol", [
    (("C2", "C3"), {2}, True, True),
    (("PSL(2,7)",), {3}, False, False),
    (("A5",), {2, 3, 5}, True, False),
    (("C3", "C3"), {3}, True, True),
    (("PSL(2,7)",), {5}, True, True),
])
def test_separable_and_soluble(factors, pi, sep, sol):
    assert is_pi_separable(F(*factors), pi) is sep
    assert is_pi_soluble(F(*factors), pi) is sol


def test_selected():
    assert is_pi_selected(F("PSL(2,7)"), {3})
    assert not is_pi_selected(F("A5"), {2, 3})
    # separable without being selected
    assert is_pi_separable(F("A5"), {2, 3, 5}) and not is_pi_selected(F("A5"), {2, 3, 5})


def test_condition_A():
    assert factor_condition_A(parse_group("PSL(2,7)"), {3})
    assert factor_condition_A(parse_group("PSL(2,7)"), {2, 7})
    assert not factor_condition_A(parse_group("A5"), {2, 3})
    assert factor_condition_A(parse_group("PSU(3,4)"), {3})
    assert not factor_condition_A(parse_group("PSU(3,5)"), {3})  # 5 is not 4 or 7 mod 9


# worked verdicts ---------------------------------------------------------------

@pytest.mark.parametrize("fn, factors, pi, expected", [
    (classify_U, ("PSL(2,7)",), {3}, NO),
    (classify_U, ("C2", "PSL(2,7)"), {3}, NO),
    (classify_U, ("A5",), {2, 3}, N),
    (classify_V, ("PSL(2,8)",), {2, 3}, N),
    (classify_V, ("C5", "C7"), {5}, Y),
    (classify_V, ("PSL(2,7)",), {3}, NO),
    (classify_hatU, ("PSL(2,7)",), {3}, N),
    (classify_hatU, ("A5",), {2, 3, 5}, Y),
    (classify_hatU, ("C2", "C3"), {2}, Y),
    (classify_D_pi_pipr, ("PSL(2,7)",), {2}, Y),
    (classify_D_pi_pipr, ("PSL(2,7)",), {2, 5}, Y),
    (classify_D_pi_pipr, ("PSL(2,7)",), {3}, N),
    (classify_D_pi_pipr, ("PSL(2,27)",), {2, 7}, Y),
    (classify_Ustar, ("PSL(2,31)",), {2, 3}, Y),
    (classify_Ustar, ("PSL(2,31)",), {5, 31}, Y),
    (classify_Ustar, ("PSU(3,4)",), {5, 13}, Y),
    # pi' ∩ pi(A6) = {2}, so the criterion holds from the other side
    (classify_Ustar, ("A6",), {3, 5}, Y),
    (classify_Ustar, ("A6",), {3}, N),
    (classify_hatUstar, ("PSU(3,7)",), {3}, Y),
    (classify_hatUstar, ("PSU(3,31)",), {3}, Y),
    (classify_hatUstar, ("PSL(3,8)",), {3}, N),
    (classify_Vstar, ("PSL(2,7)",), {7}, NO),
    (classify_Vstar, ("C11",), {11}, Y),
    (classify_Vstar, ("PSL(2,7)",), {2}, N),
    (classify_hatVstar, ("PSL(2,7)",), {7}, Y),
    (classify_hatVstar, ("PSL(2,7)",), {2}, N),
    (classify_hatVstar, ("PSU(3,7)",), {3}, Y),
])
def test_verdicts(fn, factors, pi, expected):
    assert fn(F(*factors), pi).value is expected


def test_vstar_psl27_with_complement_seven():
    # pi' ∩ pi(D) = {7}, which is one of the listed exceptions
    v = classify_Vstar(F("PSL(2,7)"), {2, 3})
    assert v.value is NO
    assert v.blocking == ("PSL(2,7)",)


def test_hatU_and_hatV_agree():
    for pi in ({2}, {3}, {2, 3}, {2, 3, 5}):
        a, b = classify_hatU(F("A5", "C7"), pi), classify_hatV(F("A5", "C7"), pi)
        assert a.value is b.value


def test_justifications():
    v = classify_U(F("C2", "PSL(2,7)"), {3})
    assert v.blocking == ("PSL(2,7)",)
    assert [c.rule for c in v.justification] == ["U.necessity", "U.undetermined"]
    v = classify_hatU(F("C2", "PSL(2,7)"), {3})
    assert v.justification[0].factor == "PSL(2,7)"
    assert all(c.statement for c in v.justification)


def test_isomorphic_spelling():
    assert classify_U(F("PSL(3,2)"), {3}).value is NO


def test_simple_Ustar():
    S = parse_group
    assert simple_Ustar_iff(S("PSU(3,4)"), {3}).value is Y
    assert simple_Ustar_iff(S("PSU(3,4)"), {5, 13}).value is Y
    assert simple_Ustar_iff(S("PSU(3,4)"), {5}).value is N
    assert simple_Ustar_iff(S("PSL(2,127)"), {3, 7}).value is Y
    assert simple_Ustar_iff(S("A5"), {3}).value is N
    for bad in ({2}, set(), {3, 5}):
        with pytest.raises(ScopeError):
            simple_Ustar_iff(S("A5"), bad)
    with pytest.raises(ScopeError):
        simple_Ustar_iff(S("C5"), {5})


# corollaries --------------------------------------------------------------------

def _rules(factors, pi, **kw):
    return {c.rule for c in apply_corollaries(F(*factors), pi, **kw)}


def test_corollary_side_conditions():
    assert "U.pi_soluble_equivalence" in _rules(("PSL(2,31)",), {5})
    assert "U.pi_soluble_equivalence" not in _rules(("PSL(2,7)",), {2, 7})
    assert "U.pi_soluble_equivalence" not in _rules(("PSU(3,4)",), {2, 5, 13})
    assert "hatVstar.separable" in _rules(("PSL(2,11)", "PSL(2,31)"), {5, 11})
    assert "Vstar.pi_soluble_equivalence" in _rules(("PSL(2,31)",), {3, 5})


def test_corollary_upgrade_for_u():
    conc = [c for c in apply_corollaries(F("PSL(2,31)"), {5}) if c.rule == "U.pi_soluble_equivalence"]
    assert conc[0].verdict.value is N
    assert classify_U(F("PSL(2,31)"), {5}).value is N


def test_fact_based_conclusions():
    conc = [c for c in apply_corollaries(F("PSL(2,7)"), {3}, facts=hall_facts()) if c.rule == "hall_facts"]
    assert {c.target: c.verdict.value for c in conc} == {"U": Y, "V": Y}
    # non-simple lists are never upgraded
    assert not [c for c in apply_corollaries(F("C2", "PSL(2,7)"), {3}, facts=hall_facts())
                if c.rule == "hall_facts"]


def test_report_serialization():
    d = report_as_dict(classify(F("PSL(2,7)"), {3}))
    assert [c["class"] for c in d["classes"]] == list(CLASS_NAMES)
    for c in d["classes"]:
        assert set(c) == {"class", "verdict", "citations", "flags"}
        assert "reading=relative" in c["flags"]
    u = d["classes"][0]
    assert "oracle_escalation_suggested" in u["flags"]


def test_absolute_reading_flag():
    r = classify(F("PSL(2,7)"), {2, 7}, reading="absolute")
    assert r.reading == "absolute"
    # relative reading sees pi' = {3} and defers to U; absolute does not
    assert classify_V(F("PSL(2,7)"), {2, 7}).value is NO
    assert r["V"].value is N
    with pytest.raises(ValueError):
        classify(F("A5"), {2}, reading="sideways")


def test_pi_outside_spectrum_flag():
    r = classify(F("PSL(2,7)"), {3, 11})
    assert any(f.startswith("pi_outside_spectrum") for f in r.flags)
    assert r["U"].value is classify_U(F("PSL(2,7)"), {3}).value


# property tests -------------------------------------------------------------------

def _pool():
    out = [SimpleGroupId("C", p) for p in (2, 3, 5, 7, 11, 13)]
    out += [SimpleGroupId("A", n) for n in range(5, 9)]
    for q in range(2, 32):
        if is_prime_power(q) is None:
            continue
        if q >= 4:
            out.append(parse_group(f"PSL(2,{q})"))
        if q <= 8:
            out.append(parse_group(f"PSL(3,{q})"))
        if q >= 3:
            out.append(parse_group(f"PSU(3,{q})"))
    return sorted(set(out))


POOL = _pool()
factor_lists = st.lists(st.sampled_from(POOL), min_size=1, max_size=3)


@st.composite
def inputs(draw):
    fs = draw(factor_lists)
    spec = set()
    for f in fs:
        spec |= set(spectrum_of(f))
    spec = sorted(spec)
    pi = draw(st.sets(st.sampled_from(spec)))
    return fs, PrimeSet(pi), PrimeSet(spec)


@settings(max_examples=400, deadline=None)
@given(inputs(), st.sets(st.sampled_from([97, 101, 103])))
def test_swap_symmetry(data, outside):
    fs, pi, spec = data
    a = classify(fs, pi)
    b = classify(fs, (spec - pi) | outside)
    for name in CLASS_NAMES:
        assert a[name].value is b[name].value, name


@settings(max_examples=400, deadline=None)
@given(inputs())
def test_report_invariants(data):
    fs, pi, _ = data
    r = classify(fs, pi, facts=hall_facts())  # raises on any internal inconsistency
    v = {k: x.value for k, x in r.verdicts.items()}
    assert (v["hatU"] is Y) == r.pi_separable
    if v["hatVstar"] is Y:
        assert v["hatUstar"] is Y
    if v["Vstar"] is not N:
        assert v["Ustar"] is not N
    if r.pi_soluble:
        assert r.pi_separable and r.pi_selected
    if r.pi_separable:
        assert all(x is Y for x in v.values())
    for x in r.verdicts.values():
        assert x.justification
        if x.value is NO:
            assert x.blocking


@settings(max_examples=300, deadline=None)
@given(inputs(), st.sampled_from(POOL))
def test_adding_a_factor_never_helps(data, extra):
    fs, pi, _ = data
    before = classify(fs, pi)
    after = classify(fs + [extra], pi)
    for name in CLASS_NAMES:
        assert value_rank(after[name].value) <= value_rank(before[name].value), name


@settings(max_examples=300, deadline=None)
@given(inputs())
def test_readings_agree_on_pair_classes(data):
    fs, pi, _ = data
    assume(pi)
    rel, ab = classify(fs, pi), classify(fs, pi, reading="absolute")
    for name in ("U", "hatU", "Ustar", "hatUstar", "D_pi_pipr"):
        assert rel[name].value is ab[name].value


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([g for g in POOL if not g.is_abelian]), st.data())
def test_simple_Ustar_matches_factor_criterion(S, data):
    odd = sorted(set(spectrum_of(S)) - {2})
    assume(len(odd) >= 2)
    pi = data.draw(st.sets(st.sampled_from(odd), min_size=1, max_size=len(odd) - 1))
    assert simple_Ustar_iff(S, pi).value is classify_Ustar([S], pi).value


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(POOL), st.data())
def test_single_factor_separability(D, data):
    spec = sorted(spectrum_of(D))
    pi = data.draw(st.sets(st.sampled_from(spec)))
    one_sided = set(spec) <= pi or not (set(spec) & pi)
    assert is_pi_separable([D], pi) is one_sided

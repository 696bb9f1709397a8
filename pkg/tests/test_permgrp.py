import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hallmark.arith import pi_part, prime_spectrum
from hallmark.catalog import construct
from hallmark.errors import FormatError, ResourceLimitError, ScopeError
from hallmark.permgrp import (
    CyclicExtension,
    ElementTable,
    PermGroup,
    Permutation,
    check_E_C_D,
    composition_factor_orders,
    find_hall_subgroup,
    format_cycles,
    hall_classes_by_extension,
    hall_conjugacy_classes,
    is_simple,
    naive_subgroups,
    normal_closure,
    normal_subgroups,
    parse_cycles,
)
from hallmark.permgrp.perm import raw_mul


def naive_closure(degree, gens):
    """Every product of generators, by breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = raw_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# permutations ---------------------------------------------------------------

def test_cycle_round_trip():
    p = Permutation.from_cycles("(1 2 3)(4 5)", 6)
    assert str(p) == "(1 2 3)(4 5)"
    assert p(1) == 2 and p(3) == 1 and p(6) == 6
    assert p.order() == 6
    assert str(Permutation.identity(4)) == "()"
    assert parse_cycles("(1,3)", 3) == (2, 1, 0)


def test_composition_applies_left_factor_first():
    a = Permutation.from_cycles("(1 2)", 3)
    b = Permutation.from_cycles("(2 3)", 3)
    assert (a * b)(1) == b(a(1)) == 3


@pytest.mark.parametrize("text", ["(1 4)", "(1 2)(2 3)", "(a b)", "1 2"])
def test_bad_cycles(text):
    with pytest.raises(FormatError):
        parse_cycles(text, 3)


@given(st.permutations(list(range(1, 8))), st.permutations(list(range(1, 8))))
def test_permutation_group_laws(xs, ys):
    x, y = Permutation(xs), Permutation(ys)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert (x ** x.order()).is_identity()
    assert Permutation.from_cycles(str(x), 7) == x


# stabilizer chains ----------------------------------------------------------

@pytest.mark.parametrize("name, order", [
    ("A5", 60), ("A6", 360), ("PSL(2,7)", 168), ("PGL(2,7)", 336), ("PSL(2,8)", 504),
])
def test_chain_order_matches_closure(name, order):
    G = construct(name)
    assert G.order() == order
    assert len(naive_closure(G.degree, G.raw_gens)) == order
    assert len(G.raw_elements()) == order
    assert sorted(G.raw_elements()) == G.raw_elements()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(list(range(1, 7))), min_size=1, max_size=3))
def test_random_groups_chain_vs_closure(images):
    gens = [Permutation(x) for x in images]
    G = PermGroup(6, gens)
    elems = naive_closure(6, G.raw_gens)
    assert G.order() == len(elems)
    assert all(G.chain.contains(e) for e in elems)


def test_membership():
    G = construct("PSL(2,7)")
    assert G.contains(G.generators[0] * G.generators[1])
    odd = Permutation.from_cycles("(1 2)", 8)
    assert not G.contains(odd)


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        construct("PSL(2,7)").raw_elements(cap=100)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("HALLMARK_MAX_ELEMENTS", "50")
    with pytest.raises(ResourceLimitError):
        construct("A5").raw_elements()


# subgroup enumeration -------------------------------------------------------

def test_a5_subgroup_counts():
    T = ElementTable(construct("A5"))
    naive = naive_subgroups(T)
    assert len(naive) == 59
    classes = CyclicExtension(T).all_classes()
    total = sum(c.size for c in classes)
    # every subgroup of A5 but A5 itself is soluble
    assert total == 58 == len(naive) - 1
    found = set()
    for c in classes:
        found.update(T.conjugates(c.rep))
    assert found == {H for H in naive if len(H) < 60}


def test_psl27_subgroup_counts():
    T = ElementTable(construct("PSL(2,7)"))
    naive = naive_subgroups(T)
    assert len(naive) == 179
    soluble = sum(c.size for c in CyclicExtension(T).all_classes())
    assert soluble == 178  # every proper subgroup is soluble
    assert sum(1 for H in naive if len(H) == 24) == 14


def test_a5_subgroup_orders_over_classes():
    T = ElementTable(construct("A5"))
    orders = sorted(c.order for c in CyclicExtension(T).all_classes())
    assert orders == [1, 2, 3, 4, 5, 6, 10, 12]


# Hall subgroups ---------------------------------------------------------------

def test_psl27_hall_subgroups():
    G = construct("PSL(2,7)")
    T = ElementTable(G)
    assert find_hall_subgroup(G, {2, 3}, T).order == 24
    assert find_hall_subgroup(G, {3, 7}, T).order == 21
    assert find_hall_subgroup(G, {2, 7}, T) is None
    assert hall_conjugacy_classes(G, {2, 3}, T).count == 2
    assert hall_classes_by_extension(G, {2, 3}, T) == 2
    p = check_E_C_D(G, {2, 3}, T)
    assert (p.E, p.C, p.D, p.class_count) == (True, False, False, 2)
    p = check_E_C_D(G, {3, 7}, T)
    assert (p.E, p.C, p.D) == (True, True, True)


@pytest.mark.parametrize("name, pi, expected", [
    ("A5", {2, 3}, (True, True, False)),  # A4; S3 lies in no A4
    ("A5", {3, 5}, (False, False, False)),
    ("A5", {2, 5}, (False, False, False)),
    ("PSL(2,8)", {2, 7}, (True, True, False)),
    ("PGL(2,7)", {2, 3}, (False, False, False)),
    ("PGL(2,7)", {3, 7}, (True, True, True)),
])
def test_hall_properties(name, pi, expected):
    p = check_E_C_D(construct(name), pi)
    assert (p.E, p.C, p.D) == expected


def test_sylow_and_trivial_cases():
    G = construct("A6")
    assert check_E_C_D(G, {3}).witness.order == 9
    assert check_E_C_D(G, {7}).E and check_E_C_D(G, {7}).witness.order == 1
    assert check_E_C_D(G, {2, 3, 5}).witness.order == 360


def test_three_primes_scope():
    G = construct("PSL(2,31)")
    with pytest.raises(ScopeError):
        hall_conjugacy_classes(G, {2, 3, 5})
    p = check_E_C_D(G, {3, 5, 31})
    assert p.E and p.C is None and p.witness.order == 465


@pytest.mark.parametrize("name, naive", [
    ("A5", True), ("PSL(2,7)", True), ("PGL(2,7)", False), ("PSL(2,8)", False),
])
def test_brute_force_hall_existence(name, naive):
    """Hall search agrees with the list of all subgroup orders.

    Groups of order p^a q^b are soluble, so for the larger groups the
    soluble subgroups from cyclic extension already contain every
    candidate."""
    G = construct(name)
    T = ElementTable(G)
    if naive:
        orders = {len(H) for H in naive_subgroups(T)}
    else:
        orders = {c.order for c in CyclicExtension(T).all_classes()}
    for pi in itertools.combinations(prime_spectrum(G.order()), 2):
        target = pi_part(G.order(), pi)
        assert (find_hall_subgroup(G, pi, T) is not None) == (target in orders)


# normal structure -------------------------------------------------------------

def test_simplicity():
    assert is_simple(construct("A5"))
    assert is_simple(construct("PSL(2,7)"))
    assert not is_simple(construct("PGL(2,7)"))


def test_pgl27_normal_structure():
    H = construct("PGL(2,7)")
    assert [N.order for N in normal_subgroups(H)] == [1, 168, 336]
    assert composition_factor_orders(H) == [2, 168]
    N = normal_closure(H, [H.generators[0]])
    assert N.order in (168, 336)


def test_format_cycles_starts_at_least_point():
    assert format_cycles((1, 2, 0, 4, 3)) == "(1 2 3)(4 5)"

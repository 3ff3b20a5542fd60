import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rfring.groups import (GroupError, NotAHomomorphism, SizeCapError, check_group_axioms,
                           conjugacy_classes, cycle_string, direct_product, element_order,
                           from_permutations, hom, make_cyclic, parse_cycles, perm_from_cycles)


def brute_classes(G):
    """Conjugation orbits by direct search."""
    seen, out = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        orb = {int(G.mul[G.mul[G.inv[g], x], g]) for g in range(G.order)}
        seen |= orb
        out.append(orb)
    return out


def brute_order(G, x):
    k, y = 1, x
    while y != 0:
        y = int(G.mul[y, x])
        k += 1
    return k


def test_cyclic_examples():
    assert make_cyclic(1).order == 1
    assert list(make_cyclic(4).element_orders) == [1, 4, 2, 4]
    assert sorted(make_cyclic(6).element_orders) == sorted([1, 6, 3, 2, 3, 6])
    C4 = make_cyclic(4)
    assert C4.labels[1] == "g"
    assert C4.mul[3, 2] == 1


def test_cap():
    with pytest.raises(SizeCapError):
        make_cyclic(2001)
    with pytest.raises(SizeCapError):
        direct_product(make_cyclic(50), make_cyclic(50))
    assert make_cyclic(30, cap=30).order == 30
    with pytest.raises(SizeCapError):
        from_permutations(6, ["(1 2)", "(1 2 3 4 5 6)"], cap=100)


def test_direct_products():
    K4 = direct_product(make_cyclic(2), make_cyclic(2))
    assert K4.order == 4 and set(K4.element_orders[1:]) == {2}
    G = from_permutations(3, ["(1 2)", "(1 2 3)"])
    P = direct_product(make_cyclic(1), G)
    assert np.array_equal(P.mul, G.mul)
    C6 = direct_product(make_cyclic(2), make_cyclic(3))
    assert sorted(C6.element_orders) == [1, 2, 3, 3, 6, 6]


def test_permutation_groups():
    assert from_permutations(3, ["(1 2)", "(1 2 3)"]).order == 6
    assert from_permutations(4, []).order == 1
    assert from_permutations(2, ["(1 2)"]).order == 2
    assert from_permutations(5, ["(1 2 3 4 5)", "(1 2)"]).order == 120
    with pytest.raises(GroupError):
        from_permutations(3, ["(1 4)"])


def test_permutation_determinism():
    a = from_permutations(4, ["(1 2)", "(1 2 3 4)"])
    b = from_permutations(4, ["(1 2)", "(1 2 3 4)"])
    assert a.labels == b.labels
    assert np.array_equal(a.mul, b.mul)


def test_cycle_notation_round_trip():
    p = perm_from_cycles(5, parse_cycles("(1 3 5)(2 4)"))
    assert cycle_string(p) == "(1 3 5)(2 4)"
    assert cycle_string(tuple(range(5))) == "()"


def test_left_to_right_composition():
    S3 = from_permutations(3, ["(1 2)", "(1 2 3)"])
    a, b = S3.element("(1 2)"), S3.element("(1 2 3)")
    # apply (1 2) then (1 2 3): 1 -> 2 -> 3, 3 -> 3 -> 1, 2 -> 1 -> 2
    assert S3.labels[S3.mul[a, b]] == "(1 3)"


def test_homs():
    C2, C4, C6 = make_cyclic(2), make_cyclic(4), make_cyclic(6)
    f = hom(C2, C4, {"g": "g^2"})
    assert f.injective and list(f.image) == [0, 2]
    assert hom(C2, C6, {"g": "g^3"}).injective
    with pytest.raises(NotAHomomorphism) as err:
        hom(C2, C4, {"g": "g"})
    assert err.value.witness is not None
    assert not hom(C4, C2, {"g": "g"}).injective


def test_hom_composition_and_orders():
    C2, C4 = make_cyclic(2), make_cyclic(4)
    S4 = from_permutations(4, ["(1 2)", "(1 2 3 4)"])
    f = hom(C2, C4, {"g": "g^2"})
    g = hom(C4, S4, {"g": "(1 2 3 4)"})
    h = f.compose(g)
    assert h.source is C2 and h.target is S4
    assert S4.labels[h.image[1]] == "(1 3)(2 4)"
    for F in (f, g, h):
        for x in range(F.source.order):
            assert element_order(F.source, x) % element_order(F.target, int(F.image[x])) == 0


def test_conjugacy_examples():
    S3 = from_permutations(3, ["(1 2)", "(1 2 3)"])
    cc = conjugacy_classes(S3)
    assert sorted(cc.sizes) == [1, 2, 3]
    assert cc.sizes == (1, 3, 2)
    C4 = make_cyclic(4)
    cc = C4.classes
    assert cc.count == 4
    g = cc.class_of[C4.element("g")]
    assert cc.power(g, 2) == cc.class_of[C4.element("g^2")]


def test_element_order_examples():
    C6 = make_cyclic(6)
    assert element_order(C6, 0) == 1
    assert element_order(C6, "g") == 6
    assert element_order(C6, "g^3") == 2


GROUPS = [
    lambda: make_cyclic(7),
    lambda: direct_product(make_cyclic(2), make_cyclic(6)),
    lambda: from_permutations(4, ["(1 2 3)", "(1 2)(3 4)"]),
    lambda: from_permutations(4, ["(1 2)", "(1 2 3 4)"]),
    lambda: from_permutations(8, ["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
    lambda: from_permutations(5, ["(1 2 3 4 5)", "(2 5)(3 4)"]),
]


@pytest.mark.parametrize("make", GROUPS)
def test_axioms_and_classes_against_brute_force(make):
    G = make()
    assert check_group_axioms(G, full=True)
    cc = G.classes
    assert sum(cc.sizes) == G.order
    assert all(G.order % s == 0 for s in cc.sizes)
    assert sorted(map(frozenset, brute_classes(G)), key=min) == \
        [frozenset(c) for c in cc.classes]
    for c, members in enumerate(cc.classes):
        assert cc.reps[c] == min(members)
        assert {brute_order(G, x) for x in members} == {cc.elt_order[c]}
        assert cc.power(c, 1) == c
        for k in range(G.exponent):
            assert cc.power_map[c, k] == cc.class_of[G.power(cc.reps[c], k)]


def test_structure_constants_count_products():
    G = from_permutations(4, ["(1 2)", "(1 2 3 4)"])
    cc = G.classes
    a = cc.structure_constants
    for i, j, k in itertools.product(range(cc.count), repeat=3):
        z = cc.reps[k]
        n = sum(1 for x in cc.classes[i] if cc.class_of[G.mul[G.inv[x], z]] == j)
        assert a[i, j, k] == n


def test_quaternion_has_one_involution():
    Q8 = from_permutations(8, ["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"])
    assert Counter(Q8.element_orders.tolist()) == {1: 1, 2: 1, 4: 6}
    assert not Q8.is_abelian


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(1, 12))
def test_cyclic_products_are_groups(n, m):
    G = direct_product(make_cyclic(n), make_cyclic(m))
    assert check_group_axioms(G, full=G.order <= 80)
    assert G.is_abelian and G.classes.count == G.order
    assert G.exponent == np.lcm(n, m)


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_random_permutation_groups(p, q):
    gens = ["(" + " ".join(map(str, p)) + ")", "(" + " ".join(map(str, q)) + ")"]
    G = from_permutations(5, gens)
    assert 120 % G.order == 0
    assert check_group_axioms(G, full=G.order <= 60)
    assert sum(G.classes.sizes) == G.order

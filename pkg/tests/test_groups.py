from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudosolvable import cyclo
from pseudosolvable.fplinear import MatrixRep
from pseudosolvable.graph import SimpleGraph
from pseudosolvable.groups import (
    CapExceeded,
    GroupFormatError,
    PermKind,
    SemidirectSpec,
    a5,
    brute_force_semidirect,
    closure,
    find_epimorphism,
    match_classes,
    parse_group,
    prime_factors,
    prime_graph,
    semidirect_prime_graph,
    sl25,
    two_s5,
)
from pseudosolvable.heads import head_rep


def edges(g: SimpleGraph) -> set[frozenset]:
    return {frozenset(e) for e in g.edge_list()}


@given(st.integers(1, 10**6))
def test_prime_factors_multiply_back(n):
    ps = prime_factors(n)
    assert ps == sorted(set(ps))
    m = n
    for p in ps:
        while m % p == 0:
            m //= p
    assert m == 1


def test_head_orders():
    assert (a5().order, sl25().order, two_s5().order) == (60, 120, 240)


def test_known_prime_graphs():
    assert edges(prime_graph(a5())) == set()
    assert prime_graph(a5()).vertices == ("2", "3", "5")
    want = {frozenset(("2", "3")), frozenset(("2", "5"))}
    assert edges(prime_graph(sl25())) == want
    assert edges(prime_graph(two_s5())) == want


@pytest.mark.parametrize("factory", [a5, sl25, two_s5])
def test_classes_partition_and_match_table(factory):
    g = factory()
    classes = g.classes
    assert sum(c.size for c in classes) == g.order
    assert set().union(*(c.members for c in classes)) == set(range(g.order))
    table = cyclo.load_table(g.name)
    cols = match_classes(g, table)
    assert sorted(cols) == list(range(len(table.classes)))
    for c in classes:
        col = table.classes[cols[c.index]]
        assert (c.order, c.size) == (col.order, col.size)


def test_two_s5_class_order_profile():
    g = two_s5()
    table = cyclo.load_table("TwoS5")
    header = [c.order for c in table.classes]
    assert header == [1, 6, 2, 3, 6, 5, 4, 8, 10, 8, 6, 2]
    assert Counter(c.order for c in g.classes) == Counter(header)


def test_power_maps_agree_with_element_powers():
    g = sl25()
    for c in g.classes:
        x = c.representative
        for k in range(c.order):
            assert g.class_of[g.power(x, k)] == c.power_map[k]


def test_epimorphism_sl25_onto_a5():
    imgs = find_epimorphism(sl25(), a5())
    big, small = sl25(), a5()
    proj = big.homomorphism_images([small.elements[i] for i in imgs], small.kind.mul, small.elements[0])
    kernel = [i for i, x in enumerate(proj) if x == small.elements[0]]
    assert len(kernel) == 2


def test_closure_cap():
    with pytest.raises(CapExceeded):
        closure(PermKind(6), [(1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)], cap=100)


def test_parse_perm_and_mat_groups():
    g = parse_group("perm 5\n(1 2 3 4 5)\n(1 2 3)\n")
    assert g.order == 60
    s = parse_group("mat 2 mod 5\n1 1\n0 1\n\n0 4\n1 0\n")
    assert s.order == 120
    assert edges(prime_graph(s)) == {frozenset(("2", "3")), frozenset(("2", "5"))}


@pytest.mark.parametrize(
    "text",
    ["", "perm 3\n(1 4)\n", "perm 3\n(1 2) x\n", "mat 2 mod 5\n1 1 1\n0 1\n", "grp 3\n"],
)
def test_parse_group_errors(text):
    with pytest.raises(GroupFormatError):
        parse_group(text)


def test_semidirect_trivial_module_joins_everything():
    spec = SemidirectSpec(head_rep("t1", 61), a5())
    g = semidirect_prime_graph(spec)
    assert edges(g) == {frozenset(("61", p)) for p in ("2", "3", "5")}
    assert brute_force_semidirect(spec) == g


def test_semidirect_rejects_dividing_characteristic():
    with pytest.raises(ValueError):
        SemidirectSpec(MatrixRep("A5", "x", 5, head_rep("t1", 61).gens), a5())


def test_brute_force_respects_cap():
    spec = SemidirectSpec(head_rep("t4", 7), a5())
    with pytest.raises(CapExceeded):
        brute_force_semidirect(spec, cap=1000)

from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudosolvable import cyclo
from pseudosolvable.cyclo import I_SQRT2, I_SQRT3, SQRT5, CharacterTableError, Cyclotomic, parse_value

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
elements = st.dictionaries(st.integers(0, 119), coeff, max_size=4).map(Cyclotomic.from_exponents)


def test_named_surds_square_correctly():
    assert SQRT5 * SQRT5 == 5
    assert I_SQRT3 * I_SQRT3 == -3
    assert I_SQRT2 * I_SQRT2 == -2


def test_zeta_has_order_120():
    z = Cyclotomic.zeta()
    p = Cyclotomic.rational(1)
    for k in range(1, 121):
        p = p * z
        assert (p == 1) == (k == 120)


def test_complex_embedding_matches():
    assert abs(complex(SQRT5) - 5**0.5) < 1e-12
    assert abs(complex(Cyclotomic.zeta(7)) - cmath.exp(2j * cmath.pi * 7 / 120)) < 1e-12


def test_galois_action_sends_sqrt5_to_minus():
    assert SQRT5.galois(7) == -SQRT5
    assert SQRT5.galois(11) == SQRT5


def test_parse_value_expressions():
    assert parse_value("(1+s5)/2") + parse_value("(1-s5)/2") == 1
    assert parse_value("-1/2").to_fraction() == Fraction(-1, 2)
    with pytest.raises(ValueError):
        parse_value("import os")


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a - a == 0


@given(elements)
def test_conjugation_is_an_involution_and_norm_is_real(a):
    assert a.conj().conj() == a
    norm = a * a.conj()
    assert abs(complex(norm).imag) < 1e-9


@pytest.mark.parametrize("group", cyclo.GROUPS)
def test_tables_validate_and_orthogonality_is_exact(group):
    table = cyclo.load_table(group)
    table.validate()
    for i, chi in enumerate(table.characters):
        for j, psi in enumerate(table.characters):
            s = Cyclotomic()
            for c, a, b in zip(table.classes, chi, psi):
                s = s + a * b.conj() * c.size
            assert s == (table.order if i == j else 0)


def test_corrupted_table_is_rejected():
    import dataclasses

    table = cyclo.load_table("A5")
    rows = list(table.characters)
    rows[1] = tuple(v + 1 if k == 2 else v for k, v in enumerate(rows[1]))
    with pytest.raises(CharacterTableError):
        dataclasses.replace(table, characters=tuple(rows)).validate()


@pytest.mark.parametrize("group", cyclo.GROUPS)
def test_fixed_point_tables_match_expected(group):
    assert cyclo.fixed_point_table(group) == cyclo.expected_pattern(group)


def test_fixed_space_dim_worked_values():
    a5 = cyclo.load_table("A5")
    # 4-dimensional rep fixes a 2-dim space under an involution, nothing under a 5-cycle
    assert cyclo.fixed_space_dim(a5, "t4", 1) == 2
    assert cyclo.fixed_space_dim(a5, "t4", 3) == 0
    with pytest.raises(KeyError):
        cyclo.fixed_space_dim(a5, "t9", 0)


def test_fixed_point_free_primes_and_pattern_assignment():
    assert cyclo.fixed_point_free_primes("A5", "t1") == frozenset()
    assert cyclo.fixed_point_free_primes("SL25", "rho2") == frozenset({2, 3, 5})
    figs = cyclo.assigned_patterns()
    assert figs[("A5", "t4")] == "F1b"
    assert figs[("SL25", "rho9")] == "F2e"
    assert figs[("TwoS5", "gamma3")] == "F3c"
    assert len(figs) == 10


def test_unknown_group_raises():
    with pytest.raises(KeyError):
        cyclo.load_table("M11")

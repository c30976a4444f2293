import math

import pytest
from hypothesis import given, strategies as st

from reczoo.errors import (
    AlreadyHasZero,
    IndexOutOfRange,
    NotAGroup,
    NotAssociative,
    NotInvertible,
    ParseError,
    SizeTooLargeForExhaustive,
    UnitLawFails,
)
from reczoo.monoid import (
    M3,
    TRIVIAL,
    MorphismSpec,
    adjoin_zero,
    canonical_form,
    catalog,
    cyclic_group,
    cyclic_monoid,
    direct_product,
    divisible_elements,
    element_order,
    enumerate_small_monoids,
    find_zero,
    format_cay,
    idempotents,
    invert,
    is_group,
    lasso,
    omega_power,
    parse_cay,
    unit_group,
    validate_monoid,
)
from reczoo.errors import GeneratorNotInvertible

UNIT, P, ZERO = 0, 1, 2
CATALOG = catalog()
GROUPS = [M for M in CATALOG if is_group(M)]
NO_ZERO = [M for M in CATALOG if find_zero(M) is None]

catalog_elements = st.sampled_from(CATALOG).flatmap(
    lambda M: st.tuples(st.just(M), st.integers(0, M.size - 1)))


# validation

def test_trivial_table_is_valid():
    M = validate_monoid(1, 0, [[0]])
    assert M.size == 1 and M.unit == 0


def test_m3_table_is_valid():
    M = validate_monoid(3, 0, [[0, 1, 2], [1, 2, 2], [2, 2, 2]])
    assert M.table == M3.table


def test_broken_unit_row_rejected():
    with pytest.raises(UnitLawFails):
        validate_monoid(2, 0, [[0, 0], [1, 1]])


def test_non_associative_rejected():
    # (1*1)*1 = 2*1 = 2 but 1*(1*1) = 1*2 = 0
    with pytest.raises(NotAssociative):
        validate_monoid(3, 0, [[0, 1, 2], [1, 2, 0], [2, 2, 1]])


def test_out_of_range_entry_rejected():
    with pytest.raises(IndexOutOfRange):
        validate_monoid(2, 0, [[0, 1], [1, 5]])


# idempotents, zero, units

def test_idempotents_examples():
    assert idempotents(TRIVIAL) == {0}
    assert idempotents(M3) == {UNIT, ZERO}
    assert idempotents(cyclic_group(3)) == {0}


def test_find_zero_examples():
    assert find_zero(M3) == ZERO
    assert find_zero(cyclic_group(2)) is None
    assert find_zero(TRIVIAL) is None


def test_adjoin_zero_examples():
    two = adjoin_zero(TRIVIAL)
    assert two.size == 2 and find_zero(two) == 1
    z2 = adjoin_zero(cyclic_group(2))
    assert z2.size == 3 and idempotents(z2) == {0, 2}
    with pytest.raises(AlreadyHasZero):
        adjoin_zero(M3)


def test_inverses_and_orders():
    z4 = cyclic_group(4)
    assert invert(z4, 1) == 3
    assert element_order(z4, 1) == 4
    assert element_order(z4, 2) == 2
    with pytest.raises(NotInvertible):
        invert(M3, P)
    with pytest.raises(NotAGroup):
        element_order(M3, UNIT)
    assert unit_group(M3) == {UNIT}


# omega power and divisible elements

def test_omega_examples():
    assert omega_power(M3, P) == ZERO
    assert omega_power(cyclic_group(3), 1) == 0
    for M in (M3, cyclic_group(5), cyclic_monoid(2, 3)):
        assert omega_power(M, M.unit) == M.unit


def test_lasso_of_p_in_m3():
    assert lasso(M3, P) == (2, 3)


def test_divisible_examples():
    assert divisible_elements(M3) == {UNIT, ZERO}
    assert divisible_elements(TRIVIAL) == {0}
    assert divisible_elements(cyclic_group(2)) == {0}


# products

def test_product_with_trivial_is_same_table():
    for M in (M3, cyclic_group(3)):
        assert direct_product(M, TRIVIAL).table == M.table


def test_klein_four():
    V = direct_product(cyclic_group(2), cyclic_group(2))
    assert V.size == 4
    assert all(V.mul(x, x) == V.unit for x in range(4))


def test_m3_times_z2_has_no_zero():
    assert find_zero(direct_product(M3, cyclic_group(2))) is None


# catalog

def test_catalog_strata():
    assert len(enumerate_small_monoids(1)) == 1
    assert len(enumerate_small_monoids(2)) == 2
    assert len(enumerate_small_monoids(3)) == 7


def test_size_two_strata_are_group_and_semilattice():
    kinds = sorted(is_group(M) for M in enumerate_small_monoids(2))
    assert kinds == [False, True]


def test_m3_in_catalog():
    assert any(canonical_form(M) == canonical_form(M3) for M in CATALOG)


def test_catalog_cap():
    with pytest.raises(SizeTooLargeForExhaustive):
        catalog(4)


def test_catalog_sizes_bounded():
    assert all(M.size <= 12 for M in CATALOG)


# .cay format

def test_cay_round_trip():
    text = format_cay(M3)
    assert parse_cay(text).table == M3.table


def test_cay_errors():
    with pytest.raises(ParseError):
        parse_cay("3\n0\n0 1 2\n1 2\n2 2 2\n")
    with pytest.raises(ParseError):
        parse_cay("2\n0\n0 x\n1 0\n")
    with pytest.raises(ParseError):
        parse_cay("2\n")


# morphism specs

def test_int_source_needs_unit_image():
    with pytest.raises(GeneratorNotInvertible):
        MorphismSpec("int", M3, (P,), {P})


def test_spec_evaluates_negative_powers():
    spec = MorphismSpec("int", cyclic_group(5), (2,), {0})
    assert spec.evaluate(-1) == 3
    assert spec.evaluate(7) == 4


# invariants over the catalog

@given(catalog_elements)
def test_omega_is_idempotent_factorial_power(pair):
    M, m = pair
    e = omega_power(M, m)
    assert M.mul(e, e) == e
    assert M.power(m, math.factorial(M.size)) == e


def test_divisible_elements_are_idempotent():
    for M in CATALOG:
        assert divisible_elements(M) <= idempotents(M)


@given(st.sampled_from(CATALOG[:40]), st.sampled_from(CATALOG[:40]))
def test_product_idempotents(M1, M2):
    P2 = direct_product(M1, M2)
    expected = {a * M2.size + b for a in idempotents(M1) for b in idempotents(M2)}
    assert idempotents(P2) == expected


def test_adjoined_zero_absorbs():
    for M in NO_ZERO:
        Z = adjoin_zero(M)
        z = find_zero(Z)
        assert z is not None
        assert all(Z.mul(z, m) == z == Z.mul(m, z) for m in range(Z.size))


def test_group_orders_divide_size():
    for G in GROUPS:
        for g in range(G.size):
            assert G.size % element_order(G, g) == 0

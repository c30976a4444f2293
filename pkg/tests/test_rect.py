import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from reczoo.additive import PER_FULL, UP_EMPTY, UP_FULL, per_set, up_intersect, up_mod, up_set, up_singleton
from reczoo.errors import BlowUpLimitExceeded, GeneratorNotInvertible, NonCommutativeGenerators, SignatureMismatch
from reczoo.monoid import M3, TRIVIAL, MorphismSpec, cyclic_group, direct_product, lasso, validate_monoid
from reczoo.rect import (
    Limits,
    RectUnion,
    SignSubset,
    direct_evaluate,
    empty_union,
    full_union,
    hom_preimage_to_rectangles,
    lasso_bound,
    make_rect_union,
    product_membership_oracle,
    rect_complement,
    rect_equal,
    rect_intersect,
    rect_is_empty,
    rect_member,
    rect_union,
)
from reczoo.registry import SymbolicSet

EVENS, ODDS, THREES = up_mod(2, {0}), up_mod(2, {1}), up_mod(3, {0})
NN = ("nat", "nat")


def grid(k, hi, lo=0):
    return product(range(lo, hi + 1), repeat=k)


@st.composite
def up_components(draw):
    n0 = draw(st.integers(0, 4))
    p = draw(st.integers(1, 4))
    return up_set(n0, p, draw(st.frozensets(st.integers(0, n0))), draw(st.frozensets(st.integers(0, p - 1))))


@st.composite
def nat_unions(draw, k):
    rects = draw(st.lists(st.tuples(*[up_components()] * k), max_size=3))
    return make_rect_union(("nat",) * k, rects)


# membership

def test_membership_examples():
    S = make_rect_union(NN, [(EVENS, UP_FULL), (UP_FULL, THREES)])
    assert rect_member(S, (4, 5))
    assert not rect_member(S, (3, 5))
    assert not rect_member(empty_union(NN), (0, 0))


def test_membership_arity_checked():
    with pytest.raises(SignatureMismatch):
        rect_member(full_union(NN), (1,))


def test_mixed_kinds():
    sig = ("nat", "int", "sign", "sym:mul:R")
    S = make_rect_union(sig, [(EVENS, per_set(3, {1}), SignSubset({-1}), SymbolicSet("mul:R", "nonnegative"))])
    assert rect_member(S, (2, -2, -1, 0))
    assert not rect_member(S, (2, -2, 1, 0))
    assert not rect_member(S, (2, -2, -1, -3))


def test_signature_enforced():
    with pytest.raises(SignatureMismatch):
        RectUnion(NN, [(EVENS, PER_FULL)])
    with pytest.raises(SignatureMismatch):
        rect_union(full_union(NN), full_union(("nat", "int")))
    with pytest.raises(SignatureMismatch):
        RectUnion(("real",), [])


# Boolean operations

def test_complement_example():
    comp = rect_complement(make_rect_union(NN, [(EVENS, UP_FULL)]))
    assert comp == make_rect_union(NN, [(ODDS, UP_FULL)])
    assert all(rect_member(comp, v) == (v[0] % 2 == 1) for v in grid(2, 20))


def test_union_with_empty_is_identity():
    S = make_rect_union(NN, [(EVENS, THREES), (ODDS, up_singleton(2))])
    assert rect_union(S, empty_union(NN)) == S


def test_empty_component_drops_rectangle():
    S = make_rect_union(NN, [(up_intersect(EVENS, ODDS), UP_FULL)])
    assert rect_is_empty(S)
    assert rect_equal(empty_union(NN), make_rect_union(NN, [(UP_EMPTY, UP_FULL)]))


def test_parity_cover_equals_full():
    S = make_rect_union(NN, [(EVENS, UP_FULL), (ODDS, UP_FULL)])
    assert rect_equal(S, full_union(NN))
    assert all(rect_member(S, v) for v in grid(2, 30))


def test_blow_up_limit():
    S = make_rect_union(NN, [(up_mod(p, {0}), up_mod(p, {1})) for p in range(2, 12)])
    with pytest.raises(BlowUpLimitExceeded):
        rect_complement(S, Limits(max_rects=4))


@given(nat_unions(2))
def test_intersection_with_complement_is_empty(S):
    assert rect_is_empty(rect_intersect(S, rect_complement(S)))


@given(nat_unions(2), nat_unions(2), nat_unions(2))
def test_boolean_laws_on_grid(A, B, C):
    left = rect_intersect(A, rect_union(B, C))
    right = rect_union(rect_intersect(A, B), rect_intersect(A, C))
    assoc1 = rect_union(rect_union(A, B), C)
    assoc2 = rect_union(A, rect_union(B, C))
    double = rect_complement(rect_complement(A))
    for v in grid(2, 20):
        assert rect_member(left, v) == rect_member(right, v)
        assert rect_member(assoc1, v) == rect_member(assoc2, v)
        assert rect_member(double, v) == rect_member(A, v)


@given(nat_unions(2), nat_unions(2))
def test_ops_pointwise(A, B):
    union, inter, comp = rect_union(A, B), rect_intersect(A, B), rect_complement(A)
    for v in grid(2, 20):
        a, b = rect_member(A, v), rect_member(B, v)
        assert rect_member(union, v) == (a or b)
        assert rect_member(inter, v) == (a and b)
        assert rect_member(comp, v) == (not a)


@given(nat_unions(2), nat_unions(2), nat_unions(2))
def test_equality_is_equivalence(A, B, C):
    assert rect_equal(A, A)
    assert rect_equal(A, B) == rect_equal(B, A)
    if rect_equal(A, B) and rect_equal(B, C):
        assert rect_equal(A, C)
    assert rect_equal(A, rect_union(A, rect_intersect(A, B)))


@given(nat_unions(3))
def test_normalized_has_no_empty_component(S):
    for r in rect_complement(S).rects:
        assert not any(c.is_empty() for c in r)


# constructive direction

def test_parity_preimage():
    S = hom_preimage_to_rectangles(cyclic_group(2), (1, 1), {0}, NN)
    expected = make_rect_union(NN, [(EVENS, EVENS), (ODDS, ODDS)])
    assert rect_equal(S, expected)
    assert all(rect_member(S, v) == ((v[0] + v[1]) % 2 == 0) for v in grid(2, 6))


def test_full_accepting_gives_full_rectangle():
    S = hom_preimage_to_rectangles(cyclic_group(3), (1, 2), {0, 1, 2}, NN)
    assert rect_equal(S, full_union(NN))


def test_m3_singleton_preimage():
    S = hom_preimage_to_rectangles(M3, (1,), {1}, ("nat",))
    assert S.rects == ((up_singleton(1),),)


def test_preimage_errors():
    with pytest.raises(GeneratorNotInvertible):
        hom_preimage_to_rectangles(M3, (1,), {1}, ("int",))
    # left-zero band {1, a, b}: ab = a, ba = b
    N = validate_monoid(3, 0, [[0, 1, 2], [1, 1, 1], [2, 2, 2]])
    with pytest.raises(NonCommutativeGenerators):
        hom_preimage_to_rectangles(N, (1, 2), {1}, NN)


def test_oracle_trivial_and_empty():
    triv = MorphismSpec("nat", TRIVIAL, (0,), {0})
    none = MorphismSpec("nat", cyclic_group(2), (1,), set())
    assert all(product_membership_oracle([triv, triv], v) for v in grid(2, 5))
    assert not any(product_membership_oracle([none, triv], v) for v in grid(2, 5))


def test_preimage_matches_oracle_randomized():
    rng = random.Random(7)
    targets = [cyclic_group(2), cyclic_group(3), M3, direct_product(M3, cyclic_group(2))]
    for _ in range(30):
        M = rng.choice(targets)
        k = rng.randint(1, 3)
        images = [rng.randrange(M.size) for _ in range(k)]
        acc = {e for e in range(M.size) if rng.random() < 0.5}
        S = hom_preimage_to_rectangles(M, images, acc, ("nat",) * k)
        hi = lasso_bound(M, images)
        for v in grid(k, min(hi, 12)):
            assert rect_member(S, v) == direct_evaluate(M, images, acc, v)


def test_int_coordinates_match_direct_evaluation():
    G = cyclic_group(4)
    S = hom_preimage_to_rectangles(G, (1, 2), {1, 3}, ("int", "nat"))
    for v in product(range(-8, 9), range(0, 9)):
        assert rect_member(S, v) == direct_evaluate(G, (1, 2), {1, 3}, v)


def test_lasso_bound():
    assert lasso_bound(M3, (1,)) == lasso(M3, 1)[0] + 3
    assert lasso_bound(cyclic_group(2), (1, 1)) == 6

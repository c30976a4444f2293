import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reczoo.additive import UP_FULL, per_set, up_mod, up_singleton
from reczoo.errors import DomainMismatch, InvalidPartition, NonPositive, ParseError, ZeroInput
from reczoo.rect import SIGN_FULL, SignSubset, hom_preimage_to_rectangles, make_rect_union, rect_equal
from reczoo.monoid import cyclic_group
from reczoo.sequences import (
    ExpSeq,
    RecSeqSet,
    format_rational,
    nat_factorize,
    nat_member,
    nat_recompose,
    nth_prime,
    one_class,
    parse_rational,
    partition,
    prime_index,
    project,
    pullback_quotient,
    rat_factorize,
    rat_member,
    rat_recompose,
    recseq_complement,
    recseq_empty,
    recseq_equal,
    recseq_from_constraints,
    recseq_full,
    recseq_intersect,
    recseq_is_empty,
    recseq_member,
    recseq_union,
    refine,
    seq,
    seq_add,
    seq_neg,
    sigma,
    signed_member,
    signed_rational_rec,
)

EVENS = up_mod(2, {0})
V2_EVEN = recseq_from_constraints({1: EVENS})


def exp_seqs(domain="nat", max_len=8, lo=None, hi=4):
    lo = (0 if domain == "nat" else -hi) if lo is None else lo
    return st.lists(st.integers(lo, hi), max_size=max_len).map(lambda xs: ExpSeq(tuple(xs), domain))


@st.composite
def partitions(draw, domain="nat"):
    k = draw(st.integers(1, 4))
    positions = draw(st.lists(st.integers(1, 10), unique=True, max_size=6))
    classes = [draw(st.integers(0, k - 1)) for _ in positions]
    default = draw(st.integers(0, k - 1))
    used = set(classes) | {default}
    remap = {c: n for n, c in enumerate(sorted(used))}
    return partition(len(used), remap[default], {p: remap[c] for p, c in zip(positions, classes)}, domain)


# sequences

def test_trailing_zeros_trimmed():
    assert seq(1, 0, 0).entries == (1,)
    assert len(seq()) == 0


def test_nat_rejects_negative_entries():
    with pytest.raises(DomainMismatch):
        seq(1, -1)


def test_sigma():
    assert sigma(3).entries == (0, 0, 1)
    assert sigma(-2, "int").entries == (0, -1)
    assert sigma(0).entries == ()
    with pytest.raises(DomainMismatch):
        sigma(-1)


def test_add_requires_same_domain():
    with pytest.raises(DomainMismatch):
        seq_add(seq(1), seq(1, domain="int"))


def test_negation():
    assert seq_neg(seq(1, -2, domain="int")).entries == (-1, 2)


@given(exp_seqs("int"), exp_seqs("int"), exp_seqs("int"))
def test_addition_is_a_commutative_monoid(a, b, c):
    unit = ExpSeq((), "int")
    assert seq_add(a, b) == seq_add(b, a)
    assert seq_add(seq_add(a, b), c) == seq_add(a, seq_add(b, c))
    assert seq_add(a, unit) == a
    assert seq_add(a, seq_neg(a)) == unit


@given(exp_seqs(), exp_seqs())
def test_nat_addition_laws(a, b):
    assert seq_add(a, b) == seq_add(b, a)
    assert seq_add(a, ExpSeq(())) == a


# partitions

def test_project_example():
    part = partition(2, 0, {2: 1, 6: 1})
    assert project(part, seq_add(sigma(3), sigma(6))) == (1, 1)
    assert project(part, seq()) == (0, 0)
    assert project(one_class(), seq(2, 0, 5)) == (7,)


def test_partition_validation():
    with pytest.raises(InvalidPartition):
        partition(2, 0, {0: 1})
    with pytest.raises(InvalidPartition):
        partition(2, 0, {-3: 1})
    with pytest.raises(InvalidPartition):
        partition(3, 0, {2: 1})  # class 2 empty
    with pytest.raises(InvalidPartition):
        partition(2, 0, {3: 1, -3: 0}, "int")


def test_int_partition_keys_by_position():
    part = partition(2, 0, {-4: 1}, "int")
    assert part.class_of(4) == part.class_of(-4) == 1


def test_refine_example():
    p1 = partition(2, 1, {2: 0})
    p2 = partition(2, 1, {3: 0})
    part, h1, h2 = refine(p1, p2)
    assert part.k == 3
    classes = {part.class_of(2), part.class_of(3), part.class_of(7)}
    assert len(classes) == 3


@given(partitions(), partitions(), exp_seqs(max_len=12))
def test_refinement_sound(p1, p2, s):
    part, h1, h2 = refine(p1, p2)
    fine = project(part, s)
    for coarse_part, h in ((p1, h1), (p2, h2)):
        summed = [0] * coarse_part.k
        for cls, x in enumerate(fine):
            summed[h[cls]] += x
        assert tuple(summed) == project(coarse_part, s)


@given(partitions("int"), exp_seqs("int"), exp_seqs("int"))
def test_project_is_a_morphism(part, a, b):
    pa, pb = project(part, a), project(part, b)
    assert project(part, seq_add(a, b)) == tuple(x + y for x, y in zip(pa, pb))


# pullback

def test_split_evens_over_two_coordinates():
    R = make_rect_union(("nat",), [(EVENS,)])
    fine = pullback_quotient(R, (0, 0))
    odds = up_mod(2, {1})
    assert rect_equal(fine, make_rect_union(("nat", "nat"), [(EVENS, EVENS), (odds, odds)]))


def test_split_identity_and_full():
    R = make_rect_union(("nat",), [(up_singleton(3),)])
    assert pullback_quotient(R, (0,)) == R
    full = make_rect_union(("nat",), [(UP_FULL,)])
    assert rect_equal(pullback_quotient(full, (0, 0, 0)), make_rect_union(("nat",) * 3, [(UP_FULL,) * 3]))


def test_split_against_hom_preimage():
    R = make_rect_union(("nat",), [(EVENS,)])
    direct = hom_preimage_to_rectangles(cyclic_group(2), (1, 1), {0}, ("nat", "nat"))
    assert rect_equal(pullback_quotient(R, (0, 0)), direct)


# recognizable sets of sequences

def test_member_examples():
    S = recseq_from_constraints({1: EVENS})
    assert recseq_member(S, seq_add(sigma(1), sigma(1)))
    assert not recseq_member(S, sigma(1))
    assert not any(recseq_member(recseq_empty(), s) for s in (seq(), seq(1), seq(0, 3)))
    assert all(recseq_member(recseq_full(), s) for s in (seq(), seq(1), seq(0, 3)))


def test_member_domain_checked():
    with pytest.raises(DomainMismatch):
        recseq_member(recseq_full("int"), seq(1))


def test_intersection_example():
    v3_mult3 = recseq_from_constraints({2: up_mod(3, {0})})
    both = recseq_intersect(V2_EVEN, v3_mult3)
    assert not nat_member(both, 72)  # 2^3 * 3^2
    assert nat_member(both, 4 * 27)


def test_union_with_empty_unchanged():
    rng = random.Random(3)
    U = recseq_union(V2_EVEN, recseq_empty())
    for _ in range(100):
        s = ExpSeq(tuple(rng.randrange(4) for _ in range(rng.randrange(6))))
        assert recseq_member(U, s) == recseq_member(V2_EVEN, s)


def test_equality_examples():
    redundant = RecSeqSet(partition(3, 0, {1: 1, 5: 2}),
                          make_rect_union(("nat",) * 3, [(UP_FULL, EVENS, UP_FULL)]))
    assert recseq_equal(V2_EVEN, redundant)
    assert recseq_equal(V2_EVEN, recseq_union(V2_EVEN, recseq_empty()))
    one = RecSeqSet(one_class(), make_rect_union(("nat",), [(up_singleton(1),)]))
    assert not recseq_equal(one, recseq_empty())
    assert recseq_member(one, sigma(4))


def test_complement():
    comp = recseq_complement(V2_EVEN)
    assert nat_member(comp, 2) and not nat_member(comp, 12)
    assert recseq_is_empty(recseq_intersect(V2_EVEN, comp))


@given(exp_seqs(max_len=6))
def test_boolean_ops_pointwise(s):
    other = recseq_from_constraints({2: up_mod(3, {1})}, rest=up_mod(2, {1}))
    a, b = recseq_member(V2_EVEN, s), recseq_member(other, s)
    assert recseq_member(recseq_union(V2_EVEN, other), s) == (a or b)
    assert recseq_member(recseq_intersect(V2_EVEN, other), s) == (a and b)
    assert recseq_member(recseq_complement(other), s) == (not b)


# factorization

def test_factorize_examples():
    assert nat_factorize(1).entries == ()
    assert nat_factorize(12).entries == (2, 1)
    assert rat_factorize(Fraction(8, 9)).entries == (3, -2)
    assert rat_factorize(1).entries == ()


def test_factorize_errors():
    with pytest.raises(NonPositive):
        nat_factorize(0)
    with pytest.raises(NonPositive):
        rat_factorize(Fraction(-1, 2))


def test_prime_positions():
    assert prime_index(2) == 1 and prime_index(13) == 6
    assert nth_prime(1) == 2 and nth_prime(6) == 13
    with pytest.raises(ValueError):
        prime_index(12)


def test_nat_member_examples():
    assert nat_member(V2_EVEN, 12)
    assert not nat_member(V2_EVEN, 8)
    assert nat_member(V2_EVEN, 1)


@given(st.integers(1, 10**4), st.integers(1, 10**4))
def test_nat_factorization_is_multiplicative(m, n):
    assert nat_factorize(m * n) == seq_add(nat_factorize(m), nat_factorize(n))
    assert nat_recompose(nat_factorize(m)) == m


bounded_rationals = st.builds(Fraction, st.integers(1, 10**4), st.integers(1, 10**4))


@given(bounded_rationals, bounded_rationals)
def test_rat_factorization_is_multiplicative(q, r):
    assert rat_factorize(q * r) == seq_add(rat_factorize(q), rat_factorize(r))
    assert rat_recompose(rat_factorize(q)) == q


def test_rat_member_domain():
    with pytest.raises(DomainMismatch):
        rat_member(V2_EVEN, Fraction(1, 2))


# signed rationals

def test_signed_examples():
    neg_only = signed_rational_rec(recseq_full("int"), SignSubset({-1}))
    assert signed_member(neg_only, Fraction(-3, 4))
    assert not signed_member(neg_only, Fraction(3, 4))
    v2 = recseq_from_constraints({1: per_set(2, {0})}, domain="int")
    pos_v2_even = signed_rational_rec(v2, SignSubset({1}))
    assert signed_member(pos_v2_even, Fraction(4, 9))
    assert not signed_member(pos_v2_even, Fraction(2, 9))
    with pytest.raises(ZeroInput):
        signed_member(pos_v2_even, 0)
    assert signed_member(pos_v2_even | neg_only, Fraction(-2, 9))
    assert signed_member(signed_rational_rec(v2, SIGN_FULL), Fraction(-1, 4))


def test_rational_text():
    assert parse_rational(" 8/9 ") == Fraction(8, 9)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    with pytest.raises(ParseError):
        parse_rational("1/0")

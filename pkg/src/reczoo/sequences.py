"""Exponent sequences under pointwise addition and their recognizable subsets.

``N*`` (domain ``"nat"``) is the monoid of finite sequences of naturals; it is
isomorphic to the positive integers under multiplication via prime
exponents.  ``Z*`` (domain ``"int"``) allows negative entries and matches the
positive rationals.  Positions are 1-based: position ``i`` holds the
exponent of the ``i``-th prime (2 is position 1).

A recognizable subset is stored as a :class:`RecSeqSet`: a finite-index
partition of positions together with a rectangle union over the quotient
``N^k`` (or ``Z^k``).  Membership projects the sequence by summing entries
class by class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product, zip_longest
from typing import Iterable, Mapping, Sequence

from sympy import factorint, sieve

from .additive import per_to_syntactic_morphism, up_to_syntactic_morphism
from .errors import DomainMismatch, InvalidPartition, NonPositive, ZeroInput
from .rect import (
    RectUnion,
    SignSubset,
    empty_union,
    full,
    full_union,
    hom_preimage_to_rectangles,
    make_rect_union,
    rect_complement,
    rect_equal,
    rect_intersect,
    rect_is_empty,
    rect_member,
    rect_union,
)

DOMAINS = ("nat", "int")


def _check_domain(domain):
    if domain not in DOMAINS:
        raise DomainMismatch(f"unknown domain {domain!r}")
    return domain


@dataclass(frozen=True)
class ExpSeq:
    entries: tuple
    domain: str = "nat"

    def __post_init__(self):
        _check_domain(self.domain)
        entries = list(map(int, self.entries))
        while entries and entries[-1] == 0:
            entries.pop()
        if self.domain == "nat" and entries and min(entries) < 0:
            raise DomainMismatch(f"negative entry in nat sequence {entries}")
        object.__setattr__(self, "entries", tuple(entries))

    def __len__(self):
        return len(self.entries)

    def at(self, i: int) -> int:
        """Entry at 1-based position ``i`` (0 beyond the length)."""
        if i < 1:
            raise IndexError(f"positions start at 1, got {i}")
        return self.entries[i - 1] if i <= len(self.entries) else 0

    def __add__(self, other):
        return seq_add(self, other)

    def __repr__(self):
        return f"ExpSeq({list(self.entries)}, {self.domain})"


def seq(*entries, domain="nat") -> ExpSeq:
    return ExpSeq(tuple(entries), domain)


def seq_add(s: ExpSeq, t: ExpSeq) -> ExpSeq:
    if s.domain != t.domain:
        raise DomainMismatch(f"cannot add {s.domain} and {t.domain} sequences")
    return ExpSeq(tuple(map(sum, zip_longest(s.entries, t.entries, fillvalue=0))), s.domain)


def seq_neg(s: ExpSeq) -> ExpSeq:
    if s.domain != "int":
        raise DomainMismatch("only int sequences have inverses")
    return ExpSeq(tuple(-x for x in s.entries), "int")


def sigma(n: int, domain: str = "nat") -> ExpSeq:
    """The generator indexed by ``n``; ``sigma(0)`` is the empty sequence."""
    _check_domain(domain)
    if n == 0:
        return ExpSeq((), domain)
    if n < 0 and domain == "nat":
        raise DomainMismatch(f"nat generators are indexed by n >= 0, got {n}")
    entries = [0] * abs(n)
    entries[-1] = 1 if n > 0 else -1
    return ExpSeq(tuple(entries), domain)


# --- partitions of positions -------------------------------------------------

@dataclass(frozen=True)
class GeneratorPartition:
    """Finitely many explicit positions plus one infinite default class.

    For ``int`` sequences the generators ``sigma(n)`` and ``sigma(-n)`` sit at
    the same position, so explicit keys are positions ``|n|``.
    """

    k: int
    default_class: int
    explicit: tuple  # sorted ((position, class), ...)
    domain: str = "nat"

    def __post_init__(self):
        _check_domain(self.domain)
        explicit = self.explicit
        if isinstance(explicit, Mapping):
            explicit = explicit.items()
        merged = {}
        for idx, cls in explicit:
            idx, cls = int(idx), int(cls)
            if idx == 0:
                raise InvalidPartition("position 0 does not index a generator")
            if idx < 0 and self.domain == "nat":
                raise InvalidPartition(f"negative index {idx} in a nat partition")
            pos = abs(idx)
            if merged.get(pos, cls) != cls:
                raise InvalidPartition(f"indices {pos} and {-pos} assigned to different classes")
            merged[pos] = cls
        if self.k < 1 or not 0 <= self.default_class < self.k:
            raise InvalidPartition(f"bad k={self.k} / default_class={self.default_class}")
        if any(not 0 <= c < self.k for c in merged.values()):
            raise InvalidPartition(f"class ids must lie in [0, {self.k})")
        hit = set(merged.values()) | {self.default_class}
        if len(hit) != self.k:
            raise InvalidPartition(f"classes {sorted(set(range(self.k)) - hit)} are empty")
        object.__setattr__(self, "explicit", tuple(sorted(merged.items())))

    @property
    def support(self) -> int:
        """Largest explicitly listed position (0 if none)."""
        return self.explicit[-1][0] if self.explicit else 0

    def class_of(self, i: int) -> int:
        return self._lookup.get(abs(i), self.default_class)

    @property
    def _lookup(self):
        return dict(self.explicit)

    def members(self, cls: int, upto: int) -> list[int]:
        lookup = self._lookup
        return [i for i in range(1, upto + 1) if lookup.get(i, self.default_class) == cls]

    def kinds(self) -> tuple:
        return ("nat" if self.domain == "nat" else "int",) * self.k


def partition(k=1, default_class=0, explicit=None, domain="nat") -> GeneratorPartition:
    return GeneratorPartition(k, default_class, tuple((explicit or {}).items()), domain)


def one_class(domain="nat") -> GeneratorPartition:
    return GeneratorPartition(1, 0, (), domain)


def project(part: GeneratorPartition, s: ExpSeq) -> tuple:
    if part.domain != s.domain:
        raise DomainMismatch(f"{part.domain} partition applied to {s.domain} sequence")
    out = [0] * part.k
    lookup = part._lookup
    for i, x in enumerate(s.entries, 1):
        out[lookup.get(i, part.default_class)] += x
    return tuple(out)


def refine(p1: GeneratorPartition, p2: GeneratorPartition):
    """Common refinement; returns ``(part, h1, h2)`` with ``h`` mapping refined
    class ids to the coarse ids of ``p1`` and ``p2``."""
    if p1.domain != p2.domain:
        raise DomainMismatch(f"cannot refine {p1.domain} with {p2.domain}")
    positions = sorted({i for i, _ in p1.explicit} | {i for i, _ in p2.explicit})
    default_pair = (p1.default_class, p2.default_class)
    pair_of = {i: (p1.class_of(i), p2.class_of(i)) for i in positions}
    pairs = sorted(set(pair_of.values()) | {default_pair})
    ids = {pair: n for n, pair in enumerate(pairs)}
    explicit = tuple((i, ids[pr]) for i, pr in pair_of.items() if pr != default_pair)
    part = GeneratorPartition(len(pairs), ids[default_pair], explicit, p1.domain)
    h1 = tuple(pr[0] for pr in pairs)
    h2 = tuple(pr[1] for pr in pairs)
    return part, h1, h2


# --- pulling quotients back along class-summing maps ---------------------------

@lru_cache(maxsize=4096)
def _split_component(kind: str, comp, m: int) -> RectUnion:
    """Rectangles over ``m`` coordinates whose coordinate sum lies in ``comp``."""
    if m == 1:
        return RectUnion((kind,), ((comp,),))
    spec = up_to_syntactic_morphism(comp) if kind == "nat" else per_to_syntactic_morphism(comp)
    return hom_preimage_to_rectangles(spec.target, [spec.generator] * m, spec.accepting, [kind] * m)


def pullback_quotient(R: RectUnion, h: Sequence[int]) -> RectUnion:
    """Preimage of ``R`` under ``v -> (sum of v_i over h(i) = j)_j``."""
    h = tuple(h)
    k_coarse = R.arity
    groups = [[i for i, c in enumerate(h) if c == j] for j in range(k_coarse)]
    if any(not g for g in groups):
        raise InvalidPartition(f"class map {h} is not onto {k_coarse} classes")
    kinds = tuple(R.signature[c] for c in h)
    rects = []
    for r in R.rects:
        pieces = [_split_component(R.signature[j], r[j], len(groups[j])).rects for j in range(k_coarse)]
        for choice in product(*pieces):
            fine = [None] * len(h)
            for j, sub in enumerate(choice):
                for pos, comp in zip(groups[j], sub):
                    fine[pos] = comp
            rects.append(tuple(fine))
    return make_rect_union(kinds, rects)


# --- recognizable sets of sequences ------------------------------------------

@dataclass(frozen=True)
class RecSeqSet:
    partition: GeneratorPartition
    quotient: RectUnion

    def __post_init__(self):
        if self.quotient.signature != self.partition.kinds():
            raise DomainMismatch(
                f"quotient signature {list(self.quotient.signature)} does not match "
                f"{self.partition.k} {self.partition.domain} classes")

    @property
    def domain(self):
        return self.partition.domain

    def __contains__(self, s) -> bool:
        return recseq_member(self, s)


def recseq_full(domain="nat") -> RecSeqSet:
    p = one_class(domain)
    return RecSeqSet(p, full_union(p.kinds()))


def recseq_empty(domain="nat") -> RecSeqSet:
    p = one_class(domain)
    return RecSeqSet(p, empty_union(p.kinds()))


def recseq_from_constraints(constraints: Mapping[int, object], domain="nat", rest=None) -> RecSeqSet:
    """Each listed position gets its own class carrying the given component;
    all other positions share class 0 with component ``rest`` (default: all)."""
    positions = sorted(constraints)
    part = GeneratorPartition(len(positions) + 1, 0, tuple((p, n + 1) for n, p in enumerate(positions)), domain)
    kind = part.kinds()[0]
    rect = (rest if rest is not None else full(kind),) + tuple(constraints[p] for p in positions)
    return RecSeqSet(part, make_rect_union(part.kinds(), [rect]))


def recseq_member(S: RecSeqSet, s: ExpSeq) -> bool:
    if S.domain != s.domain:
        raise DomainMismatch(f"{S.domain} set queried with {s.domain} sequence")
    return rect_member(S.quotient, project(S.partition, s))


def _common(S1: RecSeqSet, S2: RecSeqSet):
    if S1.domain != S2.domain:
        raise DomainMismatch(f"{S1.domain} vs {S2.domain}")
    part, h1, h2 = refine(S1.partition, S2.partition)
    return part, pullback_quotient(S1.quotient, h1), pullback_quotient(S2.quotient, h2)


def recseq_union(S1, S2) -> RecSeqSet:
    part, q1, q2 = _common(S1, S2)
    return RecSeqSet(part, rect_union(q1, q2))


def recseq_intersect(S1, S2) -> RecSeqSet:
    part, q1, q2 = _common(S1, S2)
    return RecSeqSet(part, rect_intersect(q1, q2))


def recseq_complement(S) -> RecSeqSet:
    return RecSeqSet(S.partition, rect_complement(S.quotient))


def recseq_is_empty(S) -> bool:
    return rect_is_empty(S.quotient)


def recseq_equal(S1, S2) -> bool:
    _, q1, q2 = _common(S1, S2)
    return rect_equal(q1, q2)


# --- prime factorization isomorphisms -----------------------------------------

def prime_index(p: int) -> int:
    """1-based index of the prime ``p`` (2 -> 1)."""
    sieve.extend(p)
    i, j = sieve.search(p)
    if i != j:
        raise ValueError(f"{p} is not prime")
    return i


def nth_prime(i: int) -> int:
    sieve.extend_to_no(i)
    return sieve[i]


def nat_factorize(n: int) -> ExpSeq:
    if n < 1:
        raise NonPositive(f"cannot factorize {n}")
    exps = {prime_index(p): e for p, e in factorint(n).items()}
    entries = [0] * max(exps, default=0)
    for i, e in exps.items():
        entries[i - 1] = e
    return ExpSeq(tuple(entries), "nat")


def nat_recompose(s: ExpSeq) -> int:
    if s.domain != "nat":
        raise DomainMismatch("nat_recompose needs a nat sequence")
    out = 1
    for i, e in enumerate(s.entries, 1):
        if e:
            out *= nth_prime(i) ** e
    return out


def _positive_fraction(q) -> Fraction:
    q = Fraction(q)
    if q <= 0:
        raise NonPositive(f"need a positive rational, got {q}")
    return q


def rat_factorize(q) -> ExpSeq:
    q = _positive_fraction(q)
    num = nat_factorize(q.numerator)
    den = nat_factorize(q.denominator)
    return seq_add(ExpSeq(num.entries, "int"), seq_neg(ExpSeq(den.entries, "int")))


def rat_recompose(s: ExpSeq) -> Fraction:
    if s.domain != "int":
        raise DomainMismatch("rat_recompose needs an int sequence")
    num = den = 1
    for i, e in enumerate(s.entries, 1):
        if e > 0:
            num *= nth_prime(i) ** e
        elif e < 0:
            den *= nth_prime(i) ** -e
    return Fraction(num, den)


def nat_member(S: RecSeqSet, n: int) -> bool:
    if S.domain != "nat":
        raise DomainMismatch("nat_member needs a nat set")
    return recseq_member(S, nat_factorize(n))


def rat_member(S: RecSeqSet, q) -> bool:
    if S.domain != "int":
        raise DomainMismatch("rat_member needs an int set")
    return recseq_member(S, rat_factorize(q))


# --- non-zero rationals: sign x positive part ---------------------------------

@dataclass(frozen=True)
class SignedRecSet:
    """Finite union of ``positive-part x sign-subset`` pairs."""

    pairs: tuple  # ((RecSeqSet int, SignSubset), ...)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        for pos, signs in self.pairs:
            if pos.domain != "int" or not isinstance(signs, SignSubset):
                raise DomainMismatch("signed pairs need an int RecSeqSet and a SignSubset")

    def __or__(self, other):
        return SignedRecSet(self.pairs + other.pairs)


def signed_rational_rec(pos_part: RecSeqSet, signs: SignSubset) -> SignedRecSet:
    return SignedRecSet(((pos_part, signs),))


def signed_member(rep: SignedRecSet, q) -> bool:
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("0 is outside the non-zero rationals; adjoin a zero to include it")
    sign = 1 if q > 0 else -1
    return any(sign in signs.signs and rat_member(pos, abs(q)) for pos, signs in rep.pairs)


def parse_rational(text: str) -> Fraction:
    from .errors import ParseError

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {text!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def positions_of(s: ExpSeq) -> Iterable[int]:
    return (i for i, x in enumerate(s.entries, 1) if x)


def iter_sequences(domain: str, length: int, values: Sequence[int]) -> Iterable[ExpSeq]:
    """All sequences with entries from ``values`` on positions ``1..length``."""
    for entries in product(values, repeat=length):
        yield ExpSeq(entries, domain)


__all__ = [
    "ExpSeq", "seq", "seq_add", "sigma", "GeneratorPartition", "partition", "one_class", "project",
    "refine", "pullback_quotient", "RecSeqSet", "recseq_member", "recseq_union", "recseq_intersect",
    "recseq_complement", "recseq_equal", "recseq_is_empty", "recseq_full", "recseq_empty",
    "recseq_from_constraints", "nat_factorize", "nat_recompose", "rat_factorize", "rat_recompose",
    "nat_member", "rat_member", "SignedRecSet", "signed_rational_rec", "signed_member",
]

"""Witness constructions around non-recognizable sets of exponent sequences.

Every constructor here returns concrete data (sequences, triples, reports)
that callers are expected to re-check with the plain evaluators
:func:`x_length`, :func:`x_forall` and :func:`x_exists`.

Quantified sets range over the positions ``1..|s|`` of a sequence, so the
empty sequence lies in every ``forall`` set and in no ``exists`` set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from sympy import isprime, nextprime

from .errors import CertificateExhausted, NotAMember, SeedNotInX, UnknownProperty
from .monoid import M3, FiniteMonoid
from .sequences import (
    ExpSeq,
    GeneratorPartition,
    RecSeqSet,
    one_class,
    project,
    recseq_member,
    seq_add,
    sigma,
)

DEFAULT_LIMIT = 100_000

# --- properties ---------------------------------------------------------------

Certificate = Callable[[int, bool, bool], Optional[int]]


@dataclass(frozen=True)
class PropertySpec:
    """A decidable predicate on integers with a witness generator.

    ``witness(bound, want, signed)`` returns some ``n`` with ``|n| > bound`` and
    ``predicate(n) == want`` (``n > bound`` when unsigned), or ``None``.
    """

    name: str
    predicate: Callable[[int], bool]
    certificate: Optional[Certificate] = None
    scan_limit: int = 1000

    def __call__(self, n: int) -> bool:
        return bool(self.predicate(n))

    def witness(self, bound: int, want: bool, signed: bool = False) -> Optional[int]:
        if self.certificate is not None:
            return self.certificate(bound, want, signed)
        return self._scan(bound, want, signed)

    def _scan(self, bound, want, signed):
        for n in range(bound + 1, bound + 1 + self.scan_limit):
            for m in ((n, -n) if signed else (n,)):
                if self(m) == want:
                    return m
        return None

    def negate(self) -> "PropertySpec":
        cert = self.certificate
        neg_cert = None if cert is None else (lambda b, want, s: cert(b, not want, s))
        name = self.name[4:] if self.name.startswith("not-") else "not-" + self.name
        return PropertySpec(name, lambda n: not self.predicate(n), neg_cert, self.scan_limit)

    def check_certificate(self, bounds: Iterable[int] = range(0, 200, 7), signed=False) -> bool:
        """Re-evaluate the predicate on certificate outputs; ``None`` counts as failure."""
        for b in bounds:
            for want in (True, False):
                n = self.witness(b, want, signed)
                if n is None or abs(n) <= b or self(n) != want or (not signed and n <= b):
                    return False
        return True


def _prime_certificate(limit):
    def cert(bound, want, signed):
        if bound >= limit:
            return None
        if want:
            return int(nextprime(bound))
        n = bound + 1
        while isprime(n):
            n += 1
        return n

    return cert


def get_property(name: str) -> PropertySpec:
    """Properties by name: even, odd, multiple-of-K, nonneg, prime, prime<=N,
    and the trivial ``always``/``never`` used as negative controls."""
    if name == "even":
        return PropertySpec(name, lambda n: n % 2 == 0)
    if name == "odd":
        return PropertySpec(name, lambda n: n % 2 == 1)
    if name == "nonneg":
        return PropertySpec(name, lambda n: n >= 0)
    if name == "always":
        return PropertySpec(name, lambda n: True)
    if name == "never":
        return PropertySpec(name, lambda n: False)
    if m := re.fullmatch(r"multiple-of-(\d+)", name):
        k = int(m.group(1))
        if k < 1:
            raise UnknownProperty(f"multiple-of needs k >= 1: {name!r}")
        return PropertySpec(name, lambda n: n % k == 0)
    if m := re.fullmatch(r"prime(?:<=(\d+))?", name):
        limit = int(m.group(1) or 1000)
        return PropertySpec(f"prime<={limit}", lambda n: bool(isprime(n)), _prime_certificate(limit))
    if name.startswith("not-"):
        return get_property(name[4:]).negate()
    raise UnknownProperty(f"unknown property {name!r}")


PROPERTY_NAMES = ("even", "odd", "multiple-of-K", "nonneg", "prime", "prime<=N", "always", "never", "not-<name>")

# --- the three families of sets -------------------------------------------------


def x_length(P: PropertySpec, s: ExpSeq) -> bool:
    return P(len(s))


def x_forall(P: PropertySpec, s: ExpSeq) -> bool:
    return all(P(x) for x in s.entries)


def x_exists(P: PropertySpec, s: ExpSeq) -> bool:
    return any(P(x) for x in s.entries)


KINDS = {"length": x_length, "forall": x_forall, "exists": x_exists}


def in_x(kind: str, P: PropertySpec, s: ExpSeq) -> bool:
    return KINDS[kind](P, s)


# --- witness triples ------------------------------------------------------------


def nontrivial_witness(P: PropertySpec, part: GeneratorPartition, bound: int = DEFAULT_LIMIT):
    """Smallest greedy ``n1 < n2 < n3`` beyond the explicit support with
    ``P(n1)``, ``not P(n2)``, ``P(n3)``; ``n1`` and ``n3`` share the default class."""
    start = part.support
    n1 = P.witness(start, True)
    n2 = None if n1 is None else P.witness(n1, False)
    n3 = None if n2 is None else P.witness(n2, True)
    if n3 is None or n3 > bound:
        raise CertificateExhausted(f"property {P.name!r} gave no witness triple within {bound}")
    return n1, n2, n3


def _signed_witnesses(P: PropertySpec, part: GeneratorPartition, bound: int):
    """Nonzero ``n1, n3`` with ``P`` and ``n2`` without it, ``|n2| > |n1| + |n3|``."""
    n1 = P.witness(0, True, signed=True)
    n3 = None if n1 is None else P.witness(abs(n1), True, signed=True)
    n2 = None if n3 is None else P.witness(abs(n1) + abs(n3), False, signed=True)
    if n2 is None or max(abs(n1), abs(n2), abs(n3)) > bound:
        raise CertificateExhausted(f"property {P.name!r} gave no signed witnesses within {bound}")
    return n1, n2, n3


def _check_triple(P, part, triple):
    n1, n2, n3 = triple
    ok = (1 <= n1 < n2 < n3 and P(n1) and not P(n2) and P(n3)
          and part.class_of(n1) == part.class_of(n3))
    if not ok:
        raise SeedNotInX(f"triple {triple} does not satisfy P(n1), not P(n2), P(n3) with n1 ~ n3")
    return triple


def _seq_from(values: dict, domain: str) -> ExpSeq:
    length = max(values, default=0)
    return ExpSeq(tuple(values.get(i, 0) for i in range(1, length + 1)), domain)


def _edit_pair(s1: ExpSeq, P: PropertySpec, part: GeneratorPartition, signed: bool, limit: int):
    """Search two equivalent positions of ``s1`` and a value ``n2`` with ``not P(n2)``
    so that moving mass between them leaves ``s1``'s forall set."""
    domain = s1.domain
    n = len(s1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or part.class_of(i) != part.class_of(j):
                continue
            total = s1.at(i) + s1.at(j)
            candidates = range(0, total + 1) if not signed else _signed_range(limit)
            for n2 in candidates:
                if P(n2):
                    continue
                values = dict(enumerate(s1.entries, 1))
                values[i], values[j] = n2, total - n2
                s2 = _seq_from(values, domain)
                if not x_forall(P, s2):
                    return s2
    return None


def _signed_range(limit):
    yield 0
    for n in range(1, limit + 1):
        yield n
        yield -n


def _forall_pair(P, part, seed, signed, bound):
    domain = part.domain
    if seed is not None:
        if seed.domain != domain:
            raise SeedNotInX(f"seed domain {seed.domain} differs from partition domain {domain}")
        if not x_forall(P, seed):
            raise SeedNotInX(f"seed {seed} is not in the forall set of {P.name!r}")
        s2 = _edit_pair(seed, P, part, signed, limit=200)
        if s2 is None:
            raise SeedNotInX(f"seed {seed} has no equivalent pair of positions to edit")
        return seed, s2
    if signed:
        n1, n2, n3 = _signed_witnesses(P, part, bound)
    else:
        n1, n2, n3 = nontrivial_witness(P, part, bound)
    i, j = part.support + 1, part.support + 2  # both in the default class
    filler = n1 if signed else n3
    base = {pos: filler for pos in range(1, j + 1)}
    base[i], base[j] = n1, n3
    s1 = _seq_from(base, domain)
    base[i], base[j] = n2, n1 + n3 - n2
    return s1, _seq_from(base, domain)


def prop6_counterexample(kind: str, P: PropertySpec, part: GeneratorPartition,
                         s1_seed: Optional[ExpSeq] = None, triple=None, bound: int = DEFAULT_LIMIT):
    """Pair ``(s1, s2)`` with equal projections, ``s1`` in the set and ``s2`` outside.

    ``kind`` is ``length`` (P of the length), ``forall`` (P of every entry) or
    ``exists`` (P of some entry, obtained from ``forall`` on the negation).
    """
    if part.domain != "nat":
        raise SeedNotInX("prop6 works over nat sequences; use prop8 for int")
    if kind == "length":
        n1, n2, n3 = _check_triple(P, part, triple) if triple else nontrivial_witness(P, part, bound)
        s1 = seq_add(sigma(n2), sigma(n3))
        s2 = seq_add(sigma(n1), sigma(n2))
        return s1, s2
    if kind == "forall":
        return _forall_pair(P, part, s1_seed, False, bound)
    if kind == "exists":
        # the complement of exists(P) is forall(not P); swap the roles
        t1, t2 = _forall_pair(P.negate(), part, s1_seed, False, bound)
        return t2, t1
    raise ValueError(f"unknown kind {kind!r}")


def prop8_counterexample(kind: str, P: PropertySpec, part: GeneratorPartition,
                         s1_seed: Optional[ExpSeq] = None, bound: int = DEFAULT_LIMIT):
    """Integer-entry version of :func:`prop6_counterexample` (kinds forall/exists)."""
    if part.domain != "int":
        raise SeedNotInX("prop8 works over int sequences")
    if kind == "forall":
        return _forall_pair(P, part, s1_seed, True, bound)
    if kind == "exists":
        t1, t2 = _forall_pair(P.negate(), part, s1_seed, True, bound)
        return t2, t1
    raise ValueError(f"unknown kind {kind!r}")


def verify_pair(kind: str, P: PropertySpec, part: GeneratorPartition, s1: ExpSeq, s2: ExpSeq) -> bool:
    return (project(part, s1) == project(part, s2)
            and in_x(kind, P, s1) and not in_x(kind, P, s2))


# --- lengthening ----------------------------------------------------------------


def prop7_lengthen(S: RecSeqSet, s: ExpSeq, p: int) -> ExpSeq:
    """A member of ``S`` longer than ``p``, obtained by adding +1 and -1 at two
    fresh positions of the default class."""
    if S.domain != "int":
        raise NotAMember("lengthening needs an int set")
    if not recseq_member(S, s):
        raise NotAMember(f"{s} is not a member")
    if len(s) > p:
        return s
    n = max(p, len(s), S.partition.support) + 1
    values = dict(enumerate(s.entries, 1))
    values[n], values[n + 1] = 1, -1
    return _seq_from(values, "int")


# --- the three-element recognizer -------------------------------------------------


@dataclass(frozen=True)
class IndexSet:
    """Finite set of generator indices, or the complement of one."""

    indices: frozenset
    cofinite: bool = False

    def __contains__(self, i: int) -> bool:
        return (i in self.indices) != self.cofinite


@dataclass(frozen=True)
class GeneratorMorphism:
    """Morphism from sequences to a commutative finite monoid, constant on partition classes."""

    partition: GeneratorPartition
    target: FiniteMonoid
    class_images: tuple
    accepting: frozenset

    def evaluate(self, s: ExpSeq) -> int:
        """Through the projection: product of class images raised to class sums."""
        M = self.target
        return M.product(M.power(img, c) for img, c in zip(self.class_images, project(self.partition, s)))

    def evaluate_direct(self, s: ExpSeq) -> int:
        """Position by position, without the projection."""
        M, out = self.target, self.target.unit
        for i, x in enumerate(s.entries, 1):
            for _ in range(x):
                out = M.mul(out, self.class_images[self.partition.class_of(i)])
        return out

    def accepts(self, s: ExpSeq) -> bool:
        return self.evaluate(s) in self.accepting


P_ELEMENT, ZERO_ELEMENT = 1, 2  # in M3: 0 is the unit, 1 is p, 2 is the zero


def m3_recognizer(X: IndexSet):
    """Recognizer of ``{sigma(a) : a in X}`` sending ``sigma(a)`` to p for
    ``a`` in X and to the zero otherwise; accepting set ``{p}``."""
    explicit_cls = 0 if X.cofinite else 1  # class of the listed indices
    default_img = P_ELEMENT if X.cofinite else ZERO_ELEMENT
    listed_img = ZERO_ELEMENT if X.cofinite else P_ELEMENT
    if not X.indices:
        part, images = one_class("nat"), (default_img,)
    else:
        default_cls = 1 - explicit_cls
        part = GeneratorPartition(2, default_cls, tuple((i, explicit_cls) for i in sorted(X.indices)), "nat")
        images = [None, None]
        images[explicit_cls], images[default_cls] = listed_img, default_img
        images = tuple(images)
    return M3, GeneratorMorphism(part, M3, images, frozenset({P_ELEMENT}))


# --- saturation on finite alphabets ------------------------------------------------


@dataclass
class SaturationReport:
    saturated: bool
    words_checked: int
    classes: tuple
    violations: list = field(default_factory=list)
    up_consistent: Optional[bool] = None


def _decode(idx: int, length: int, a: int) -> tuple:
    word = []
    for _ in range(length):
        idx, r = divmod(idx, a)
        word.append(r)
    return tuple(reversed(word))


def letter_classes(images: Sequence[int]) -> tuple:
    """Class of each letter: letters with equal images share a class."""
    first = {}
    return tuple(first.setdefault(img, len(first)) for img in images)


def prop5_saturation_check(target: FiniteMonoid, images: Sequence[int], accepting, max_len: int,
                           classes: Optional[Sequence[int]] = None, max_violations: int = 5) -> SaturationReport:
    """Check that words with the same class-count vector agree on membership.

    ``classes`` overrides the equal-image classes (used by fault injection).
    """
    images = list(images)
    a = len(images)
    cls = tuple(classes) if classes is not None else letter_classes(images)
    k = max(cls) + 1
    base = max_len + 1
    table = np.asarray(target.table, dtype=np.int64)
    acc = np.zeros(target.size, dtype=bool)
    acc[list(accepting)] = True
    img = np.asarray(images, dtype=np.int64)
    step = base ** np.asarray(cls, dtype=np.int64)
    values = np.array([target.unit], dtype=np.int64)
    codes = np.zeros(1, dtype=np.int64)
    report = SaturationReport(True, 1, cls)
    for length in range(1, max_len + 1):
        values = table[values[:, None], img[None, :]].ravel()
        codes = (codes[:, None] + step[None, :]).ravel()
        member = acc[values]
        report.words_checked += len(values)
        order = np.argsort(codes, kind="stable")
        sc, sm = codes[order], member[order]
        starts = np.flatnonzero(np.r_[True, sc[1:] != sc[:-1]])
        lo = np.minimum.reduceat(sm, starts)
        hi = np.maximum.reduceat(sm, starts)
        for g in np.flatnonzero(lo != hi)[: max_violations - len(report.violations)]:
            block = order[starts[g]: starts[g + 1] if g + 1 < len(starts) else len(order)]
            w_in = next(int(i) for i in block if member[i])
            w_out = next(int(i) for i in block if not member[i])
            report.violations.append((_decode(w_in, length, a), _decode(w_out, length, a)))
        if np.any(lo != hi):
            report.saturated = False
    if a == 1:
        from .additive import up_from_morphism, up_member
        from .monoid import MorphismSpec

        u = up_from_morphism(MorphismSpec("nat", target, (images[0],), frozenset(accepting)))
        x = target.unit
        direct = []
        for n in range(max_len + 1):
            direct.append(x in accepting)
            x = target.mul(x, images[0])
        report.up_consistent = all(up_member(u, n) == d for n, d in enumerate(direct))
    return report


# --- the sets S(X) over Z* ----------------------------------------------------------


@dataclass(frozen=True)
class SXRep:
    """``S(X)``: sequences whose entries over the positions ``|n|`` (n in X)
    sum to 1 and whose remaining entries sum to 0."""

    members: frozenset
    positions: frozenset
    bound: int
    target: tuple = (1, 0)

    @property
    def partition(self) -> GeneratorPartition:
        if not self.positions:
            return one_class("int")
        return GeneratorPartition(2, 0, tuple((i, 1) for i in sorted(self.positions)), "int")


def sx_build(X: Iterable[int], bound: int) -> SXRep:
    X = frozenset(int(n) for n in X)
    if any(abs(n) > bound for n in X):
        raise ValueError(f"{sorted(X)} is not inside [-{bound}, {bound}]")
    return SXRep(X, frozenset(abs(n) for n in X if n != 0), bound)


def sx_member(rep: SXRep, s: ExpSeq) -> bool:
    inside = sum(x for i, x in enumerate(s.entries, 1) if i in rep.positions)
    outside = sum(x for i, x in enumerate(s.entries, 1) if i not in rep.positions)
    return (inside, outside) == rep.target


def sx_probe_box(bound: int) -> list[ExpSeq]:
    """Search space for separation: entries in {-1, 0, 1} on positions ``1..bound``."""
    from .sequences import iter_sequences

    probes = iter_sequences("int", bound, (-1, 0, 1))
    # simplest probes first, so separators read like single generators
    return sorted(set(probes), key=lambda s: (sum(map(abs, s.entries)), len(s), [-x for x in s.entries]))


def sx_signature(rep: SXRep, probes: Sequence[ExpSeq]) -> int:
    """Bitmask of the probes that lie in ``S(X)``."""
    out = 0
    for bit, s in enumerate(probes):
        if sx_member(rep, s):
            out |= 1 << bit
    return out


def sx_separate(X, Y, bound: int, probes=None) -> Optional[ExpSeq]:
    """A probe in exactly one of ``S(X)``, ``S(Y)``, or ``None``."""
    probes = probes if probes is not None else sx_probe_box(bound)
    diff = sx_signature(sx_build(X, bound), probes) ^ sx_signature(sx_build(Y, bound), probes)
    if not diff:
        return None
    return probes[(diff & -diff).bit_length() - 1]


def small_subsets(bound: int, max_size: int) -> list[frozenset]:
    universe = range(-bound, bound + 1)
    return [frozenset(c) for r in range(max_size + 1) for c in combinations(universe, r)]

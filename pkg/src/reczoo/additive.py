"""Ultimately periodic subsets of N and periodic subsets of Z.

Both classes are kept in a unique normal form so that structural equality
coincides with set equality.  Construct them through :func:`up_set` and
:func:`per_set` (or the ``from_predicate`` helpers), which canonicalize.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import GeneratorNotInvertible, NonCanonical
from .monoid import (
    FiniteMonoid,
    MorphismSpec,
    cyclic_monoid,
    lasso,
    unit_group,
)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _min_period(period: int, residues: frozenset[int]) -> int:
    for d in _divisors(period):
        if all(((r + d) % period in residues) == (r in residues) for r in range(period)):
            return d
    return period


@dataclass(frozen=True)
class UltimatelyPeriodicSet:
    """``n`` is a member iff ``n in prefix`` (``n <= threshold``) or ``n % period in residues``."""

    threshold: int
    period: int
    prefix: frozenset[int]
    residues: frozenset[int]

    def __post_init__(self):
        if self.threshold < 0 or self.period < 1:
            raise ValueError(f"bad threshold/period {self.threshold}/{self.period}")
        object.__setattr__(self, "prefix", frozenset(self.prefix))
        object.__setattr__(self, "residues", frozenset(self.residues))
        if any(not 0 <= x <= self.threshold for x in self.prefix):
            raise ValueError(f"prefix {sorted(self.prefix)} outside [0, {self.threshold}]")
        if any(not 0 <= r < self.period for r in self.residues):
            raise ValueError(f"residues {sorted(self.residues)} outside [0, {self.period})")

    def __contains__(self, n: int) -> bool:
        return up_member(self, n)

    def __or__(self, other):
        return up_union(self, other)

    def __and__(self, other):
        return up_intersect(self, other)

    def __invert__(self):
        return up_complement(self)

    def is_empty(self) -> bool:
        return not self.prefix and not self.residues

    def is_canonical(self) -> bool:
        return canonicalize_up(self) == self

    @classmethod
    def from_predicate(cls, threshold: int, period: int, pred: Callable[[int], bool]):
        """Canonical set agreeing with ``pred`` on ``[0, threshold + period]``,
        assuming ``pred`` is ``period``-periodic beyond ``threshold``."""
        prefix = {n for n in range(threshold + 1) if pred(n)}
        residues = set()
        for n in range(threshold + 1, threshold + 1 + period):
            if pred(n):
                residues.add(n % period)
        return canonicalize_up(cls(threshold, period, prefix, residues))

    def __repr__(self):
        return (f"UP(n0={self.threshold}, p={self.period}, prefix={sorted(self.prefix)}, "
                f"residues={sorted(self.residues)})")


def canonicalize_up(u: UltimatelyPeriodicSet) -> UltimatelyPeriodicSet:
    p = _min_period(u.period, u.residues)
    residues = frozenset(r % p for r in u.residues)
    n0, prefix = u.threshold, set(u.prefix)
    while n0 > 0 and ((n0 in prefix) == (n0 % p in residues)):
        prefix.discard(n0)
        n0 -= 1
    return UltimatelyPeriodicSet(n0, p, frozenset(prefix), residues)


def up_set(threshold=0, period=1, prefix=(), residues=()) -> UltimatelyPeriodicSet:
    return canonicalize_up(UltimatelyPeriodicSet(threshold, period, frozenset(prefix), frozenset(residues)))


def up_mod(period: int, residues: Iterable[int]) -> UltimatelyPeriodicSet:
    """All ``n >= 0`` with ``n % period`` in ``residues``."""
    residues = frozenset(r % period for r in residues)
    return up_set(0, period, {0} & residues, residues)


def up_member(u: UltimatelyPeriodicSet, n: int) -> bool:
    if n < 0:
        raise ValueError(f"UP membership needs n >= 0, got {n}")
    if n <= u.threshold:
        return n in u.prefix
    return n % u.period in u.residues


UP_EMPTY = UltimatelyPeriodicSet(0, 1, frozenset(), frozenset())
UP_FULL = UltimatelyPeriodicSet(0, 1, frozenset({0}), frozenset({0}))


def _up_combine(u1, u2, op) -> UltimatelyPeriodicSet:
    p = math.lcm(u1.period, u2.period)
    n0 = max(u1.threshold, u2.threshold)
    prefix = {n for n in range(n0 + 1) if op(up_member(u1, n), up_member(u2, n))}
    # any n > n0 with n % p == r decides both operands by r alone
    residues = {r for r in range(p) if op(r % u1.period in u1.residues, r % u2.period in u2.residues)}
    return canonicalize_up(UltimatelyPeriodicSet(n0, p, frozenset(prefix), frozenset(residues)))


def up_union(u1, u2):
    return _up_combine(u1, u2, operator.or_)


def up_intersect(u1, u2):
    return _up_combine(u1, u2, operator.and_)


def up_complement(u):
    prefix = frozenset(n for n in range(u.threshold + 1) if n not in u.prefix)
    residues = frozenset(r for r in range(u.period) if r not in u.residues)
    return canonicalize_up(UltimatelyPeriodicSet(u.threshold, u.period, prefix, residues))


def up_equal(u1, u2) -> bool:
    return canonicalize_up(u1) == canonicalize_up(u2)


def up_singleton(n: int) -> UltimatelyPeriodicSet:
    return up_set(n, 1, {n}, ())


def up_from_morphism(spec: MorphismSpec) -> UltimatelyPeriodicSet:
    """Preimage of the accepting set under ``n -> g**n``."""
    if spec.source != "nat":
        raise ValueError(f"expected a nat-source morphism, got {spec.source!r}")
    M, g = spec.target, spec.generator
    tail, j = lasso(M, g)
    cycle = j - tail
    powers = [M.unit]
    for _ in range(j):
        powers.append(M.table[powers[-1]][g])

    def image(n):
        return powers[n] if n < tail else powers[tail + (n - tail) % cycle]

    return UltimatelyPeriodicSet.from_predicate(tail, cycle, lambda n: image(n) in spec.accepting)


def lasso_shape(u: UltimatelyPeriodicSet) -> tuple[int, int]:
    """(index, period) of the minimal unary automaton for ``u``.

    The index is the first exponent from which membership is periodic.
    """
    u = canonicalize_up(u)
    if u.threshold == 0 and ((0 in u.prefix) == (0 in u.residues)):
        return 0, u.period
    return u.threshold + 1, u.period


def up_to_syntactic_morphism(u: UltimatelyPeriodicSet) -> MorphismSpec:
    """Syntactic morphism of ``u``: the cyclic monoid of its minimal lasso."""
    index, period = lasso_shape(u)
    M = cyclic_monoid(index, period)
    g = 1 if M.size > 1 else 0
    accepting = frozenset(e for e in range(M.size) if up_member(u, e))
    return MorphismSpec("nat", M, (g,), accepting)


# --- periodic subsets of Z --------------------------------------------------

@dataclass(frozen=True)
class PeriodicSet:
    period: int
    residues: frozenset[int]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError(f"period must be positive, got {self.period}")
        object.__setattr__(self, "residues", frozenset(self.residues))
        if any(not 0 <= r < self.period for r in self.residues):
            raise ValueError(f"residues {sorted(self.residues)} outside [0, {self.period})")

    def __contains__(self, n: int) -> bool:
        return per_member(self, n)

    def __or__(self, other):
        return per_union(self, other)

    def __and__(self, other):
        return per_intersect(self, other)

    def __invert__(self):
        return per_complement(self)

    def is_empty(self) -> bool:
        return not self.residues

    def is_canonical(self) -> bool:
        return canonicalize_per(self) == self

    def __repr__(self):
        return f"Periodic(p={self.period}, residues={sorted(self.residues)})"


def canonicalize_per(s: PeriodicSet) -> PeriodicSet:
    p = _min_period(s.period, s.residues)
    return PeriodicSet(p, frozenset(r % p for r in s.residues))


def per_set(period=1, residues: Iterable[int] = ()) -> PeriodicSet:
    return canonicalize_per(PeriodicSet(period, frozenset(r % period for r in residues)))


PER_EMPTY = PeriodicSet(1, frozenset())
PER_FULL = PeriodicSet(1, frozenset({0}))


def per_member(s: PeriodicSet, n: int) -> bool:
    return n % s.period in s.residues  # Python's % is already in [0, p)


def _per_combine(s1, s2, op):
    p = math.lcm(s1.period, s2.period)
    residues = {r for r in range(p) if op(r % s1.period in s1.residues, r % s2.period in s2.residues)}
    return canonicalize_per(PeriodicSet(p, frozenset(residues)))


def per_union(s1, s2):
    return _per_combine(s1, s2, operator.or_)


def per_intersect(s1, s2):
    return _per_combine(s1, s2, operator.and_)


def per_complement(s):
    return canonicalize_per(PeriodicSet(s.period, frozenset(range(s.period)) - s.residues))


def per_equal(s1, s2) -> bool:
    return canonicalize_per(s1) == canonicalize_per(s2)


def per_from_morphism(spec: MorphismSpec) -> PeriodicSet:
    if spec.source != "int":
        raise ValueError(f"expected an int-source morphism, got {spec.source!r}")
    M, g = spec.target, spec.generator
    if g not in unit_group(M):
        raise GeneratorNotInvertible(f"image {g} of 1 is not a unit")
    d = _group_order_of(M, g)
    x, residues = M.unit, set()
    for r in range(d):
        if x in spec.accepting:
            residues.add(r)
        x = M.table[x][g]
    return canonicalize_per(PeriodicSet(d, frozenset(residues)))


def _group_order_of(M: FiniteMonoid, g: int) -> int:
    # order of g inside the unit group, which need not be all of M
    tail, j = lasso(M, g)
    assert tail == 0
    return j


def per_to_syntactic_morphism(s: PeriodicSet) -> MorphismSpec:
    from .monoid import cyclic_group

    G = cyclic_group(s.period)
    g = 1 % s.period
    return MorphismSpec("int", G, (g,), s.residues)


def check_canonical(value, what="set"):
    """Raise :class:`NonCanonical` unless ``value`` is in normal form."""
    if not value.is_canonical():
        canon = canonicalize_up(value) if isinstance(value, UltimatelyPeriodicSet) else canonicalize_per(value)
        raise NonCanonical(f"{what} {value!r} is not canonical; normal form is {canon!r}")
    return value


__all__ = [
    "UltimatelyPeriodicSet", "PeriodicSet", "up_set", "up_mod", "per_set", "up_member", "up_union",
    "up_intersect", "up_complement", "up_equal", "up_from_morphism", "up_to_syntactic_morphism",
    "per_member", "per_union", "per_intersect", "per_complement", "per_equal", "per_from_morphism",
    "canonicalize_up", "canonicalize_per", "UP_EMPTY", "UP_FULL", "PER_EMPTY", "PER_FULL",
]

"""Finite unions of component-wise rectangles.

A :class:`RectUnion` over a signature of coordinate kinds is the normal form
for recognizable subsets of a direct product.  Coordinate kinds:

``nat``        component is an :class:`UltimatelyPeriodicSet`
``int``        component is a :class:`PeriodicSet`
``sign``       component is a :class:`SignSubset` of {+1, -1}
``sym:<id>``   component is a recognizable :class:`SymbolicSet` of a registry monoid
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .additive import (
    PER_EMPTY,
    PER_FULL,
    UP_EMPTY,
    UP_FULL,
    PeriodicSet,
    UltimatelyPeriodicSet,
    canonicalize_per,
    per_complement,
    per_intersect,
    per_member,
    up_complement,
    up_intersect,
    up_member,
)
from .errors import (
    BlowUpLimitExceeded,
    GeneratorNotInvertible,
    NonCommutativeGenerators,
    SignatureMismatch,
)
from .monoid import FiniteMonoid, MorphismSpec, invert, lasso, unit_group
from .registry import SymbolicSet, entry, from_regions, rec_lattice, region_of


@dataclass(frozen=True)
class SignSubset:
    signs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "signs", frozenset(self.signs))
        if not self.signs <= {1, -1}:
            raise ValueError(f"signs must be a subset of {{1, -1}}, got {sorted(self.signs)}")

    def __contains__(self, s) -> bool:
        return s in self.signs

    def is_empty(self) -> bool:
        return not self.signs

    def __repr__(self):
        return "Signs{" + ", ".join("+1" if s > 0 else "-1" for s in sorted(self.signs, reverse=True)) + "}"


SIGN_FULL = SignSubset(frozenset({1, -1}))
SIGN_EMPTY = SignSubset(frozenset())


@dataclass
class Limits:
    """Caps on the exponential steps (complement and pairwise intersection)."""

    max_arity: int = 6
    max_rects: int = 64
    max_intermediate: int = 20000


LIMITS = Limits()


def check_kind(kind: str) -> str:
    if kind in ("nat", "int", "sign"):
        return kind
    if kind.startswith("sym:"):
        rec_lattice(kind[4:])  # raises for unknown ids or infinite lattices
        return kind
    raise SignatureMismatch(f"unknown coordinate kind {kind!r}")


def full(kind: str):
    if kind == "nat":
        return UP_FULL
    if kind == "int":
        return PER_FULL
    if kind == "sign":
        return SIGN_FULL
    return SymbolicSet(kind[4:], "all")


def empty(kind: str):
    if kind == "nat":
        return UP_EMPTY
    if kind == "int":
        return PER_EMPTY
    if kind == "sign":
        return SIGN_EMPTY
    return SymbolicSet(kind[4:], "empty")


def conforms(kind: str, comp) -> bool:
    if kind == "nat":
        return isinstance(comp, UltimatelyPeriodicSet)
    if kind == "int":
        return isinstance(comp, PeriodicSet)
    if kind == "sign":
        return isinstance(comp, SignSubset)
    return isinstance(comp, SymbolicSet) and comp.monoid == kind[4:] and comp in rec_lattice(comp.monoid)


def comp_intersect(kind, a, b):
    if kind == "nat":
        return up_intersect(a, b)
    if kind == "int":
        return per_intersect(a, b)
    if kind == "sign":
        return SignSubset(a.signs & b.signs)
    return from_regions(a.monoid, a.regions & b.regions)


def comp_complement(kind, a):
    if kind == "nat":
        return up_complement(a)
    if kind == "int":
        return per_complement(a)
    if kind == "sign":
        return SignSubset(SIGN_FULL.signs - a.signs)
    return from_regions(a.monoid, entry(a.monoid).regions - a.regions)


def comp_member(kind, comp, value) -> bool:
    if kind == "nat":
        return up_member(comp, value)
    if kind == "int":
        return per_member(comp, value)
    if kind == "sign":
        return value in comp.signs
    return region_of(value) in comp.regions


@lru_cache(maxsize=65536)
def comp_subset(kind, a, b) -> bool:
    return comp_intersect(kind, a, comp_complement(kind, b)).is_empty()


def _sort_key(comp):
    return repr(comp)


@dataclass(frozen=True)
class RectUnion:
    signature: tuple
    rects: tuple

    def __post_init__(self):
        object.__setattr__(self, "signature", tuple(self.signature))
        object.__setattr__(self, "rects", tuple(tuple(r) for r in self.rects))
        if not self.signature:
            raise SignatureMismatch("arity must be positive")
        for kind in self.signature:
            check_kind(kind)
        for r in self.rects:
            if len(r) != len(self.signature) or not all(conforms(k, c) for k, c in zip(self.signature, r)):
                raise SignatureMismatch(f"rectangle {r} does not match signature {self.signature}")

    @property
    def arity(self) -> int:
        return len(self.signature)

    def __contains__(self, v) -> bool:
        return rect_member(self, v)

    def is_normalized(self) -> bool:
        return normalize(self) == self

    def __repr__(self):
        return f"RectUnion({list(self.signature)}, {len(self.rects)} rects)"


# Subsumption pruning is quadratic; beyond this many rectangles it is skipped.
SUBSUME_MAX = 300


def _prune(signature, rects, subsume=True):
    """Drop empty rectangles, duplicates and rectangles contained in another."""
    rects = [r for r in dict.fromkeys(rects) if not any(c.is_empty() for c in r)]
    rects.sort(key=lambda r: [_sort_key(c) for c in r])
    if not subsume or len(rects) > SUBSUME_MAX:
        return tuple(rects)
    kept = []
    for i, r in enumerate(rects):
        covered = False
        for j, s in enumerate(rects):
            if i == j:
                continue
            if all(comp_subset(k, a, b) for k, a, b in zip(signature, r, s)):
                covered = True
                break
        if not covered:
            kept.append(r)
    return tuple(kept)


def normalize(S: RectUnion) -> RectUnion:
    return RectUnion(S.signature, _prune(S.signature, S.rects))


def make_rect_union(signature: Sequence[str], rects, subsume=True) -> RectUnion:
    S = RectUnion(tuple(signature), tuple(tuple(r) for r in rects))
    return RectUnion(S.signature, _prune(S.signature, S.rects, subsume))


def full_union(signature) -> RectUnion:
    return RectUnion(tuple(signature), (tuple(full(k) for k in signature),))


def empty_union(signature) -> RectUnion:
    return RectUnion(tuple(signature), ())


def _same_signature(S1, S2):
    if S1.signature != S2.signature:
        raise SignatureMismatch(f"{list(S1.signature)} vs {list(S2.signature)}")


def rect_member(S: RectUnion, v) -> bool:
    v = tuple(v)
    if len(v) != S.arity:
        raise SignatureMismatch(f"point of arity {len(v)} for signature {list(S.signature)}")
    return any(all(comp_member(k, c, x) for k, c, x in zip(S.signature, r, v)) for r in S.rects)


def rect_union(S1: RectUnion, S2: RectUnion) -> RectUnion:
    _same_signature(S1, S2)
    return normalize(RectUnion(S1.signature, S1.rects + S2.rects))


def _intersect_rects(signature, rs1, rs2, limits):
    if len(rs1) * len(rs2) > limits.max_intermediate:
        raise BlowUpLimitExceeded(
            f"intersection of {len(rs1)} x {len(rs2)} rectangles exceeds {limits.max_intermediate}")
    out = []
    for a in rs1:
        for b in rs2:
            c = tuple(comp_intersect(k, x, y) for k, x, y in zip(signature, a, b))
            if not any(x.is_empty() for x in c):
                out.append(c)
    return _prune(signature, out)


def rect_intersect(S1: RectUnion, S2: RectUnion, limits: Optional[Limits] = None) -> RectUnion:
    _same_signature(S1, S2)
    return RectUnion(S1.signature, _intersect_rects(S1.signature, S1.rects, S2.rects, limits or LIMITS))


def rect_complement(S: RectUnion, limits: Optional[Limits] = None) -> RectUnion:
    """De Morgan: intersect, over all rectangles, the k-rectangle complement of each.

    Cost grows like arity ** rects before pruning; inputs beyond ``limits``
    are refused.
    """
    limits = limits or LIMITS
    sig = S.signature
    if S.arity > limits.max_arity or len(S.rects) > limits.max_rects:
        raise BlowUpLimitExceeded(
            f"complement input has arity {S.arity} and {len(S.rects)} rectangles; "
            f"limits are {limits.max_arity} and {limits.max_rects}")
    acc = (tuple(full(k) for k in sig),)
    for r in S.rects:
        pieces = []
        for i, kind in enumerate(sig):
            comp = comp_complement(kind, r[i])
            if comp.is_empty():
                continue
            pieces.append(tuple(comp if j == i else full(k) for j, k in enumerate(sig)))
        acc = _intersect_rects(sig, acc, tuple(pieces), limits)
        if not acc:
            break
    return RectUnion(sig, acc)


def rect_is_empty(S: RectUnion) -> bool:
    return not normalize(S).rects


def rect_difference(S1, S2, limits=None) -> RectUnion:
    return rect_intersect(S1, rect_complement(S2, limits), limits)


def rect_equal(S1: RectUnion, S2: RectUnion, limits=None) -> bool:
    _same_signature(S1, S2)
    sym = rect_union(rect_difference(S1, S2, limits), rect_difference(S2, S1, limits))
    return rect_is_empty(sym)


# --- morphisms on commutative products --------------------------------------

def _power_cells(M: FiniteMonoid, g: int, kind: str):
    """Cells of one coordinate: (component, constant value of g**n on the cell)."""
    if kind == "int":
        if g not in unit_group(M):
            raise GeneratorNotInvertible(f"image {g} of an int coordinate is not a unit")
        _, d = lasso(M, g)
        cells, x = [], M.unit
        for r in range(d):
            cells.append((PeriodicSet(d, frozenset({r})), x))
            x = M.table[x][g]
        return [(canonicalize_per(c), val) for c, val in cells]
    tail, j = lasso(M, g)
    cycle = j - tail
    powers = [M.unit]
    for _ in range(j):
        powers.append(M.table[powers[-1]][g])
    cells = []
    for n in range(tail):
        cells.append((UltimatelyPeriodicSet.from_predicate(n, 1, lambda m, n=n: m == n), powers[n]))
    for r in range(cycle):
        start = tail + r
        cells.append((
            UltimatelyPeriodicSet.from_predicate(
                tail, cycle, lambda m, s=start: m >= tail and (m - s) % cycle == 0),
            powers[start],
        ))
    return cells


def hom_preimage_to_rectangles(target: FiniteMonoid, gen_images: Sequence[int], accepting,
                               coordinate_kinds: Sequence[str]) -> RectUnion:
    """Rectangles for ``{v : g1**v1 ... gk**vk in accepting}``."""
    gen_images = tuple(gen_images)
    kinds = tuple(coordinate_kinds)
    if len(gen_images) != len(kinds):
        raise SignatureMismatch(f"{len(gen_images)} images for {len(kinds)} coordinates")
    for k in kinds:
        if k not in ("nat", "int"):
            raise SignatureMismatch(f"coordinate kind {k!r} is not nat or int")
    for g in gen_images:
        target.check_element(g)
    accepting = frozenset(accepting)
    t = target.table
    for a in range(len(gen_images)):
        for b in range(a):
            ga, gb = gen_images[a], gen_images[b]
            if t[ga][gb] != t[gb][ga]:
                raise NonCommutativeGenerators(f"images {ga} and {gb} do not commute")
    per_coord = [_power_cells(target, g, k) for g, k in zip(gen_images, kinds)]
    rects = []
    for combo in product(*per_coord):
        value = target.product(val for _, val in combo)
        if value in accepting:
            rects.append(tuple(c for c, _ in combo))
    # cells are pairwise disjoint, so no rectangle can contain another
    return make_rect_union(kinds, rects, subsume=False)


def direct_evaluate(target: FiniteMonoid, gen_images, accepting, v) -> bool:
    """g1**v1 ... gk**vk by repeated multiplication (no lasso arithmetic)."""
    x = target.unit
    for g, n in zip(gen_images, v):
        step = g if n >= 0 else invert(target, g)
        for _ in range(abs(n)):
            x = target.table[x][step]
    return x in accepting


def product_membership_oracle(specs: Sequence[MorphismSpec], v, accepting=None) -> bool:
    """Evaluate the product morphism ``v -> (phi_1(v1), ..., phi_k(vk))`` directly.

    ``accepting`` is a set of tuples of target elements; by default the
    product of the specs' own accepting sets.
    """
    images = []
    for spec, n in zip(specs, v):
        if spec.source == "nat" and n < 0:
            raise ValueError(f"negative value {n} for a nat coordinate")
        M = spec.target
        step = spec.generator if n >= 0 else invert(M, spec.generator)
        x = M.unit
        for _ in range(abs(n)):
            x = M.table[x][step]
        images.append(x)
    if accepting is None:
        return all(x in spec.accepting for x, spec in zip(images, specs))
    return tuple(images) in accepting


def lasso_bound(target: FiniteMonoid, gen_images) -> int:
    """``t + 3 * lcm(cycles)`` for the grid used in cross-checks."""
    tails, cycles = [], []
    for g in gen_images:
        i, j = lasso(target, g)
        tails.append(i)
        cycles.append(j - i)
    return max(tails, default=0) + 3 * math.lcm(*cycles) if cycles else 0

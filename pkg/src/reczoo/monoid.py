"""Finite monoids given by explicit Cayley tables.

Elements are dense indices ``0..size-1``; ``table[i][j]`` is the product
``i*j``.  Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

from .errors import (
    AlreadyHasZero,
    IndexOutOfRange,
    NotAGroup,
    NotAssociative,
    NotInvertible,
    ParseError,
    SizeTooLargeForExhaustive,
    UnitLawFails,
)

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteMonoid:
    size: int
    unit: int
    table: Table
    name: Optional[str] = field(default=None, compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elements: Iterable[int]) -> int:
        acc = self.unit
        for e in elements:
            acc = self.table[acc][e]
        return acc

    def power(self, m: int, n: int) -> int:
        """m**n for n >= 0 by square-and-multiply."""
        if n < 0:
            raise ValueError("negative exponent; use invert() first")
        result, base = self.unit, m
        while n:
            if n & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            n >>= 1
        return result

    def check_element(self, m: int) -> int:
        if not (isinstance(m, int) and 0 <= m < self.size):
            raise IndexOutOfRange(f"element {m!r} not in [0, {self.size})")
        return m

    def elements(self) -> range:
        return range(self.size)

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.size) for j in range(i))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteMonoid{label} size={self.size} unit={self.unit}>"


def validate_monoid(size: int, unit: int, table: Sequence[Sequence[int]], name=None) -> FiniteMonoid:
    if size < 1:
        raise IndexOutOfRange(f"size must be positive, got {size}")
    if not 0 <= unit < size:
        raise IndexOutOfRange(f"unit {unit} not in [0, {size})")
    if len(table) != size or any(len(row) != size for row in table):
        raise IndexOutOfRange(f"table is not {size}x{size}")
    for row in table:
        for x in row:
            if not (isinstance(x, int) and 0 <= x < size):
                raise IndexOutOfRange(f"table entry {x!r} not in [0, {size})")
    t = tuple(tuple(row) for row in table)
    for i in range(size):
        if t[unit][i] != i or t[i][unit] != i:
            raise UnitLawFails(i)
    for i, j, k in product(range(size), repeat=3):
        if t[t[i][j]][k] != t[i][t[j][k]]:
            raise NotAssociative(i, j, k)
    return FiniteMonoid(size, unit, t, name)


def _fast_monoid(size, unit, table, name=None):
    # Internal constructor for tables that are valid by construction.
    return FiniteMonoid(size, unit, tuple(tuple(r) for r in table), name)


def idempotents(M: FiniteMonoid) -> frozenset[int]:
    return frozenset(e for e in M.elements() if M.table[e][e] == e)


def find_zero(M: FiniteMonoid) -> Optional[int]:
    # A one-element monoid has no zero: zero must differ from the unit.
    if M.size == 1:
        return None
    for z in M.elements():
        if all(M.table[z][m] == z == M.table[m][z] for m in M.elements()):
            return z
    return None


def adjoin_zero(M: FiniteMonoid) -> FiniteMonoid:
    if find_zero(M) is not None:
        raise AlreadyHasZero(f"{M!r} already has zero {find_zero(M)}")
    z = M.size
    rows = [list(row) + [z] for row in M.table]
    rows.append([z] * (z + 1))
    name = f"{M.name}^0" if M.name else None
    return _fast_monoid(z + 1, M.unit, rows, name)


def unit_group(M: FiniteMonoid) -> frozenset[int]:
    t, u = M.table, M.unit
    return frozenset(
        g for g in M.elements() if any(t[g][h] == u == t[h][g] for h in M.elements())
    )


def is_group(M: FiniteMonoid) -> bool:
    return len(unit_group(M)) == M.size


def invert(M: FiniteMonoid, g: int) -> int:
    M.check_element(g)
    t, u = M.table, M.unit
    for h in M.elements():
        if t[g][h] == u == t[h][g]:
            return h
    raise NotInvertible(f"element {g} has no inverse in {M!r}")


def element_order(G: FiniteMonoid, g: int) -> int:
    if not is_group(G):
        raise NotAGroup(f"{G!r} is not a group")
    G.check_element(g)
    x, i = g, 1
    while x != G.unit:
        x = G.table[x][g]
        i += 1
    return i


def lasso(M: FiniteMonoid, m: int) -> tuple[int, int]:
    """Return ``(i, j)`` with ``m**i == m**j``, ``i < j``, ``j`` minimal.

    Powers start at exponent 0, so ``i`` is the tail length and ``j - i``
    the cycle length of ``1, m, m^2, ...``.
    """
    seen = {M.unit: 0}
    x, n = M.unit, 0
    while True:
        x = M.table[x][m]
        n += 1
        if x in seen:
            return seen[x], n
        seen[x] = n


def omega_power(M: FiniteMonoid, m: int) -> int:
    """The unique idempotent power of ``m``."""
    M.check_element(m)
    # Lasso over exponents >= 1: first repeat among m^1 .. m^(|M|+1).
    powers = [None, m]
    first = {m: 1}
    i = j = None
    for e in range(2, M.size + 2):
        powers.append(M.table[powers[-1]][m])
        if powers[e] in first:
            i, j = first[powers[e]], e
            break
        first[powers[e]] = e
    assert i is not None, "pigeonhole violated"
    d = j - i
    k = next(k for k in range(i, j) if k % d == 0)
    e = powers[k]
    assert M.table[e][e] == e
    fact = math.factorial(M.size)
    assert fact >= i, "lasso entry exceeds |M|!"
    assert M.power(m, fact) == e
    return e


def divisible_elements(M: FiniteMonoid) -> frozenset[int]:
    """Elements that are ``|M|!``-th powers; all of them are idempotent."""
    fact = math.factorial(M.size)
    result = frozenset(M.power(y, fact) for y in M.elements())
    bad = [x for x in result if M.table[x][x] != x]
    assert not bad, f"non-idempotent divisible elements {bad} in {M!r}"
    return result


def direct_product(M1: FiniteMonoid, M2: FiniteMonoid) -> FiniteMonoid:
    """Component-wise product; pair (a, b) is encoded as ``a*|M2| + b``."""
    n2 = M2.size
    size = M1.size * n2
    rows = []
    for x in range(size):
        a, b = divmod(x, n2)
        rows.append([M1.table[a][c] * n2 + M2.table[b][d] for c in range(M1.size) for d in range(n2)])
    name = f"{M1.name}x{M2.name}" if M1.name and M2.name else None
    return _fast_monoid(size, M1.unit * n2 + M2.unit, rows, name)


def cyclic_group(n: int) -> FiniteMonoid:
    return _fast_monoid(n, 0, [[(i + j) % n for j in range(n)] for i in range(n)], f"Z{n}")


def cyclic_monoid(index: int, period: int) -> FiniteMonoid:
    """Monoid ``<g | g^(index+period) = g^index>`` on exponents 0..index+period-1."""
    size = index + period

    def reduce(e):
        return e if e < size else index + (e - index) % period

    return _fast_monoid(size, 0, [[reduce(i + j) for j in range(size)] for i in range(size)],
                        f"C({index},{period})")


M3 = _fast_monoid(3, 0, [[0, 1, 2], [1, 2, 2], [2, 2, 2]], "M3")
"""``{1, p, 0}`` with ``p*p = 0``; indices 0 = unit, 1 = p, 2 = zero."""

TRIVIAL = _fast_monoid(1, 0, [[0]], "1")


def canonical_form(M: FiniteMonoid) -> Table:
    """Lexicographically least table over relabelings sending the unit to 0."""
    others = [x for x in M.elements() if x != M.unit]
    best = None
    for perm in permutations(range(1, M.size)):
        relabel = {M.unit: 0, **dict(zip(others, perm))}
        inv = {v: k for k, v in relabel.items()}
        t = tuple(
            tuple(relabel[M.table[inv[i]][inv[j]]] for j in range(M.size)) for i in range(M.size)
        )
        if best is None or t < best:
            best = t
    return best


@lru_cache(maxsize=None)
def enumerate_small_monoids(size: int) -> tuple[FiniteMonoid, ...]:
    """All monoids of the given size up to isomorphism (size <= 3)."""
    if size > 3:
        raise SizeTooLargeForExhaustive(f"exhaustive enumeration capped at 3, got {size}")
    seen = {}
    # Fix the unit at 0; its row and column are forced.
    free = [(i, j) for i in range(1, size) for j in range(1, size)]
    for values in product(range(size), repeat=len(free)):
        rows = [[j if i == 0 else (i if j == 0 else None) for j in range(size)] for i in range(size)]
        for (i, j), v in zip(free, values):
            rows[i][j] = v
        try:
            M = validate_monoid(size, 0, rows)
        except (NotAssociative, UnitLawFails):
            continue
        key = canonical_form(M)
        if key not in seen:
            seen[key] = FiniteMonoid(size, 0, key, f"S{size}.{len(seen)}")
    return tuple(seen.values())


def curated_monoids() -> list[FiniteMonoid]:
    groups = [cyclic_group(n) for n in range(2, 7)]
    return groups + [M3] + [adjoin_zero(g) for g in groups]


@lru_cache(maxsize=None)
def _catalog(max_exhaustive_size: int, max_product_size: int) -> tuple[FiniteMonoid, ...]:
    if max_exhaustive_size > 3:
        raise SizeTooLargeForExhaustive(f"exhaustive enumeration capped at 3, got {max_exhaustive_size}")
    base = []
    for n in range(1, max_exhaustive_size + 1):
        base.extend(enumerate_small_monoids(n))
    base.extend(curated_monoids())
    tables = {(M.unit, M.table) for M in base}
    result = list(base)
    nontrivial = [M for M in base if M.size > 1]
    for a in range(len(nontrivial)):
        for b in range(a, len(nontrivial)):
            M1, M2 = nontrivial[a], nontrivial[b]
            if M1.size * M2.size > max_product_size:
                continue
            P = direct_product(M1, M2)
            if (P.unit, P.table) not in tables:
                tables.add((P.unit, P.table))
                result.append(P)
    return tuple(result)


def catalog(max_exhaustive_size: int = 3, max_product_size: int = 12) -> list[FiniteMonoid]:
    """Exhaustive small monoids plus curated groups, M3, zero extensions and products."""
    return list(_catalog(max_exhaustive_size, max_product_size))


# --- .cay text format -------------------------------------------------------

def parse_cay(text: str, name=None) -> FiniteMonoid:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))
    if len(lines) < 2:
        raise ParseError("expected size and unit lines")
    try:
        size = int(lines[0][1])
        unit = int(lines[1][1])
    except ValueError as exc:
        raise ParseError(f"line {lines[0][0]}: {exc}") from None
    rows = []
    for lineno, line in lines[2:]:
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry in {line!r}") from None
        if len(rows[-1]) != size:
            raise ParseError(f"line {lineno}: expected {size} entries, got {len(rows[-1])}")
    if len(rows) != size:
        raise ParseError(f"expected {size} table rows, got {len(rows)}")
    return validate_monoid(size, unit, rows, name)


def format_cay(M: FiniteMonoid) -> str:
    out = []
    if M.name:
        out.append(f"# {M.name}")
    out.append(str(M.size))
    out.append(str(M.unit))
    out.extend(" ".join(map(str, row)) for row in M.table)
    return "\n".join(out) + "\n"


# --- morphisms out of finitely generated monoids ----------------------------

SOURCES = ("free", "nat", "int")


@dataclass(frozen=True)
class MorphismSpec:
    """A morphism into ``target`` fixed by generator images, plus an accepting set.

    ``source`` is ``"nat"`` (generator 1 of (Z>=0, +)), ``"int"`` (generator 1
    of (Z, +); its image must be invertible) or ``"free"`` (one image per letter).
    """

    source: str
    target: FiniteMonoid
    images: tuple[int, ...]
    accepting: frozenset[int]

    def __post_init__(self):
        from .errors import GeneratorNotInvertible

        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        object.__setattr__(self, "images", tuple(self.images))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if self.source in ("nat", "int") and len(self.images) != 1:
            raise ValueError(f"source {self.source} has one generator, got {len(self.images)} images")
        for g in self.images:
            self.target.check_element(g)
        for a in self.accepting:
            self.target.check_element(a)
        if self.source == "int" and self.images[0] not in unit_group(self.target):
            raise GeneratorNotInvertible(f"image {self.images[0]} of 1 is not a unit of {self.target!r}")

    @property
    def generator(self) -> int:
        return self.images[0]

    def evaluate(self, n: int) -> int:
        """Image of ``n`` for the one-generator sources."""
        g = self.generator
        if n < 0:
            if self.source != "int":
                raise ValueError("negative argument for a nat source")
            return self.target.power(invert(self.target, g), -n)
        return self.target.power(g, n)

    def evaluate_word(self, word: Iterable[int]) -> int:
        return self.target.product(self.images[a] for a in word)

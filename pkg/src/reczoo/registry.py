"""Closed registry of number monoids and their finite Rec-lattices.

Real and complex numbers never appear as values.  A subset of a carrier is
described by the *regions* it covers: ``zero``, ``pos``, ``neg`` (real
signs) and ``nonreal``.  Every set handled here is a union of regions, so
Boolean operations are plain set operations on region sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Optional

from .errors import InadmissibleAtom, RecNotFinite, SourceHasZero, UnknownMonoid
from .monoid import TRIVIAL, FiniteMonoid, adjoin_zero, cyclic_group

ZERO, POS, NEG, NONREAL = "zero", "pos", "neg", "nonreal"
REGIONS = (ZERO, NEG, POS, NONREAL)

# Atom order is the registry's documented lattice order.
ATOMS = ("empty", "zero", "negative", "nonpositive", "positive", "nonnegative", "nonzero", "all")

_ATOM_BASE = {
    "zero": frozenset({ZERO}),
    "negative": frozenset({NEG}),
    "nonpositive": frozenset({ZERO, NEG}),
    "positive": frozenset({POS}),
    "nonnegative": frozenset({ZERO, POS}),
}

# Symbolic witnesses used in case analyses; the tag alone decides the region.
CASES = {
    "zero": ZERO,
    "pos-rational": POS,
    "pos-irrational": POS,
    "neg-rational": NEG,
    "neg-irrational": NEG,
    "nonreal": NONREAL,
}


@dataclass(frozen=True)
class MonoidEntry:
    id: str
    label: str  # carrier as printed, e.g. "ℚ≥0"
    symbol: str  # ambient number symbol, e.g. "ℚ"
    op: str  # "add" or "mul"
    regions: frozenset
    arbitrarily_divisible: bool
    is_group: bool
    has_zero: bool
    rec_is_finite: bool
    irrationals: bool = False
    structure: tuple = ()
    divisibility_note: str = ""
    witness: Optional[tuple] = None  # (m, k): m has no k-th root
    served_by: str = ""

    def cases(self):
        out = []
        for tag, region in CASES.items():
            if region not in self.regions:
                continue
            if tag.endswith("irrational") and not self.irrationals:
                continue
            out.append(tag)
        return out


def _e(id, label, symbol, op, regions, div, grp, zero, fin, **kw):
    return MonoidEntry(id, label, symbol, op, frozenset(regions), div, grp, zero, fin, **kw)


_R3 = (ZERO, POS, NEG)
_C = (ZERO, POS, NEG, NONREAL)

ENTRIES = [
    _e("add:Z>=0", "ℤ≥0", "ℤ", "add", (ZERO, POS), False, False, False, False,
       structure=("infinite",), witness=(1, 2), served_by="ultimately periodic sets",
       divisibility_note="1 = x + x has no solution in the non-negative integers"),
    _e("add:Z", "ℤ", "ℤ", "add", _R3, False, True, False, False,
       structure=("infinite",), witness=(1, 2), served_by="periodic sets",
       divisibility_note="1 = x + x has no integer solution"),
    _e("add:Q>=0", "ℚ≥0", "ℚ", "add", (ZERO, POS), True, False, False, True,
       structure=("divisible-monoid",), divisibility_note="k-th root of r is r/k"),
    _e("add:Q", "ℚ", "ℚ", "add", _R3, True, True, False, True,
       structure=("divisible-group",), divisibility_note="k-th root of r is r/k"),
    _e("add:R>=0", "ℝ≥0", "ℝ", "add", (ZERO, POS), True, False, False, True, irrationals=True,
       structure=("divisible-monoid",), divisibility_note="k-th root of r is r/k"),
    _e("add:R", "ℝ", "ℝ", "add", _R3, True, True, False, True, irrationals=True,
       structure=("divisible-group",), divisibility_note="k-th root of r is r/k"),
    _e("add:C", "ℂ", "ℂ", "add", _C, True, True, False, True, irrationals=True,
       structure=("divisible-group",), divisibility_note="k-th root of z is z/k"),
    _e("mul:N!=0", "ℕ∖{0}", "ℕ", "mul", (POS,), False, False, False, False,
       structure=("infinite",), witness=(2, 2), served_by="recognizable subsets of N*",
       divisibility_note="2 is not a square of a natural"),
    _e("mul:Z", "ℤ", "ℤ", "mul", _R3, False, False, True, False,
       structure=("infinite",), witness=(2, 2), served_by="zero extension of sign x N*",
       divisibility_note="2 is not a square of an integer"),
    _e("mul:Z!=0", "ℤ∖{0}", "ℤ", "mul", (POS, NEG), False, False, False, False,
       structure=("infinite",), witness=(-1, 2), served_by="sign x recognizable subsets of N*",
       divisibility_note="squares are positive, so -1 has no square root"),
    _e("mul:Z>0", "ℤ>0", "ℤ", "mul", (POS,), False, False, False, False,
       structure=("infinite",), witness=(2, 2), served_by="recognizable subsets of N*",
       divisibility_note="2 is not a square of an integer"),
    _e("mul:Q>0", "ℚ>0", "ℚ", "mul", (POS,), False, True, False, False,
       structure=("infinite",), witness=(2, 2), served_by="recognizable subsets of Z*",
       divisibility_note="2 has an odd exponent of 2, so it is not a rational square"),
    _e("mul:Q!=0", "ℚ∖{0}", "ℚ", "mul", (POS, NEG), False, True, False, False,
       structure=("infinite",), witness=(-1, 2), served_by="sign x recognizable subsets of Z*",
       divisibility_note="squares are positive, so -1 has no square root"),
    _e("mul:Q", "ℚ", "ℚ", "mul", _R3, False, False, True, False,
       structure=("infinite",), witness=(2, 2), served_by="zero extension of sign x Z*",
       divisibility_note="2 has an odd exponent of 2, so it is not a rational square"),
    _e("mul:R>0", "ℝ>0", "ℝ", "mul", (POS,), True, True, False, True, irrationals=True,
       structure=("divisible-group",), divisibility_note="k-th root of r is the positive real r^(1/k)"),
    _e("mul:R!=0", "ℝ∖{0}", "ℝ", "mul", (POS, NEG), False, True, False, True, irrationals=True,
       structure=("sign-product", "mul:R>0"), witness=(-1, 2),
       divisibility_note="squares are positive, so -1 has no square root"),
    _e("mul:R", "ℝ", "ℝ", "mul", _R3, False, False, True, True, irrationals=True,
       structure=("zero-extension", "mul:R!=0"), witness=(-1, 2),
       divisibility_note="squares are non-negative, so -1 has no square root"),
    _e("mul:C!=0", "ℂ∖{0}", "ℂ", "mul", (POS, NEG, NONREAL), True, True, False, True, irrationals=True,
       structure=("divisible-group",), divisibility_note="every non-zero complex has k k-th roots"),
    _e("mul:C", "ℂ", "ℂ", "mul", _C, True, False, True, True, irrationals=True,
       structure=("zero-extension", "mul:C!=0"), divisibility_note="0 is its own root; others as in ℂ∖{0}"),
    _e("sign:Z2", "ℤ₂", "ℤ₂", "mul", (POS, NEG), False, True, False, True,
       structure=("finite",), witness=(-1, 2), divisibility_note="(+1)^2 = (-1)^2 = +1"),
]

REGISTRY = {e.id: e for e in ENTRIES}

ZERO_EXTENSION = {"mul:C!=0": "mul:C", "mul:R!=0": "mul:R", "mul:Q!=0": "mul:Q", "mul:Z!=0": "mul:Z"}


def entry(monoid_id: str) -> MonoidEntry:
    try:
        return REGISTRY[monoid_id]
    except KeyError:
        raise UnknownMonoid(f"unknown monoid id {monoid_id!r}; known: {', '.join(REGISTRY)}") from None


def atom_regions(monoid_id: str, atom: str) -> frozenset:
    """Regions covered by ``atom`` inside the carrier of ``monoid_id``."""
    e = entry(monoid_id)
    if atom == "empty":
        return frozenset()
    if atom == "all":
        return e.regions
    if atom == "nonzero":
        return e.regions - {ZERO}
    if atom not in _ATOM_BASE:
        raise InadmissibleAtom(f"unknown atom {atom!r}; known: {', '.join(ATOMS)}")
    return _ATOM_BASE[atom] & e.regions


@lru_cache(maxsize=None)
def admissible_atoms(monoid_id: str) -> tuple[str, ...]:
    """Atoms naming distinct subsets of the carrier; the first name wins."""
    e = entry(monoid_id)
    out, seen = [], set()
    for atom in ATOMS:
        if atom in _ATOM_BASE and not _ATOM_BASE[atom] <= e.regions:
            continue
        if atom == "nonzero" and ZERO not in e.regions:
            continue
        regions = atom_regions(monoid_id, atom)
        if atom != "all" and regions == e.regions:
            continue
        if regions in seen:
            continue
        seen.add(regions)
        out.append(atom)
    return tuple(out)


@dataclass(frozen=True)
class SymbolicSet:
    monoid: str
    atom: str

    def __post_init__(self):
        if self.atom not in admissible_atoms(self.monoid):
            raise InadmissibleAtom(
                f"atom {self.atom!r} is not admissible for {self.monoid}; "
                f"admissible: {', '.join(admissible_atoms(self.monoid))}")

    @property
    def regions(self) -> frozenset:
        return atom_regions(self.monoid, self.atom)

    def contains_case(self, case: str) -> bool:
        return CASES[case] in self.regions

    def __contains__(self, value) -> bool:
        return region_of(value) in self.regions

    def is_empty(self) -> bool:
        return not self.regions

    def label(self) -> str:
        return set_label(self.monoid, self.regions)

    def __repr__(self):
        return f"SymbolicSet({self.monoid}, {self.atom})"


def region_of(value) -> str:
    """Region of a rational value or of a case tag."""
    if isinstance(value, str):
        if value in CASES:
            return CASES[value]
        if value in REGIONS:
            return value
        raise ValueError(f"unknown case tag {value!r}")
    q = Fraction(value)
    return ZERO if q == 0 else (POS if q > 0 else NEG)


def from_regions(monoid_id: str, regions) -> SymbolicSet:
    regions = frozenset(regions)
    for atom in admissible_atoms(monoid_id):
        if atom_regions(monoid_id, atom) == regions:
            return SymbolicSet(monoid_id, atom)
    raise InadmissibleAtom(f"no atom of {monoid_id} covers regions {sorted(regions)}")


def set_label(monoid_id: str, regions) -> str:
    e = entry(monoid_id)
    regions = frozenset(regions)
    if not regions:
        return "∅"
    if regions == e.regions:
        return e.label
    if e.id == "sign:Z2":
        return "{" + ", ".join(s for s, r in (("+1", POS), ("-1", NEG)) if r in regions) + "}"
    if regions == {ZERO}:
        return "{0}"
    s = e.symbol
    names = {
        frozenset({NEG}): f"{s}<0",
        frozenset({ZERO, NEG}): f"{s}≤0",
        frozenset({POS}): f"{s}>0",
        frozenset({ZERO, POS}): f"{s}≥0",
    }
    if regions in names:
        return names[regions]
    if regions == e.regions - {ZERO}:
        return f"{s}∖{{0}}"
    return "{" + ", ".join(sorted(regions)) + "}"


# --- hard-coded lattices ----------------------------------------------------

_TRIVIAL_LATTICE = ("empty", "all")
_HALF_LINE = ("empty", "zero", "positive", "all")
_SIGNS = ("empty", "negative", "positive", "all")

LATTICES = {
    "add:Q": _TRIVIAL_LATTICE,
    "add:R": _TRIVIAL_LATTICE,
    "add:C": _TRIVIAL_LATTICE,
    "add:Q>=0": _HALF_LINE,
    "add:R>=0": _HALF_LINE,
    "mul:R>0": _TRIVIAL_LATTICE,
    "mul:R!=0": _SIGNS,
    "mul:R": ("empty", "zero", "negative", "nonpositive", "positive", "nonnegative", "nonzero", "all"),
    "mul:C!=0": _TRIVIAL_LATTICE,
    "mul:C": ("empty", "zero", "nonzero", "all"),
    "sign:Z2": _SIGNS,
}


def rec_lattice(monoid_id: str) -> list[SymbolicSet]:
    e = entry(monoid_id)
    if not e.rec_is_finite:
        raise RecNotFinite(f"Rec({monoid_id}) is infinite ({e.served_by})")
    return [SymbolicSet(monoid_id, a) for a in LATTICES[monoid_id]]


# --- recognizers ------------------------------------------------------------

SEMILATTICE = FiniteMonoid(2, 0, ((0, 1), (1, 1)), "U1")
_Z2 = cyclic_group(2)


@dataclass(frozen=True)
class Recognizer:
    """A finite monoid plus the region -> element assignment of a morphism."""

    monoid: FiniteMonoid
    assignment: dict = field(hash=False)
    accepting: frozenset = frozenset()

    def image(self, value) -> int:
        return self.assignment[region_of(value)]

    def accepts(self, value) -> bool:
        return self.image(value) in self.accepting


def _base_recognizer(monoid_id):
    e = entry(monoid_id)
    kind = e.structure[0]
    if kind == "divisible-group":
        return TRIVIAL, {r: 0 for r in e.regions}
    if kind == "divisible-monoid":
        return SEMILATTICE, {ZERO: 0, POS: 1}
    if kind in ("sign-product", "finite"):
        return _Z2, {POS: 0, NEG: 1}
    if kind == "zero-extension":
        base, assign = _base_recognizer(e.structure[1])
        M0 = adjoin_zero(base)
        return M0, {**assign, ZERO: base.size}
    raise RecNotFinite(monoid_id)


def recognizer_for(s: SymbolicSet) -> Recognizer:
    M, assign = _base_recognizer(s.monoid)
    accepting = frozenset(assign[r] for r in s.regions)
    rec = Recognizer(M, assign, accepting)
    # the preimage must be exactly s, case by case
    for case in entry(s.monoid).cases():
        assert rec.accepts(case) == s.contains_case(case), (s, case)
    return rec


@dataclass
class RecognizabilityResult:
    recognizable: bool
    recognizer: Optional[Recognizer]
    lattice: list


def is_recognizable(s: SymbolicSet) -> RecognizabilityResult:
    lattice = rec_lattice(s.monoid)
    if s in lattice:
        return RecognizabilityResult(True, recognizer_for(s), lattice)
    return RecognizabilityResult(False, None, lattice)


def region_products(monoid_id: str, a: str, b: str) -> frozenset:
    """Regions that ``x . y`` can land in, for ``x`` in region a and ``y`` in region b."""
    e = entry(monoid_id)
    if e.op == "add":
        if a == ZERO:
            out = {b}
        elif b == ZERO:
            out = {a}
        elif a == b and a in (POS, NEG):
            out = {a}
        elif {a, b} == {POS, NEG}:
            out = {ZERO, POS, NEG}
        elif NONREAL in (a, b) and a != b:
            out = {NONREAL}
        else:
            out = {ZERO, POS, NEG, NONREAL}
    else:
        if ZERO in (a, b):
            out = {ZERO}
        elif a == b and a in (POS, NEG):
            out = {POS}
        elif {a, b} == {POS, NEG}:
            out = {NEG}
        elif NONREAL in (a, b) and a != b:
            out = {NONREAL}
        else:
            out = {POS, NEG, NONREAL}
    return frozenset(out) & e.regions


def recognizer_is_morphism(monoid_id: str) -> bool:
    """Check the region assignment against every possible product of regions."""
    e = entry(monoid_id)
    M, assign = _base_recognizer(monoid_id)
    unit_region = ZERO if e.op == "add" else POS
    if assign[unit_region] != M.unit:
        return False
    for a in e.regions:
        for b in e.regions:
            for c in region_products(monoid_id, a, b):
                if M.table[assign[a]][assign[b]] != assign[c]:
                    return False
    return True


# --- derived lattices and the zero-adjunction law ---------------------------

def adjoin_zero_rec(lattice: list[SymbolicSet], monoid_id: Optional[str] = None) -> list[SymbolicSet]:
    """Rec of M with a zero adjoined: every R and every R ∪ {0}."""
    ids = {s.monoid for s in lattice}
    if monoid_id is None:
        if len(ids) != 1:
            raise ValueError("lattice is empty or mixes monoids; pass monoid_id")
        (monoid_id,) = ids
    e = entry(monoid_id)
    if e.has_zero:
        raise SourceHasZero(f"{monoid_id} already has a zero")
    if monoid_id not in ZERO_EXTENSION:
        raise UnknownMonoid(f"{monoid_id} has no zero extension in the registry")
    target = ZERO_EXTENSION[monoid_id]
    out = []
    for s in lattice:
        for regions in (s.regions, s.regions | {ZERO}):
            t = from_regions(target, regions)
            if t not in out:
                out.append(t)
    return sorted(out, key=lambda s: ATOMS.index(s.atom))


def derive_lattice(monoid_id: str) -> list[SymbolicSet]:
    """Rebuild a lattice from the structure rules instead of the hard-coded table."""
    e = entry(monoid_id)
    kind = e.structure[0]
    if kind == "divisible-group":
        # all of M maps to the unit
        regions_list = [frozenset(), e.regions]
    elif kind == "divisible-monoid":
        # image is {phi(0), phi(1)}; every positive element maps to phi(1)
        regions_list = [frozenset(), frozenset({ZERO}), frozenset({POS}), e.regions]
    elif kind == "finite":
        regions = sorted(e.regions)
        regions_list = [frozenset(c) for c in _powerset(regions)]
    elif kind == "sign-product":
        pos_lattice = derive_lattice(e.structure[1])
        regions_list = set()
        # finite unions of rectangles R x T, R in Rec(positive part), T a sign subset
        rects = [(bool(s.regions), t) for s in pos_lattice for t in _powerset([POS, NEG])]
        for chosen in _powerset(rects):
            covered = set()
            for nonempty, signs in chosen:
                if nonempty:
                    covered |= set(signs)
            regions_list.add(frozenset(covered))
        regions_list = list(regions_list)
    elif kind == "zero-extension":
        return adjoin_zero_rec(derive_lattice(e.structure[1]), e.structure[1])
    else:
        raise RecNotFinite(f"Rec({monoid_id}) is infinite ({e.served_by})")
    sets = {from_regions(monoid_id, r) for r in regions_list}
    return sorted(sets, key=lambda s: ATOMS.index(s.atom))


def _powerset(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield tuple(x for i, x in enumerate(items) if mask >> i & 1)


def lattice_is_closed(monoid_id: str) -> bool:
    lattice = {s.regions for s in rec_lattice(monoid_id)}
    carrier = entry(monoid_id).regions
    return all(
        (a | b) in lattice and (a & b) in lattice and (carrier - a) in lattice
        for a in lattice for b in lattice
    )


def rational_root(r, k: int) -> Fraction:
    """The additive k-th root of a non-negative rational: r/k."""
    r = Fraction(r)
    if r < 0 or k < 1:
        raise ValueError(f"need r >= 0 and k >= 1, got r={r}, k={k}")
    return r / k


@dataclass
class AuditRow:
    id: str
    arbitrarily_divisible: bool
    is_group: bool
    has_zero: bool
    rec_is_finite: bool
    justification: str
    witness: Optional[tuple]
    consistent: bool
    problems: list


def _square_regions(monoid_id):
    return {r: region_products(monoid_id, r, r) for r in entry(monoid_id).regions}


def divisibility_flag_audit() -> list[AuditRow]:
    rows = []
    for e in ENTRIES:
        problems = []
        if e.arbitrarily_divisible and e.witness:
            problems.append("divisible entry carries a non-divisibility witness")
        if not e.arbitrarily_divisible and not e.witness:
            problems.append("non-divisible entry lacks a witness")
        if e.witness:
            m, k = e.witness
            if e.op == "add":
                if Fraction(m, k).denominator == 1:
                    problems.append(f"{m}/{k} is an integer")
            elif m < 0:
                # k = 2: squares only land in the regions listed by the product table
                squares = set().union(*_square_regions(e.id).values())
                if NEG in squares:
                    problems.append("a square can be negative")
            else:
                from .sequences import rat_factorize

                if all(x % k == 0 for x in rat_factorize(Fraction(m)).entries):
                    problems.append(f"{m} is a perfect {k}-th power")
        if e.op == "add" and e.arbitrarily_divisible and e.id in ("add:Q>=0", "add:Q"):
            for r in (Fraction(0), Fraction(3, 2), Fraction(-5, 7), Fraction(1)):
                if r < 0 and e.id == "add:Q>=0":
                    continue
                for k in range(1, 6):
                    root = rational_root(abs(r), k) * (1 if r >= 0 else -1)
                    if root * k != r:
                        problems.append(f"root of {r} for k={k} failed")
        if e.has_zero != (e.op == "mul" and ZERO in e.regions):
            problems.append("has_zero flag disagrees with the carrier")
        if e.is_group and e.has_zero:
            problems.append("a nontrivial group cannot have a zero")
        if e.rec_is_finite != (e.id in LATTICES):
            problems.append("rec_is_finite flag disagrees with the lattice table")
        if e.arbitrarily_divisible and e.is_group and LATTICES.get(e.id) != _TRIVIAL_LATTICE:
            problems.append("divisible group with a nontrivial lattice")
        rows.append(AuditRow(e.id, e.arbitrarily_divisible, e.is_group, e.has_zero, e.rec_is_finite,
                             e.divisibility_note, e.witness, not problems, problems))
    return rows


# --- Table 1 ----------------------------------------------------------------

TABLE1_ROWS = ("add:Z", "add:Q", "add:R", "add:C", "add:Z>=0", "add:Q>=0", "add:R>=0")
# Table 1 lists the half-line lattices as {∅, X≥0, {0}, X>0}.
TABLE1_ORDER = ("empty", "all", "zero", "positive")
MULTIPLICATIVE_ROWS = ("mul:R>0", "mul:R!=0", "mul:R", "mul:C!=0", "mul:C")


def lattice_label(monoid_id: str, order=None) -> str:
    e = entry(monoid_id)
    if not e.rec_is_finite:
        return e.served_by
    atoms = list(LATTICES[monoid_id])
    if order:
        atoms.sort(key=order.index)
    return "{" + ", ".join(set_label(monoid_id, atom_regions(monoid_id, a)) for a in atoms) + "}"


def render_table1() -> str:
    lines = ["Recognizable subsets of additive monoids (X, +, 0)", ""]
    rows = [("X", "Rec(X)")]
    rows += [(entry(i).label, lattice_label(i, TABLE1_ORDER)) for i in TABLE1_ROWS]
    width = max(len(r[0]) for r in rows) + 2
    lines += [f"{a.ljust(width)}{b}".rstrip() for a, b in rows]
    lines += ["", "Recognizable subsets of multiplicative monoids (X, ×, 1)", ""]
    rows = [("X", "Rec(X)")] + [(entry(i).label, lattice_label(i)) for i in MULTIPLICATIVE_ROWS]
    width = max(len(r[0]) for r in rows) + 2
    lines += [f"{a.ljust(width)}{b}".rstrip() for a, b in rows]
    return "\n".join(lines) + "\n"

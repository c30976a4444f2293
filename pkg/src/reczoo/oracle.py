"""Brute-force cross-checks of the symbolic machinery.

Each check compares a symbolic construction against direct evaluation and
returns a :class:`CheckRecord`.  Every check also has one fault-injection
mode that corrupts the construction under test, so a passing check is known
to be able to fail.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import random
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable, Optional

import numpy as np

from . import additive as ad
from . import registry as reg
from .errors import CertificateExhausted
from .monoid import (
    M3,
    FiniteMonoid,
    MorphismSpec,
    catalog,
    cyclic_group,
    direct_product,
    divisible_elements,
    invert,
    omega_power,
    unit_group,
)
from .rect import (
    comp_member,
    hom_preimage_to_rectangles,
    lasso_bound,
    rect_complement,
    rect_intersect,
    rect_union,
)
from .sequences import (
    ExpSeq,
    GeneratorPartition,
    nat_factorize,
    nat_recompose,
    project,
    rat_factorize,
    rat_recompose,
    recseq_full,
    recseq_member,
    seq_add,
)
from . import witnesses as wt

DEFAULT_SEED = 20240607
SEED_ENV = "RECZOO_SEED"


def default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    if value is None:
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {value!r}") from None


class ConfigError(Exception):
    """Bad verification configuration (exit status 2)."""


@dataclass
class CheckRecord:
    claim_id: str
    anchor: str
    params: dict
    instances: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    def fail(self, **details):
        if len(self.failures) < 20:
            self.failures.append({k: _plain(v) for k, v in details.items()})
        else:
            self.notes["suppressed_failures"] = self.notes.get("suppressed_failures", 0) + 1

    def to_dict(self):
        d = asdict(self)
        d["status"] = self.status
        d["wall_time"] = round(self.wall_time, 3)
        return d


def _plain(v):
    if isinstance(v, ExpSeq):
        return list(v.entries)
    if isinstance(v, (frozenset, set)):
        return sorted(v)
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (int, float, str, bool, list, dict)) or v is None:
        return v
    return repr(v)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    fault: Optional[str]
    checks: list

    @property
    def status(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def check(self, claim_id) -> CheckRecord:
        return next(c for c in self.checks if c.claim_id == claim_id)

    def to_dict(self):
        return {"suite": self.suite, "seed": self.seed, "fault": self.fault, "status": self.status,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_tsv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, delimiter="\t", lineterminator="\n")
        w.writerow(["claim_id", "status", "instances", "failures", "wall_time", "anchor"])
        for c in self.checks:
            w.writerow([c.claim_id, c.status, c.instances, len(c.failures), f"{c.wall_time:.3f}", c.anchor])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  seed {self.seed}" + (f"  fault {self.fault}" if self.fault else "")]
        for c in self.checks:
            lines.append(f"{c.status.upper():4}  {c.claim_id:<28} {c.instances:>9} instances  "
                         f"{len(c.failures):>3} failures  {c.wall_time:6.2f}s")
            for f in c.failures[:3]:
                lines.append(f"      counterexample: {json.dumps(f, ensure_ascii=False, sort_keys=True)}")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines) + "\n"


def _rng(seed: int, claim: str) -> random.Random:
    return random.Random(f"{seed}:{claim}")


def _timed(fn):
    def run(*args, **kwargs):
        start = time.perf_counter()
        rec = fn(*args, **kwargs)
        rec.wall_time = time.perf_counter() - start
        return rec

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _powers(M: FiniteMonoid, g: int, n: int) -> list[int]:
    out, x = [], M.unit
    for _ in range(n + 1):
        out.append(x)
        x = M.table[x][g]
    return out


def _corrupt(M: FiniteMonoid, g: int) -> FiniteMonoid:
    """Copy of ``M`` with ``g*g`` redirected; no validation on purpose."""
    rows = [list(r) for r in M.table]
    rows[g][g] = g if rows[g][g] != g else M.unit
    return FiniteMonoid(M.size, M.unit, tuple(tuple(r) for r in rows), f"corrupt({M.name})")


def _accepting_subsets(orbit, rng, cap_bits=8, samples=48):
    orbit = sorted(orbit)
    if len(orbit) <= cap_bits:
        for mask in range(1 << len(orbit)):
            yield frozenset(x for i, x in enumerate(orbit) if mask >> i & 1)
    else:
        yield frozenset()
        yield frozenset(orbit)
        for _ in range(samples):
            yield frozenset(x for x in orbit if rng.random() < 0.5)


def all_up_sets(max_threshold: int, max_period: int):
    """Every canonical UP set with threshold and period within the bounds."""
    seen = set()
    for n0 in range(max_threshold + 1):
        for p in range(1, max_period + 1):
            for pmask in range(1 << (n0 + 1)):
                prefix = frozenset(i for i in range(n0 + 1) if pmask >> i & 1)
                for rmask in range(1 << p):
                    u = ad.canonicalize_up(ad.UltimatelyPeriodicSet(
                        n0, p, prefix, frozenset(r for r in range(p) if rmask >> r & 1)))
                    if u.threshold == n0 and u.period == p and u not in seen:
                        seen.add(u)
                        yield u


# --- checks ------------------------------------------------------------------


@_timed
def verify_up_characterization(max_monoid_size=3, max_n=60, max_threshold=6, max_period=6,
                               seed=DEFAULT_SEED, fault=False, boolean_pairs=200, boolean_range=1000):
    rec = CheckRecord("up_characterization", "Rec(N,+) equals the ultimately periodic sets",
                      dict(max_monoid_size=max_monoid_size, max_n=max_n, max_threshold=max_threshold,
                           max_period=max_period, boolean_pairs=boolean_pairs, boolean_range=boolean_range))
    rng = _rng(seed, rec.claim_id)
    comparisons = 0
    for M in catalog(max_monoid_size):
        for g in M.elements():
            powers = _powers(M, g, max_n)
            for acc in _accepting_subsets(set(powers), rng):
                target = _corrupt(M, g) if fault else M
                u = ad.up_from_morphism(MorphismSpec("nat", target, (g,), acc))
                rec.instances += 1
                if not u.is_canonical():
                    rec.fail(kind="noncanonical", monoid=M.name, g=g, accepting=acc)
                for n in range(max_n + 1):
                    comparisons += 1
                    if ad.up_member(u, n) != (powers[n] in acc):
                        rec.fail(kind="membership", monoid=M.name, g=g, accepting=acc, n=n)
                        break
    round_trips = 0
    for u in all_up_sets(max_threshold, max_period):
        spec = ad.up_to_syntactic_morphism(u)
        back = ad.up_from_morphism(spec)
        round_trips += 1
        if back != u or spec.target.size > u.threshold + 1 + u.period:
            rec.fail(kind="round_trip", set=repr(u), got=repr(back))
    sets = list(all_up_sets(3, 4))
    for _ in range(boolean_pairs):
        a, b = rng.choice(sets), rng.choice(sets)
        ops = ((ad.up_union(a, b), lambda x, y: x or y), (ad.up_intersect(a, b), lambda x, y: x and y))
        for n in range(boolean_range + 1):
            ma, mb = ad.up_member(a, n), ad.up_member(b, n)
            bad = [s for s, op in ops if ad.up_member(s, n) != op(ma, mb)]
            if ad.up_member(ad.up_complement(a), n) == ma:
                bad.append("complement")
            if bad:
                rec.fail(kind="boolean", a=repr(a), b=repr(b), n=n)
                break
    rec.instances += round_trips + boolean_pairs
    rec.notes.update(membership_comparisons=comparisons, round_trips=round_trips)
    if comparisons == 0:
        rec.notes["vacuous"] = True
    return rec


@_timed
def verify_periodic_characterization(max_group_order=6, value_range=60, seed=DEFAULT_SEED, fault=False,
                                     boolean_pairs=200, boolean_range=500):
    rec = CheckRecord("periodic_characterization", "Rec(Z,+) equals the periodic sets",
                      dict(max_group_order=max_group_order, value_range=value_range,
                           boolean_pairs=boolean_pairs, boolean_range=boolean_range))
    rng = _rng(seed, rec.claim_id)
    groups = [cyclic_group(n) for n in range(1, max_group_order + 1)]
    groups += [direct_product(cyclic_group(a), cyclic_group(b))
               for a in range(2, max_group_order + 1) for b in range(a, max_group_order + 1)
               if a * b <= max_group_order]
    groups += [M for M in catalog() if M.size <= 12 and len(unit_group(M)) < M.size]
    for G in groups:
        for g in sorted(unit_group(G)):
            inv = g if fault else invert(G, g)
            pos, neg = _powers(G, g, value_range), _powers(G, inv, value_range)
            orbit = set(pos)
            for acc in _accepting_subsets(orbit, rng, cap_bits=6):
                s = ad.per_from_morphism(MorphismSpec("int", G, (g,), acc))
                rec.instances += 1
                if len(orbit) % s.period:
                    rec.fail(kind="period", group=G.name, g=g, accepting=acc, period=s.period)
                for n in range(-value_range, value_range + 1):
                    direct = (pos[n] if n >= 0 else neg[-n]) in acc
                    if ad.per_member(s, n) != direct:
                        rec.fail(kind="membership", group=G.name, g=g, accepting=acc, n=n)
                        break
    for p in range(1, 7):
        for mask in range(1 << p):
            s = ad.canonicalize_per(ad.PeriodicSet(p, frozenset(r for r in range(p) if mask >> r & 1)))
            back = ad.per_from_morphism(ad.per_to_syntactic_morphism(s))
            rec.instances += 1
            if back != s:
                rec.fail(kind="round_trip", set=repr(s), got=repr(back))
    for _ in range(boolean_pairs):
        a = ad.per_set(rng.randint(1, 6), [r for r in range(6) if rng.random() < 0.5])
        b = ad.per_set(rng.randint(1, 6), [r for r in range(6) if rng.random() < 0.5])
        u, i, c = ad.per_union(a, b), ad.per_intersect(a, b), ad.per_complement(a)
        rec.instances += 1
        for n in range(-boolean_range, boolean_range + 1):
            ma, mb = n in a, n in b
            if (n in u) != (ma or mb) or (n in i) != (ma and mb) or (n in c) == ma:
                rec.fail(kind="boolean", a=repr(a), b=repr(b), n=n)
                break
    return rec


@_timed
def verify_divisibility_lemma(max_monoid_size=3, fault=False):
    rec = CheckRecord("divisibility_lemma", "finite images of divisible monoids are idempotent",
                      dict(max_monoid_size=max_monoid_size))
    for M in catalog(max_monoid_size):
        fact = math.factorial(M.size)
        for m in M.elements():
            e = m if fault else omega_power(M, m)
            rec.instances += 1
            if M.mul(e, e) != e:
                rec.fail(kind="omega_not_idempotent", monoid=M.name, element=m, omega=e)
            if M.power(m, fact) != e:
                rec.fail(kind="omega_mismatch", monoid=M.name, element=m, omega=e)
        div = divisible_elements(M)
        if any(M.mul(x, x) != x for x in div):
            rec.fail(kind="divisible_not_idempotent", monoid=M.name, elements=div)
    rec.notes["M3_divisible"] = sorted(divisible_elements(M3))
    return rec


def _grid_values(M, g, kind, lo, hi):
    """Image of g**n for n in lo..hi as a numpy array."""
    pos = _powers(M, g, max(hi, 0))
    if kind == "nat":
        return np.asarray(pos[lo:hi + 1], dtype=np.int64)
    neg = _powers(M, invert(M, g), -lo)
    return np.asarray([neg[-n] if n < 0 else pos[n] for n in range(lo, hi + 1)], dtype=np.int64)


def _rect_mask(S, axes):
    """Membership of every grid point in the rectangle union, via outer products."""
    shape = tuple(len(a) for a in axes)
    out = np.zeros(shape, dtype=bool)
    for r in S.rects:
        cell = np.ones(shape, dtype=bool)
        for d, (kind, comp, axis) in enumerate(zip(S.signature, r, axes)):
            mask = np.asarray([comp_member(kind, comp, int(n)) for n in axis])
            view = [1] * len(shape)
            view[d] = len(axis)
            cell &= mask.reshape(view)
        out |= cell
    return out


def random_mezei_instance(rng: random.Random, monoids, k_max=3):
    M = rng.choice(monoids)
    k = rng.randint(1, k_max)
    images, kinds = [], []
    units = sorted(unit_group(M))
    for _ in range(k):
        if rng.random() < 0.3:
            images.append(rng.choice(units))
            kinds.append("int")
        else:
            images.append(rng.randrange(M.size))
            kinds.append("nat")
    accepting = frozenset(x for x in M.elements() if rng.random() < 0.5)
    return M, tuple(images), tuple(kinds), accepting


@_timed
def verify_mezei(k_max=3, specs=200, seed=DEFAULT_SEED, fault=False, grid_cap=None, law_pairs=20):
    rec = CheckRecord("mezei", "Rec of a product is finite unions of recognizable rectangles",
                      dict(k_max=k_max, specs=specs, grid_cap=grid_cap))
    rng = _rng(seed, rec.claim_id)
    monoids = [M for M in catalog() if M.is_commutative() and M.size > 1]
    points = 0
    built = []
    for _ in range(specs):
        M, images, kinds, acc = random_mezei_instance(rng, monoids, k_max)
        S = hom_preimage_to_rectangles(M, images, acc, kinds)
        if fault and S.rects:
            S = type(S)(S.signature, S.rects[:-1])
        bound = lasso_bound(M, images)
        if grid_cap is not None:
            bound = min(bound, grid_cap)
        axes = [np.arange(-bound if kind == "int" else 0, bound + 1) for kind in kinds]
        values = None
        for d, (g, kind, axis) in enumerate(zip(images, kinds, axes)):
            col = _grid_values(M, g, kind, int(axis[0]), int(axis[-1]))
            view = [1] * len(kinds)
            view[d] = len(axis)
            col = col.reshape(view)
            values = col if values is None else np.asarray(M.table)[values, col]
        acc_mask = np.zeros(M.size, dtype=bool)
        acc_mask[list(acc)] = True
        direct = acc_mask[values]
        symbolic = _rect_mask(S, axes)
        rec.instances += 1
        points += direct.size
        if not np.array_equal(direct, symbolic):
            idx = tuple(int(axes[d][i]) for d, i in enumerate(np.argwhere(direct != symbolic)[0]))
            rec.fail(kind="grid", monoid=M.name, images=images, kinds=kinds, accepting=acc, point=idx,
                     direct=bool(acc_mask[values[tuple(np.argwhere(direct != symbolic)[0])]]))
        if not fault and len(S.rects) <= 12 and len(kinds) <= 2:
            built.append((S, axes))
    # Boolean laws on pairs with a shared signature
    laws = 0
    by_sig = {}
    for S, axes in built:
        by_sig.setdefault(S.signature, []).append((S, axes))
    for sig, group in sorted(by_sig.items()):
        for (A, axes), (B, _) in list(zip(group, group[1:]))[:law_pairs]:
            ma, mb = _rect_mask(A, axes), _rect_mask(B, axes)
            try:
                ok = (np.array_equal(_rect_mask(rect_union(A, B), axes), ma | mb)
                      and np.array_equal(_rect_mask(rect_intersect(A, B), axes), ma & mb)
                      and np.array_equal(_rect_mask(rect_complement(A), axes), ~ma))
            except Exception as exc:  # blow-up caps are not law failures
                rec.notes.setdefault("law_skips", []).append(type(exc).__name__)
                continue
            laws += 1
            if not ok:
                rec.fail(kind="boolean_law", signature=list(sig))
    rec.instances += laws
    rec.notes.update(grid_points=points, boolean_laws=laws)
    return rec


@_timed
def verify_saturation(seed=DEFAULT_SEED, trials=100, max_alphabet=8, max_len=6, fault=False):
    rec = CheckRecord("saturation", "X equals the preimage of its class-count projection",
                      dict(trials=trials, max_alphabet=max_alphabet, max_len=max_len))
    rng = _rng(seed, rec.claim_id)
    monoids = [M for M in catalog() if M.is_commutative() and M.size > 1]
    words = 0
    for _ in range(trials):
        M = rng.choice(monoids)
        a = rng.randint(1, max_alphabet)
        images = [rng.randrange(M.size) for _ in range(a)]
        accepting = frozenset(x for x in M.elements() if rng.random() < 0.5)
        classes = None
        if fault:
            distinct = sorted(set(images))
            if len(distinct) < 2:
                images[-1] = next(x for x in M.elements() if x != images[0])
                if a == 1:
                    images.append(images[0])
                    images[-1] = next(x for x in M.elements() if x != images[0])
                distinct = sorted(set(images))
            classes = [0] * len(images)  # merge every letter into one class
            accepting = frozenset({M.power(images[0], 1)})
        report = wt.prop5_saturation_check(M, images, accepting, max_len, classes=classes)
        rec.instances += 1
        words += report.words_checked
        if not report.saturated:
            rec.fail(kind="violation", monoid=M.name, images=images, accepting=accepting,
                     pair=report.violations[0] if report.violations else None)
        if report.up_consistent is False:
            rec.fail(kind="unary", monoid=M.name, images=images, accepting=accepting)
    rec.notes["words_checked"] = words
    return rec


PROPERTIES_NAT = ("even", "multiple-of-3", "prime")
PROPERTIES_INT = ("even", "multiple-of-3", "nonneg", "prime")


def random_partition(rng: random.Random, domain: str, k_max=5, support=50) -> GeneratorPartition:
    k = rng.randint(1, k_max)
    default = rng.randrange(k)
    others = [c for c in range(k) if c != default]
    positions = rng.sample(range(1, support + 1), rng.randint(len(others), min(support, len(others) + 6)))
    explicit = {}
    for n, pos in enumerate(positions):
        cls = others[n] if n < len(others) else rng.randrange(k)
        key = -pos if domain == "int" and rng.random() < 0.5 else pos
        explicit[key] = cls
    return GeneratorPartition(k, default, tuple(explicit.items()), domain)


def _faulty_project(part, s):
    out = [0] * part.k
    for i, x in enumerate(s.entries, 1):
        out[part.class_of(i)] += i * x
    return tuple(out)


@_timed
def verify_counterexamples(seed=DEFAULT_SEED, trials=120, fault=False):
    rec = CheckRecord("counterexamples", "nontrivial properties give non-recognizable sequence sets",
                      dict(trials=trials, nat_properties=PROPERTIES_NAT, int_properties=PROPERTIES_INT))
    rng = _rng(seed, rec.claim_id)
    proj = _faulty_project if fault else project
    counts = {}
    for t in range(trials):
        domain = "nat" if t % 2 == 0 else "int"
        part = random_partition(rng, domain)
        if domain == "nat":
            name, kind = rng.choice(PROPERTIES_NAT), rng.choice(("length", "forall", "exists"))
            P = wt.get_property(name)
            s1, s2 = wt.prop6_counterexample(kind, P, part)
        else:
            name, kind = rng.choice(PROPERTIES_INT), rng.choice(("forall", "exists"))
            P = wt.get_property(name)
            s1, s2 = wt.prop8_counterexample(kind, P, part)
        rec.instances += 1
        counts[f"{domain}:{kind}"] = counts.get(f"{domain}:{kind}", 0) + 1
        checks = {
            "projection": proj(part, s1) == proj(part, s2),
            "s1_in_X": wt.in_x(kind, P, s1),
            "s2_not_in_X": not wt.in_x(kind, P, s2),
        }
        if not all(checks.values()):
            rec.fail(domain=domain, property=name, kind=kind, partition=repr(part), s1=s1, s2=s2,
                     broken=[k for k, ok in checks.items() if not ok])
    rejected = 0
    for name in ("always", "never"):
        P = wt.get_property(name)
        for domain, kinds in (("nat", ("length", "forall", "exists")), ("int", ("forall", "exists"))):
            for kind in kinds:
                part = random_partition(rng, domain)
                fn = wt.prop6_counterexample if domain == "nat" else wt.prop8_counterexample
                try:
                    fn(kind, P, part, bound=2000)
                except CertificateExhausted:
                    rejected += 1
                else:
                    rec.fail(kind="trivial_accepted", property=name, domain=domain, witness_kind=kind)
    rec.notes.update(per_kind=counts, expected_rejections=rejected)
    return rec


def _random_member_set(rng):
    """Random int set together with one of its members."""
    part = random_partition(rng, "int", k_max=4, support=10)
    period = [rng.randint(1, 4) for _ in range(part.k)]
    target = [rng.randint(-3, 3) for _ in range(part.k)]
    comps = tuple(ad.per_set(p, [t]) for p, t in zip(period, target))
    from .rect import make_rect_union
    from .sequences import RecSeqSet

    S = RecSeqSet(part, make_rect_union(part.kinds(), [comps]))
    values = {}
    for cls, t in enumerate(target):
        pos = part.members(cls, 12)[0] if part.members(cls, 12) else None
        if pos is None:
            pos = part.support + 1
        values[pos] = values.get(pos, 0) + t
    s = ExpSeq(tuple(values.get(i, 0) for i in range(1, max(values, default=0) + 1)), "int")
    return S, s


@_timed
def verify_lengthening(seed=DEFAULT_SEED, trials=40, steps=5, fault=False):
    rec = CheckRecord("lengthening", "recognizable sets of Z* contain arbitrarily long members",
                      dict(trials=trials, steps=steps))
    rng = _rng(seed, rec.claim_id)
    for t in range(trials):
        S, s = _random_member_set(rng) if t else (recseq_full("int"), ExpSeq((1,), "int"))
        if not recseq_member(S, s):
            rec.fail(kind="setup", set=repr(S), seq=s)
            continue
        for step in range(steps):
            p = len(s)
            s_new = s if fault else wt.prop7_lengthen(S, s, p)
            rec.instances += 1
            old_primes = _prime_support(rat_recompose(s))
            new_primes = _prime_support(rat_recompose(s_new))
            ok = len(s_new) > p and recseq_member(S, s_new) and bool(new_primes - old_primes)
            if not ok:
                rec.fail(trial=t, step=step, seq=s, got=s_new)
                break
            s = s_new
    return rec


def _prime_support(q) -> frozenset:
    s = rat_factorize(q)
    return frozenset(i for i, x in enumerate(s.entries, 1) if x)


@_timed
def verify_sx_injectivity(bound=5, max_size=3, fault=False):
    rec = CheckRecord("sx_injectivity", "X -> S(X) is injective",
                      dict(bound=bound, max_size=max_size))
    subsets = wt.small_subsets(bound, max_size)
    probes = wt.sx_probe_box(bound)
    member = wt.sx_member
    if fault:
        def member(rep, s):
            return sum(s.entries) == 1
    signatures = []
    for X in subsets:
        rep = wt.sx_build(X, bound)
        mask = 0
        for bit, s in enumerate(probes):
            if member(rep, s):
                mask |= 1 << bit
        signatures.append(mask)
    separated = unseparated = 0
    for a, b in combinations(range(len(subsets)), 2):
        rec.instances += 1
        if signatures[a] != signatures[b]:
            separated += 1
        else:
            unseparated += 1
            rec.fail(X=subsets[a], Y=subsets[b])
    rec.notes.update(pairs=rec.instances, separated=separated, unseparated=unseparated,
                     separation_rate=separated / rec.instances if rec.instances else 1.0)
    return rec


# Recognizable-subset lattices, transcribed as labels.
GOLDEN_LATTICES = {
    "add:Q": ["∅", "ℚ"],
    "add:R": ["∅", "ℝ"],
    "add:C": ["∅", "ℂ"],
    "add:Q>=0": ["∅", "ℚ≥0", "{0}", "ℚ>0"],
    "add:R>=0": ["∅", "ℝ≥0", "{0}", "ℝ>0"],
    "mul:R": ["∅", "{0}", "ℝ<0", "ℝ≤0", "ℝ>0", "ℝ≥0", "ℝ∖{0}", "ℝ"],
    "mul:C": ["∅", "{0}", "ℂ∖{0}", "ℂ"],
}


@_timed
def verify_registry(fault=False):
    rec = CheckRecord("registry", "golden recognizable-subset lattices", {})
    for mid, labels in sorted(GOLDEN_LATTICES.items()):
        got = [s.label() for s in reg.rec_lattice(mid)]
        if fault and mid == "mul:R":
            got = got[:-1]
        rec.instances += 1
        if sorted(got) != sorted(labels):
            rec.fail(kind="golden", monoid=mid, expected=labels, got=got)
    for e in reg.ENTRIES:
        if not e.rec_is_finite:
            continue
        rec.instances += 1
        if not reg.lattice_is_closed(e.id):
            rec.fail(kind="not_closed", monoid=e.id)
        derived = {s.atom for s in reg.derive_lattice(e.id)}
        if derived != set(reg.LATTICES[e.id]):
            rec.fail(kind="derived", monoid=e.id, derived=derived)
        if not reg.recognizer_is_morphism(e.id):
            rec.fail(kind="recognizer", monoid=e.id)
        for s in reg.rec_lattice(e.id):
            if not reg.is_recognizable(s).recognizable:
                rec.fail(kind="recognizer_membership", monoid=e.id, atom=s.atom)
    for base, ext in sorted(reg.ZERO_EXTENSION.items()):
        if not reg.entry(base).rec_is_finite:
            continue
        rec.instances += 1
        doubled = reg.adjoin_zero_rec(reg.rec_lattice(base), base)
        if len(doubled) != 2 * len(reg.rec_lattice(base)) or set(doubled) != set(reg.rec_lattice(ext)):
            rec.fail(kind="zero_doubling", base=base, extension=ext)
    for row in reg.divisibility_flag_audit():
        rec.instances += 1
        if not row.consistent:
            rec.fail(kind="audit", monoid=row.id, problems=row.problems)
    return rec


@_timed
def verify_factorization(seed=DEFAULT_SEED, samples=10_000, limit=10**6, rat_limit=10**4, fault=False):
    rec = CheckRecord("factorization", "prime exponents turn multiplication into addition",
                      dict(samples=samples, limit=limit, rat_limit=rat_limit))
    rng = _rng(seed, rec.claim_id)
    from fractions import Fraction

    recompose = nat_recompose
    if fault:
        def recompose(s):
            return nat_recompose(ExpSeq((0,) + s.entries, "nat")) if s.entries else 1
    for _ in range(samples):
        n = rng.randint(1, limit)
        rec.instances += 1
        if recompose(nat_factorize(n)) != n:
            rec.fail(kind="nat_round_trip", n=n)
    for _ in range(samples):
        m, n = rng.randint(1, 10**4), rng.randint(1, 10**4)
        rec.instances += 1
        if nat_factorize(m * n) != seq_add(nat_factorize(m), nat_factorize(n)):
            rec.fail(kind="multiplicative", m=m, n=n)
    for _ in range(samples // 4):
        q = Fraction(rng.randint(1, rat_limit), rng.randint(1, rat_limit))
        r = Fraction(rng.randint(1, rat_limit), rng.randint(1, rat_limit))
        rec.instances += 1
        if rat_recompose(rat_factorize(q)) != q or rat_factorize(q * r) != seq_add(rat_factorize(q), rat_factorize(r)):
            rec.fail(kind="rational", q=str(q), r=str(r))
    return rec


# --- suite ------------------------------------------------------------------

CHECKS: dict[str, Callable] = {
    "up_characterization": verify_up_characterization,
    "periodic_characterization": verify_periodic_characterization,
    "divisibility_lemma": verify_divisibility_lemma,
    "mezei": verify_mezei,
    "saturation": verify_saturation,
    "counterexamples": verify_counterexamples,
    "lengthening": verify_lengthening,
    "sx_injectivity": verify_sx_injectivity,
    "registry": verify_registry,
    "factorization": verify_factorization,
}

# one corruption per check, each named after what it breaks
FAULTS = {
    "corrupt-table": "up_characterization",
    "corrupt-inverse": "periodic_characterization",
    "omega-identity": "divisibility_lemma",
    "drop-rectangle": "mezei",
    "merge-classes": "saturation",
    "weighted-projection": "counterexamples",
    "no-op-lengthen": "lengthening",
    "sum-only-sx": "sx_injectivity",
    "drop-lattice-element": "registry",
    "shifted-primes": "factorization",
}

_SEEDED = {"up_characterization", "periodic_characterization", "mezei", "saturation",
           "counterexamples", "lengthening", "factorization"}


def run_suite(checks=None, seed: Optional[int] = None, fault: Optional[str] = None,
              overrides: Optional[dict] = None) -> VerificationReport:
    """Run the named checks (default: all) in claim-id order."""
    seed = default_seed() if seed is None else seed
    names = list(CHECKS) if not checks or checks == ["all"] else list(checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    if fault is not None and fault not in FAULTS:
        raise ConfigError(f"unknown fault {fault!r}; choose from {', '.join(FAULTS)}")
    records = []
    for name in sorted(names):
        kwargs = dict((overrides or {}).get(name, {}))
        if name in _SEEDED:
            kwargs.setdefault("seed", seed)
        kwargs["fault"] = fault is not None and FAULTS[fault] == name
        records.append(CHECKS[name](**kwargs))
    return VerificationReport("all" if len(names) == len(CHECKS) else ",".join(sorted(names)), seed, fault, records)

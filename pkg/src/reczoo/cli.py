"""``reczoo`` command line.

Every subcommand parses its inputs, calls one library function and prints
the result.  Library errors go to stderr as ``Name: message`` with exit
status 1; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import documents as docs
from . import monoid as mc
from . import registry as reg
from . import sequences as sq
from . import witnesses as wt
from .additive import (
    PeriodicSet,
    UltimatelyPeriodicSet,
    per_equal,
    per_from_morphism,
    per_member,
    per_to_syntactic_morphism,
    up_equal,
    up_from_morphism,
    up_member,
    up_to_syntactic_morphism,
)
from .errors import ParseError, RecZooError, SignatureMismatch
from .rect import RectUnion, SignSubset, hom_preimage_to_rectangles, rect_equal, rect_member


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text, data=None):
        if self.as_json:
            print(json.dumps(text if data is None else data, ensure_ascii=False, sort_keys=True))
        else:
            print(text)


# --- argument helpers --------------------------------------------------------

def int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def load_table(path: str) -> mc.FiniteMonoid:
    p = Path(path)
    if not p.is_file():
        raise ParseError(f"no such table file: {path}")
    return mc.parse_cay(p.read_text(), name=p.stem)


def load_set(args, ref):
    return docs.evaluate_expression(ref, args.normalize)


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _typed(value, *types):
    if not isinstance(value, types):
        names = "/".join(t.__name__ for t in types)
        raise SignatureMismatch(f"expected {names}, got {type(value).__name__}")
    return value


# --- monoid ------------------------------------------------------------------

def cmd_monoid(args, out):
    if args.action == "catalog":
        rows = [(M.name, M.size, M.unit, M.is_commutative()) for M in mc.catalog(args.max_size)]
        text = "\n".join(f"{n}\tsize={s}\tunit={u}\tcommutative={_bool(c)}" for n, s, u, c in rows)
        return out.emit(text, [dict(name=n, size=s, unit=u, commutative=c) for n, s, u, c in rows])
    M = load_table(args.table)
    if args.action == "validate":
        return out.emit(f"valid monoid: size {M.size}, unit {M.unit}",
                        {"valid": True, "size": M.size, "unit": M.unit})
    if args.action == "idempotents":
        idem = sorted(mc.idempotents(M))
        return out.emit(" ".join(map(str, idem)), idem)
    if args.action == "omega":
        e = mc.omega_power(M, args.element)
        return out.emit(str(e), e)
    if args.action == "zero":
        if args.adjoin:
            M0 = mc.adjoin_zero(M)
            return out.emit(mc.format_cay(M0).rstrip("\n"), {"size": M0.size, "unit": M0.unit,
                                                             "table": [list(r) for r in M0.table]})
        z = mc.find_zero(M)
        return out.emit("none" if z is None else str(z), z)
    if args.action == "product":
        P = mc.direct_product(M, load_table(args.table2))
        return out.emit(mc.format_cay(P).rstrip("\n"), {"size": P.size, "unit": P.unit,
                                                        "table": [list(r) for r in P.table]})


# --- addset ------------------------------------------------------------------

def _up_or_per(value):
    return _typed(value, UltimatelyPeriodicSet, PeriodicSet)


def cmd_addset(args, out):
    if args.action == "member":
        s = _up_or_per(load_set(args, args.set))
        result = up_member(s, args.n) if isinstance(s, UltimatelyPeriodicSet) else per_member(s, args.n)
        return out.emit(_bool(result), result)
    if args.action == "op":
        return _emit_set(out, _op(args, _up_or_per))
    if args.action == "eq":
        a, b = _up_or_per(load_set(args, args.a)), _up_or_per(load_set(args, args.b))
        if type(a) is not type(b):
            raise SignatureMismatch("cannot compare an up set with a periodic set")
        result = up_equal(a, b) if isinstance(a, UltimatelyPeriodicSet) else per_equal(a, b)
        return out.emit(_bool(result), result)
    if args.action == "from-morphism":
        M = load_table(args.table)
        spec = mc.MorphismSpec(args.source, M, (args.image,), frozenset(args.accepting))
        return _emit_set(out, up_from_morphism(spec) if args.source == "nat" else per_from_morphism(spec))
    if args.action == "to-morphism":
        s = _up_or_per(load_set(args, args.set))
        spec = up_to_syntactic_morphism(s) if isinstance(s, UltimatelyPeriodicSet) else per_to_syntactic_morphism(s)
        data = {"source": spec.source, "size": spec.target.size, "unit": spec.target.unit,
                "table": [list(r) for r in spec.target.table], "image": spec.generator,
                "accepting": sorted(spec.accepting)}
        text = (mc.format_cay(spec.target) + f"# source {spec.source}\n# image {spec.generator}\n"
                f"# accepting {' '.join(map(str, sorted(spec.accepting)))}")
        return out.emit(text, data)


def _op(args, check):
    a = check(load_set(args, args.a))
    if args.operation == "complement":
        if args.b is not None:
            raise ParseError("complement takes one set")
        return docs.set_complement(a)
    if args.b is None:
        raise ParseError(f"{args.operation} needs two sets")
    b = check(load_set(args, args.b))
    return docs.set_union(a, b) if args.operation == "union" else docs.set_intersect(a, b)


def _emit_set(out, value):
    data = docs.to_doc(value)
    return out.emit(json.dumps(data, ensure_ascii=False, sort_keys=True), data)


# --- lattice -----------------------------------------------------------------

def cmd_lattice(args, out):
    if args.action == "show":
        lattice = reg.rec_lattice(args.monoid)
        labels = [s.label() for s in lattice]
        return out.emit("{" + ", ".join(labels) + "}",
                        [{"atom": s.atom, "label": s.label()} for s in lattice])
    if args.action == "check":
        s = reg.SymbolicSet(args.monoid, args.atom)
        result = reg.is_recognizable(s)
        data = {"monoid": args.monoid, "atom": args.atom, "label": s.label(),
                "recognizable": result.recognizable}
        if result.recognizer is not None:
            data["recognizer_size"] = result.recognizer.monoid.size
        text = f"{s.label()}: {'recognizable' if result.recognizable else 'not recognizable'}"
        if result.recognizer is not None:
            text += f" (recognizer of size {result.recognizer.monoid.size})"
        return out.emit(text, data)
    if args.action == "adjoin-zero":
        lattice = reg.adjoin_zero_rec(reg.rec_lattice(args.monoid), args.monoid)
        return out.emit("{" + ", ".join(s.label() for s in lattice) + "}",
                        [{"monoid": s.monoid, "atom": s.atom, "label": s.label()} for s in lattice])


# --- rect --------------------------------------------------------------------

def cmd_rect(args, out):
    if args.action == "member":
        S = _typed(load_set(args, args.set), RectUnion)
        point = [_coordinate(x) for x in args.point.split(",")]
        result = rect_member(S, point)
        return out.emit(_bool(result), result)
    if args.action == "op":
        return _emit_set(out, _op(args, lambda v: _typed(v, RectUnion)))
    if args.action == "eq":
        result = rect_equal(_typed(load_set(args, args.a), RectUnion), _typed(load_set(args, args.b), RectUnion))
        return out.emit(_bool(result), result)
    if args.action == "from-hom":
        M = load_table(args.table)
        kinds = args.kinds.split(",") if args.kinds else ["nat"] * len(args.images)
        return _emit_set(out, hom_preimage_to_rectangles(M, args.images, args.accepting, kinds))


def _coordinate(text: str):
    """Integer, rational or case tag for a symbolic coordinate."""
    text = text.strip()
    if text in reg.CASES:
        return text
    try:
        return int(text)
    except ValueError:
        return sq.parse_rational(text)


# --- seq ---------------------------------------------------------------------

def _seq(text, domain):
    return sq.ExpSeq(tuple(int_list(text)), domain)


def cmd_seq(args, out):
    if args.action == "add":
        s = sq.seq_add(_seq(args.a, args.domain), _seq(args.b, args.domain))
        return out.emit(str(list(s.entries)), docs.to_doc(s))
    if args.action == "sigma":
        s = sq.sigma(args.n, args.domain)
        return out.emit(str(list(s.entries)), docs.to_doc(s))
    if args.action == "project":
        part = _typed(load_set(args, args.partition), sq.GeneratorPartition)
        v = sq.project(part, _seq(args.seq, part.domain))
        return out.emit(str(list(v)), list(v))
    if args.action == "member":
        S = _typed(load_set(args, args.set), sq.RecSeqSet)
        result = sq.recseq_member(S, _seq(args.seq, S.domain))
        return out.emit(_bool(result), result)
    if args.action == "op":
        return _emit_set(out, _op(args, lambda v: _typed(v, sq.RecSeqSet)))
    if args.action == "factorize":
        if args.recompose:
            s = _seq(args.value, args.domain)
            q = sq.nat_recompose(s) if args.domain == "nat" else sq.rat_recompose(s)
            text = str(q) if args.domain == "nat" else sq.format_rational(q)
            return out.emit(text, text)
        if "/" in args.value:
            s = sq.rat_factorize(sq.parse_rational(args.value))
        else:
            try:
                s = sq.nat_factorize(int(args.value))
            except ValueError:
                raise ParseError(f"not an integer: {args.value!r}") from None
        return out.emit(str(list(s.entries)), docs.to_doc(s))


def cmd_natmul(args, out):
    S = _typed(load_set(args, args.set), sq.RecSeqSet)
    result = sq.nat_member(S, args.n)
    return out.emit(_bool(result), result)


def cmd_ratmul(args, out):
    S = _typed(load_set(args, args.set), sq.RecSeqSet)
    q = sq.parse_rational(args.q)
    if args.signs is not None:
        rep = sq.signed_rational_rec(S, SignSubset(frozenset(args.signs)))
        result = sq.signed_member(rep, q)
    else:
        result = sq.rat_member(S, q)
    return out.emit(_bool(result), result)


# --- witness -----------------------------------------------------------------

def cmd_witness(args, out):
    if args.action in ("prop6", "prop8"):
        part = _typed(load_set(args, args.partition), sq.GeneratorPartition)
        P = wt.get_property(args.property)
        seed = _seq(args.seed_seq, part.domain) if args.seed_seq is not None else None
        if args.action == "prop6":
            triple = tuple(args.triple) if args.triple else None
            if triple is not None and len(triple) != 3:
                raise ParseError("--triple needs three integers")
            s1, s2 = wt.prop6_counterexample(args.kind, P, part, s1_seed=seed, triple=triple)
        else:
            s1, s2 = wt.prop8_counterexample(args.kind, P, part, s1_seed=seed)
        data = {"s1": list(s1.entries), "s2": list(s2.entries),
                "projection": list(sq.project(part, s1)), "valid": wt.verify_pair(args.kind, P, part, s1, s2)}
        text = (f"s1 = {list(s1.entries)}\ns2 = {list(s2.entries)}\n"
                f"projection = {data['projection']}\nvalid = {_bool(data['valid'])}")
        return out.emit(text, data)
    if args.action == "prop7":
        S = _typed(load_set(args, args.set), sq.RecSeqSet)
        s = wt.prop7_lengthen(S, _seq(args.seq, "int"), args.p)
        return out.emit(str(list(s.entries)), docs.to_doc(s))
    if args.action == "sx-separate":
        sep = wt.sx_separate(args.x, args.y, args.bound)
        if sep is None:
            return out.emit("none", None)
        return out.emit(str(list(sep.entries)), docs.to_doc(sep))
    if args.action == "m3":
        M, phi = wt.m3_recognizer(wt.IndexSet(frozenset(args.indices), args.cofinite))
        data = {"partition": docs.to_doc(phi.partition), "class_images": list(phi.class_images),
                "accepting": sorted(phi.accepting)}
        text = (f"partition = {json.dumps(data['partition'], sort_keys=True)}\n"
                f"class images = {data['class_images']} (0 unit, 1 p, 2 zero)\naccepting = {data['accepting']}")
        if args.seq is not None:
            s = _seq(args.seq, "nat")
            data["value"] = phi.evaluate(s)
            data["accepted"] = phi.accepts(s)
            text += f"\nvalue = {data['value']}\naccepted = {_bool(data['accepted'])}"
        return out.emit(text, data)


def cmd_table1(args, out):
    text = reg.render_table1()
    return out.emit(text.rstrip("\n"), {"table": text})


def cmd_verify(args, out):
    from . import oracle

    try:
        overrides = QUICK_OVERRIDES if args.quick else None
        report = oracle.run_suite(args.checks, seed=args.seed, fault=args.fault, overrides=overrides)
    except oracle.ConfigError as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text(), end="")
    if args.report_dir:
        from .plotting import write_report_bundle

        paths = write_report_bundle(report, args.report_dir)
        if not args.json:
            print("wrote " + ", ".join(str(p) for p in paths.values()))
    return 0 if report.status == "pass" else 1


# Small parameters for a fast smoke run of the whole suite.
QUICK_OVERRIDES = {
    "up_characterization": dict(max_monoid_size=2, max_n=30, max_threshold=3, max_period=3,
                                boolean_pairs=20, boolean_range=200),
    "periodic_characterization": dict(max_group_order=4, value_range=30, boolean_pairs=20, boolean_range=100),
    "divisibility_lemma": dict(max_monoid_size=2),
    "mezei": dict(specs=30, grid_cap=20),
    "saturation": dict(trials=10, max_alphabet=4, max_len=4),
    "counterexamples": dict(trials=20),
    "lengthening": dict(trials=5),
    "sx_injectivity": dict(bound=3, max_size=2),
    "registry": {},
    "factorization": dict(samples=300),
}


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--normalize", action="store_true", default=argparse.SUPPRESS,
                        help="canonicalize non-canonical documents instead of rejecting them")

    parser = argparse.ArgumentParser(prog="reczoo", parents=[common],
                                     description="Recognizable subsets of numeric monoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        return p.add_subparsers(dest="action", required=True)

    def leaf(subs, name, help_text):
        return subs.add_parser(name, help=help_text, parents=[common])

    m = group("monoid", "finite monoids given as .cay tables")
    for name, h in (("validate", "check the monoid axioms"), ("idempotents", "list idempotents"),
                    ("omega", "idempotent power of an element"), ("zero", "find or adjoin a zero"),
                    ("product", "direct product of two tables")):
        p = leaf(m, name, h)
        p.add_argument("--table", required=True)
        if name == "omega":
            p.add_argument("--element", type=int, required=True)
        if name == "zero":
            p.add_argument("--adjoin", action="store_true", help="print the table with a zero adjoined")
        if name == "product":
            p.add_argument("--table2", required=True)
    leaf(m, "catalog", "list the test catalog").add_argument("--max-size", type=int, default=3)

    a = group("addset", "ultimately periodic and periodic sets")
    p = leaf(a, "member", "membership of an integer")
    p.add_argument("--set", required=True)
    p.add_argument("--n", type=int, required=True)
    _op_args(leaf(a, "op", "union, intersection or complement"))
    p = leaf(a, "eq", "set equality")
    p.add_argument("a")
    p.add_argument("b")
    p = leaf(a, "from-morphism", "preimage under a one-generator morphism")
    p.add_argument("--table", required=True)
    p.add_argument("--image", type=int, required=True)
    p.add_argument("--accepting", type=int_list, required=True)
    p.add_argument("--source", choices=("nat", "int"), default="nat")
    leaf(a, "to-morphism", "syntactic morphism of a set").add_argument("--set", required=True)

    lat = group("lattice", "finite lattices of recognizable subsets")
    leaf(lat, "show", "list Rec of a registry monoid").add_argument("--monoid", required=True)
    p = leaf(lat, "check", "recognizability of a named subset")
    p.add_argument("--monoid", required=True)
    p.add_argument("--atom", required=True, choices=reg.ATOMS)
    leaf(lat, "adjoin-zero", "Rec after adjoining a zero").add_argument("--monoid", required=True)

    r = group("rect", "finite unions of rectangles")
    p = leaf(r, "member", "membership of a point")
    p.add_argument("--set", required=True)
    p.add_argument("--point", required=True, help="comma-separated coordinates")
    _op_args(leaf(r, "op", "union, intersection or complement"))
    p = leaf(r, "eq", "set equality")
    p.add_argument("a")
    p.add_argument("b")
    p = leaf(r, "from-hom", "rectangles of a product morphism preimage")
    p.add_argument("--table", required=True)
    p.add_argument("--images", type=int_list, required=True)
    p.add_argument("--accepting", type=int_list, required=True)
    p.add_argument("--kinds", default=None, help="comma-separated nat/int per coordinate")

    s = group("seq", "exponent sequences")
    p = leaf(s, "add", "pointwise sum")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--domain", choices=sq.DOMAINS, default="nat")
    p = leaf(s, "sigma", "generator sequence")
    p.add_argument("n", type=int)
    p.add_argument("--domain", choices=sq.DOMAINS, default="nat")
    p = leaf(s, "project", "class sums under a partition")
    p.add_argument("--partition", required=True)
    p.add_argument("--seq", required=True)
    p = leaf(s, "member", "membership of a sequence")
    p.add_argument("--set", required=True)
    p.add_argument("--seq", required=True)
    _op_args(leaf(s, "op", "union, intersection or complement"))
    p = leaf(s, "factorize", "prime exponents of n or p/q")
    p.add_argument("value")
    p.add_argument("--recompose", action="store_true", help="read VALUE as a sequence and multiply out")
    p.add_argument("--domain", choices=sq.DOMAINS, default="nat")

    nm = group("natmul", "(N \\ {0}, x) through prime exponents")
    p = leaf(nm, "member", "membership of a positive integer")
    p.add_argument("--set", required=True)
    p.add_argument("--n", type=int, required=True)

    rm = group("ratmul", "(Q>0, x) and (Q \\ {0}, x) through prime exponents")
    p = leaf(rm, "member", "membership of a rational p/q")
    p.add_argument("--set", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--signs", type=int_list, default=None, help="sign component, e.g. 1,-1")

    w = group("witness", "witness constructions")
    for name in ("prop6", "prop8"):
        p = leaf(w, name, "counterexample pair with equal projections")
        p.add_argument("--kind", required=True,
                       choices=("length", "forall", "exists") if name == "prop6" else ("forall", "exists"))
        p.add_argument("--property", required=True, help=", ".join(wt.PROPERTY_NAMES))
        p.add_argument("--partition", required=True)
        p.add_argument("--seed-seq", default=None, help="starting member for the forall kind")
        if name == "prop6":
            p.add_argument("--triple", type=int_list, default=None, help="n1,n2,n3 for the length kind")
    p = leaf(w, "prop7", "longer member of an int set")
    p.add_argument("--set", required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--p", type=int, required=True)
    p = leaf(w, "sx-separate", "sequence separating S(X) from S(Y)")
    p.add_argument("--x", type=int_list, required=True)
    p.add_argument("--y", type=int_list, required=True)
    p.add_argument("--bound", type=int, default=5)
    p = leaf(w, "m3", "three-element recognizer of a set of generators")
    p.add_argument("--indices", type=int_list, required=True)
    p.add_argument("--cofinite", action="store_true", help="indices list the complement")
    p.add_argument("--seq", default=None, help="sequence to evaluate")

    sub.add_parser("table1", help="print the recognizable-subset tables", parents=[common])

    v = sub.add_parser("verify", help="run the cross-verification suite", parents=[common])
    v.add_argument("checks", nargs="*", help="check names (default: all)")
    v.add_argument("--seed", type=int, default=None, help="overrides RECZOO_SEED")
    v.add_argument("--fault", default=None, help="fault-injection mode")
    v.add_argument("--quick", action="store_true", help="small parameters for a smoke run")
    v.add_argument("--report-dir", default=None, help="write report.json, report.tsv and report.png here")
    return parser


def _op_args(p):
    p.add_argument("operation", choices=("union", "intersect", "complement"))
    p.add_argument("a")
    p.add_argument("b", nargs="?", default=None)


COMMANDS = {
    "monoid": cmd_monoid, "addset": cmd_addset, "lattice": cmd_lattice, "rect": cmd_rect,
    "seq": cmd_seq, "natmul": cmd_natmul, "ratmul": cmd_ratmul, "witness": cmd_witness,
    "table1": cmd_table1, "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    args.normalize = getattr(args, "normalize", False)
    out = Output(args.json)
    try:
        code = COMMANDS[args.command](args, out)
    except RecZooError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())

"""JSON set documents and the small ``union/intersect/complement`` grammar.

Documents are JSON objects with a ``kind`` field.  Parsers reject values that
are not in normal form unless ``normalize=True``.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from .additive import (
    PeriodicSet,
    UltimatelyPeriodicSet,
    canonicalize_per,
    canonicalize_up,
    check_canonical,
    per_complement,
    per_intersect,
    per_union,
    up_complement,
    up_intersect,
    up_union,
)
from .errors import DomainMismatch, NonCanonical, ParseError, SignatureMismatch
from .rect import (
    RectUnion,
    SignSubset,
    normalize,
    rect_complement,
    rect_intersect,
    rect_union,
)
from .registry import SymbolicSet, entry, from_regions
from .sequences import (
    ExpSeq,
    GeneratorPartition,
    RecSeqSet,
    recseq_complement,
    recseq_intersect,
    recseq_union,
)


def _field(doc: dict, name: str, where: str, types=None):
    if name not in doc:
        raise ParseError(f"{where}: missing field {name!r}")
    value = doc[name]
    if types is not None and not isinstance(value, types):
        raise ParseError(f"{where}: field {name!r} has type {type(value).__name__}")
    return value


def _ints(values, where, name):
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ParseError(f"{where}: field {name!r} must be a list of integers")
    return values


def _wrap(where, build):
    try:
        return build()
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def from_doc(doc: Any, normalize_input: bool = False, where: str = "document"):
    """Typed value of a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object, got {type(doc).__name__}")
    kind = _field(doc, "kind", where, str)
    where = f"{where} ({kind})"
    if kind == "up":
        u = _wrap(where, lambda: UltimatelyPeriodicSet(
            _field(doc, "threshold", where, int), _field(doc, "period", where, int),
            frozenset(_ints(_field(doc, "prefix", where), where, "prefix")),
            frozenset(_ints(_field(doc, "residues", where), where, "residues"))))
        return canonicalize_up(u) if normalize_input else check_canonical(u, "up set")
    if kind == "periodic":
        s = _wrap(where, lambda: PeriodicSet(
            _field(doc, "period", where, int),
            frozenset(_ints(_field(doc, "residues", where), where, "residues"))))
        return canonicalize_per(s) if normalize_input else check_canonical(s, "periodic set")
    if kind == "sign":
        return _wrap(where, lambda: SignSubset(frozenset(_ints(_field(doc, "signs", where), where, "signs"))))
    if kind == "lattice_atom":
        return SymbolicSet(_field(doc, "monoid", where, str), _field(doc, "atom", where, str))
    if kind == "rect_union":
        signature = _field(doc, "signature", where, list)
        rects = []
        for r_i, rect in enumerate(_field(doc, "rects", where, list)):
            if not isinstance(rect, list) or len(rect) != len(signature):
                raise ParseError(f"{where}: rects[{r_i}] must list {len(signature)} components")
            rects.append(tuple(from_doc(c, normalize_input, f"{where} rects[{r_i}][{c_i}]")
                               for c_i, c in enumerate(rect)))
        raw = RectUnion(tuple(signature), tuple(rects))
        canon = normalize(raw)
        if normalize_input or raw == canon:
            return canon
        raise NonCanonical(f"{where}: rectangle list is not normalized ({len(raw.rects)} given, "
                           f"{len(canon.rects)} after normalization)")
    if kind == "partition":
        explicit = _field(doc, "explicit", where, dict)
        try:
            pairs = tuple((int(key), cls) for key, cls in explicit.items())
        except ValueError:
            raise ParseError(f"{where}: explicit keys must be integers") from None
        return GeneratorPartition(_field(doc, "k", where, int), _field(doc, "default_class", where, int),
                                  pairs, _field(doc, "domain", where, str))
    if kind == "recseq":
        part = from_doc(_field(doc, "partition", where, dict), normalize_input, f"{where} partition")
        quotient = from_doc(_field(doc, "quotient", where, dict), normalize_input, f"{where} quotient")
        if not isinstance(part, GeneratorPartition) or not isinstance(quotient, RectUnion):
            raise ParseError(f"{where}: needs a partition and a rect_union quotient")
        if doc.get("domain", part.domain) != part.domain:
            raise DomainMismatch(f"{where}: domain {doc['domain']!r} differs from partition domain")
        return RecSeqSet(part, quotient)
    if kind == "expseq":
        domain = _field(doc, "domain", where, str)
        entries = _ints(_field(doc, "entries", where), where, "entries")
        s = ExpSeq(tuple(entries), domain)
        if len(s) != len(entries) and not normalize_input:
            raise NonCanonical(f"{where}: trailing zeros in {entries}")
        return s
    raise ParseError(f"{where}: unknown kind {kind!r}")


def to_doc(value) -> dict:
    """JSON-ready document for a typed value."""
    if isinstance(value, UltimatelyPeriodicSet):
        return {"kind": "up", "threshold": value.threshold, "period": value.period,
                "prefix": sorted(value.prefix), "residues": sorted(value.residues)}
    if isinstance(value, PeriodicSet):
        return {"kind": "periodic", "period": value.period, "residues": sorted(value.residues)}
    if isinstance(value, SignSubset):
        return {"kind": "sign", "signs": sorted(value.signs, reverse=True)}
    if isinstance(value, SymbolicSet):
        return {"kind": "lattice_atom", "monoid": value.monoid, "atom": value.atom}
    if isinstance(value, RectUnion):
        return {"kind": "rect_union", "signature": list(value.signature),
                "rects": [[to_doc(c) for c in r] for r in value.rects]}
    if isinstance(value, GeneratorPartition):
        return {"kind": "partition", "domain": value.domain, "k": value.k,
                "default_class": value.default_class, "explicit": {str(i): c for i, c in value.explicit}}
    if isinstance(value, RecSeqSet):
        return {"kind": "recseq", "domain": value.domain, "partition": to_doc(value.partition),
                "quotient": to_doc(value.quotient)}
    if isinstance(value, ExpSeq):
        return {"kind": "expseq", "domain": value.domain, "entries": list(value.entries)}
    raise TypeError(f"no document form for {type(value).__name__}")


def dumps(value) -> str:
    return json.dumps(to_doc(value), ensure_ascii=False, sort_keys=True)


def parse_text(text: str, normalize_input: bool = False, where: str = "document"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_doc(doc, normalize_input, where)


def load(ref: str, normalize_input: bool = False):
    """A document from inline JSON text or from a file path."""
    ref = ref.strip()
    if ref.startswith("{"):
        return parse_text(ref, normalize_input, "inline document")
    path = Path(ref)
    if not path.is_file():
        raise ParseError(f"no such document file: {ref}")
    return parse_text(path.read_text(), normalize_input, os.fspath(path))


# --- Boolean operations on any supported value ---------------------------------

def _same_type(a, b):
    if type(a) is not type(b):
        raise SignatureMismatch(f"cannot combine {type(a).__name__} with {type(b).__name__}")


def set_union(a, b):
    _same_type(a, b)
    if isinstance(a, UltimatelyPeriodicSet):
        return up_union(a, b)
    if isinstance(a, PeriodicSet):
        return per_union(a, b)
    if isinstance(a, RectUnion):
        return rect_union(a, b)
    if isinstance(a, RecSeqSet):
        return recseq_union(a, b)
    if isinstance(a, SignSubset):
        return SignSubset(a.signs | b.signs)
    if isinstance(a, SymbolicSet):
        _same_monoid(a, b)
        return from_regions(a.monoid, a.regions | b.regions)
    raise SignatureMismatch(f"union is not defined for {type(a).__name__}")


def set_intersect(a, b):
    _same_type(a, b)
    if isinstance(a, UltimatelyPeriodicSet):
        return up_intersect(a, b)
    if isinstance(a, PeriodicSet):
        return per_intersect(a, b)
    if isinstance(a, RectUnion):
        return rect_intersect(a, b)
    if isinstance(a, RecSeqSet):
        return recseq_intersect(a, b)
    if isinstance(a, SignSubset):
        return SignSubset(a.signs & b.signs)
    if isinstance(a, SymbolicSet):
        _same_monoid(a, b)
        return from_regions(a.monoid, a.regions & b.regions)
    raise SignatureMismatch(f"intersection is not defined for {type(a).__name__}")


def set_complement(a):
    if isinstance(a, UltimatelyPeriodicSet):
        return up_complement(a)
    if isinstance(a, PeriodicSet):
        return per_complement(a)
    if isinstance(a, RectUnion):
        return rect_complement(a)
    if isinstance(a, RecSeqSet):
        return recseq_complement(a)
    if isinstance(a, SignSubset):
        return SignSubset(frozenset({1, -1}) - a.signs)
    if isinstance(a, SymbolicSet):
        return from_regions(a.monoid, entry(a.monoid).regions - a.regions)
    raise SignatureMismatch(f"complement is not defined for {type(a).__name__}")


def _same_monoid(a, b):
    if a.monoid != b.monoid:
        raise SignatureMismatch(f"sets of {a.monoid} and {b.monoid} cannot be combined")


OPS = {"union": (2, set_union), "intersect": (2, set_intersect), "complement": (1, set_complement)}


def _split_args(text: str, where: str) -> list[str]:
    """Split on top-level commas, respecting parentheses and JSON braces."""
    parts, depth, start, in_str = [], 0, 0, False
    for i, ch in enumerate(text):
        if in_str:
            if ch == '"' and text[i - 1] != "\\":
                in_str = False
            continue
        if ch == '"':
            in_str = True
        elif ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"{where}: unbalanced {ch!r} at offset {i}")
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0 or in_str:
        raise ParseError(f"{where}: unbalanced brackets")
    parts.append(text[start:])
    return [p.strip() for p in parts]


def evaluate_expression(expr: str, normalize_input: bool = False):
    """Evaluate ``union(a, b)``, ``intersect(a, b)``, ``complement(a)``, nested,
    over document references (file paths or inline JSON)."""
    expr = expr.strip()
    for name, (arity, fn) in OPS.items():
        if expr.startswith(name + "(") and expr.endswith(")"):
            args = _split_args(expr[len(name) + 1:-1], expr)
            if len(args) < arity or (arity == 1 and len(args) != 1) or any(not a for a in args):
                raise ParseError(f"{name} takes {'one argument' if arity == 1 else 'two or more arguments'}: {expr}")
            values = [evaluate_expression(a, normalize_input) for a in args]
            if arity == 1:
                return fn(values[0])
            out = values[0]
            for v in values[1:]:
                out = fn(out, v)
            return out
    return load(expr, normalize_input)


__all__ = ["from_doc", "to_doc", "dumps", "load", "parse_text", "evaluate_expression",
           "set_union", "set_intersect", "set_complement"]

"""JSON codecs, canonical dumps and DOT export.

Element encodings follow the quantale: booleans for ``bool2``, integers for
chains, ``{"num": p, "den": q}`` or ``"inf"`` for rationals, arrays of pairs for
relations and arrays of monoid indices for powersets.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Sequence

from .analysis import Ball
from .errors import DomainError, ParseError, UsageError
from .isbell import STAR, column, row
from .macneille import MNCategory, PresheafPair
from .qcategory import QCategory, QFunctor, iso_classes
from .qmatrix import QMatrix
from .quantale import Quantale, from_spec


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"{source}:{e.lineno}:{e.colno}") from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(e.strerror or str(e), path) from None
    return loads(text, path)


def _need(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where or "$")
    if key not in obj:
        raise ParseError(f"missing key {key!r}", where or "$")
    return obj[key]


def _ids(obj: Any, where: str) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(s, str) for s in obj):
        raise ParseError("expected an array of object names", where)
    if len(set(obj)) != len(obj):
        raise ParseError("duplicate object names", where)
    return tuple(obj)


# --- elements and quantales -------------------------------------------------------


def parse_quantale(obj: Any, where: str = "quantale") -> Quantale:
    try:
        return from_spec(obj)
    except (UsageError, DomainError) as e:
        raise ParseError(str(e), where) from None


def parse_element(q: Quantale, obj: Any, where: str):
    try:
        return q.decode(obj)
    except DomainError as e:
        raise ParseError(str(e), where) from None


def encode_element(q: Quantale, x) -> Any:
    return q.encode(x)


def encode_any(x) -> Any:
    """Best-effort JSON form of a value whose quantale is not at hand (used for witnesses)."""
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, (frozenset, set)):
        return [encode_any(y) for y in sorted(x)]
    if isinstance(x, (tuple, list)):
        return [encode_any(y) for y in x]
    return repr(x)


# --- matrices and categories -------------------------------------------------------


def encode_matrix(M: QMatrix) -> dict:
    q = M.quantale
    return {
        "rows": list(M.rows),
        "cols": list(M.cols),
        "entries": [[q.encode(x) for x in r] for r in M.entries],
    }


def parse_matrix(q: Quantale, obj: Any, where: str = "matrix") -> QMatrix:
    rows = _ids(_need(obj, "rows", where), f"{where}.rows")
    cols = _ids(_need(obj, "cols", where), f"{where}.cols")
    entries = _grid(q, _need(obj, "entries", where), len(rows), len(cols), f"{where}.entries")
    return QMatrix(q, rows, cols, entries)


def _grid(q: Quantale, obj: Any, n_rows: int, n_cols: int, where: str) -> tuple:
    if not isinstance(obj, list) or len(obj) != n_rows:
        raise ParseError(f"expected {n_rows} rows", where)
    out = []
    for i, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != n_cols:
            raise ParseError(f"expected {n_cols} entries", f"{where}[{i}]")
        out.append(tuple(parse_element(q, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)))
    return tuple(out)


def encode_category(C: QCategory) -> dict:
    q = C.quantale
    return {
        "quantale": q.spec(),
        "objects": list(C.objects),
        "hom": [[q.encode(x) for x in r] for r in C.hom.entries],
    }


def parse_category(obj: Any, where: str = "") -> QCategory:
    """Category JSON ``{"quantale", "objects", "hom"}``; axiom failures raise AxiomViolation."""
    dot = f"{where}." if where else ""
    q = parse_quantale(_need(obj, "quantale", where), f"{dot}quantale")
    objects = _ids(_need(obj, "objects", where), f"{dot}objects")
    hom = _grid(q, _need(obj, "hom", where), len(objects), len(objects), f"{dot}hom")
    return QCategory(q, objects, QMatrix(q, objects, objects, hom))


def parse_functor(obj: Any, source: QCategory, target: QCategory, where: str) -> QFunctor:
    mapping = _need(obj, "map", where)
    if not isinstance(mapping, dict) or set(mapping) != set(source.objects):
        raise ParseError("functor map must name exactly the source objects", f"{where}.map")
    for k, v in mapping.items():
        if v not in target:
            raise ParseError(f"unknown target object {v!r}", f"{where}.map.{k}")
    return QFunctor.from_mapping(source, target, mapping)


def encode_functor(f: QFunctor) -> dict:
    return {"map": f.mapping}


# --- presheaves, pairs, balls ------------------------------------------------------


def encode_weight(C: QCategory, M: QMatrix, co: bool = False) -> dict:
    q = C.quantale
    vals = {c: q.encode(M[STAR, c] if co else M[c, STAR]) for c in C.objects}
    return {"values": vals, "co": True} if co else {"values": vals}


def parse_weight(C: QCategory, obj: Any, where: str, co: bool) -> QMatrix:
    """A presheaf (column) or, with ``co``, a copresheaf (row); no inequality is imposed."""
    values = _need(obj, "values", where)
    if bool(obj.get("co", False)) != co:
        raise ParseError("expected a copresheaf" if co else "expected a presheaf", where)
    if not isinstance(values, dict) or set(values) != set(C.objects):
        raise ParseError("values must name exactly the category's objects", f"{where}.values")
    vec = {c: parse_element(C.quantale, values[c], f"{where}.values.{c}") for c in C.objects}
    return row(C, vec) if co else column(C, vec)


def encode_pair(C: QCategory, pair) -> dict:
    return {"X": encode_weight(C, pair.X), "Y": encode_weight(C, pair.Y, co=True)}


def parse_pair(C: QCategory, obj: Any, where: str = "pair") -> PresheafPair:
    return PresheafPair(
        parse_weight(C, _need(obj, "X", where), f"{where}.X", co=False),
        parse_weight(C, _need(obj, "Y", where), f"{where}.Y", co=True),
    )


def parse_balls(C: QCategory, obj: Any, where: str = "balls") -> list[Ball]:
    if not isinstance(obj, list):
        raise ParseError("expected an array of balls", where)
    out = []
    for k, b in enumerate(obj):
        w = f"{where}[{k}]"
        at = _need(b, "at", w)
        if at not in C:
            raise ParseError(f"unknown object {at!r}", f"{w}.at")
        x = parse_element(C.quantale, _need(b, "x", w), f"{w}.x")
        y = parse_element(C.quantale, _need(b, "y", w), f"{w}.y")
        out.append(Ball(at, x, y))
    return out


def encode_balls(q: Quantale, balls: Sequence[Ball]) -> list:
    return [{"at": b.at, "x": q.encode(b.x), "y": q.encode(b.y)} for b in balls]


# --- the completion ------------------------------------------------------------------


def encode_completion(mn: MNCategory) -> dict:
    C, M = mn.base, mn.category
    q = C.quantale
    return {
        "objects": [{"P": encode_weight(C, p.X), "R": encode_weight(C, p.Y, co=True)} for p in mn.points],
        "hom": [[q.encode(x) for x in r] for r in M.hom.entries],
        "embedding": dict(mn.embedding),
    }


def _vector_label(q: Quantale, vec) -> str:
    return "(" + ", ".join(json.dumps(q.encode(x), sort_keys=True, separators=(",", ":")) for x in vec) + ")"


def hasse_edges(C: QCategory) -> list[tuple[str, str]]:
    """Covering pairs of the poset reflection, between class representatives."""
    reps = [cls[0] for cls in iso_classes(C)]
    below = {(a, b) for a in reps for b in reps if a != b and C.leq(a, b)}
    return [
        (a, b)
        for a in reps
        for b in reps
        if (a, b) in below and not any((a, m) in below and (m, b) in below for m in reps)
    ]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_category(C: QCategory, labels: dict | None = None, marked: dict | None = None, name: str = "C") -> str:
    """Hasse diagram of the isomorphism quotient, drawn bottom to top.

    ``marked`` maps object ids to a note; those nodes are filled.
    """
    labels = labels or {}
    marked = marked or {}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for cls in iso_classes(C):
        rep = cls[0]
        text = labels.get(rep, rep)
        if len(cls) > 1:
            text += " ≅ " + ", ".join(cls[1:])
        notes = [marked[c] for c in cls if c in marked]
        attrs = [f"label={_quote(text)}"]
        if notes:
            attrs += ["style=filled", 'fillcolor="lightgrey"', f"xlabel={_quote(', '.join(notes))}"]
        lines.append(f"  {_quote(rep)} [{', '.join(attrs)}];")
    for a, b in hasse_edges(C):
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_completion(mn: MNCategory) -> str:
    """The completion's order, points labelled by presheaf vectors, embedded points filled."""
    q = mn.base.quantale
    M = mn.category
    labels = {pid: f"{pid} {_vector_label(q, p.P.vector)}" for pid, p in zip(M.objects, mn.points)}
    marked: dict = {}
    for c in mn.base.objects:
        pid = mn.point_id(mn.embedding[c])
        marked[pid] = f"{marked[pid]}, {c}" if pid in marked else c
    return dot_category(M, labels, marked, name="MN")


# --- text ---------------------------------------------------------------------------


def to_text(obj: Any, indent: int = 0) -> str:
    """Plain indented rendering of a JSON-ready value."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list) and not _flat(obj):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(to_text(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return "\n".join(lines) + "\n"


def _flat(v: Any) -> bool:
    if isinstance(v, dict):
        return not v or _flat_element(v)
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or _flat_element(x) for x in v)
    return True


def _flat_element(x: Any) -> bool:
    # element encodings like {"num":1,"den":2} or [[0,1]] stay on one line
    if isinstance(x, dict):
        return set(x) == {"num", "den"}
    return all(not isinstance(y, (dict, list)) or _flat_element(y) for y in x)


def _inline(v: Any) -> str:
    return json.dumps(v, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))

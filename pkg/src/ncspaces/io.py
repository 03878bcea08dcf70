"""JSON wire format and the named-object :class:`Workspace`.

Objects are plain JSON documents, told apart by their keys:

* algebra: ``{"field", "basis", "unit", "mul": [[i, j, [[k, c], ...]], ...]}``
* quiver: ``{"field", "vertices", "arrows": [{"from", "to", "label"}], "relations", "bound"}``
* module: ``{"algebra": name, "dim", "action": {label: matrix}}``
* graded: ``{"field", "degrees": {gen: deg}, "relations", "bound"}``

A file may also hold ``{"objects": {name: document, ...}}``.  Coefficients
travel as strings such as ``"-3/7"`` so that rationals stay exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .algebra import Algebra, AlgebraError, QuiverPresentation, compile_quiver
from .graded import GradedAlgebra, graded_presentation
from .linalg import Field, field_from_tag, field_tag
from .modules import Module, check_module

DEFAULT_GRADED_BOUND = 8


class FormatError(ValueError):
    """Input that does not match the wire format; ``path`` locates the field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class InvariantError(ValueError):
    """Well-formed input whose object violates an algebraic axiom."""


# ---------------------------------------------------------------------------
# scalars


def format_scalar(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_scalar(f: Field, x, path: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(path, f"coefficient must be a string or integer, got {x!r}")
    try:
        value = Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise FormatError(path, f"cannot read {x!r} as a rational number") from None
    if f.p and value.denominator % f.p == 0:
        raise FormatError(path, f"{x!r} has a denominator divisible by {f.p}")
    return f.scalar(value)


def _matrix_out(a: np.ndarray) -> list:
    return [[format_scalar(x) for x in row] for row in a]


def _matrix_in(f: Field, rows, shape, path: str) -> np.ndarray:
    _need(isinstance(rows, list), path, "expected a list of rows")
    if len(rows) != shape[0]:
        raise FormatError(path, f"expected {shape[0]} rows, got {len(rows)}")
    out = f.zeros(*shape)
    for r, row in enumerate(rows):
        _need(isinstance(row, list), f"{path}[{r}]", "expected a list")
        if len(row) != shape[1]:
            raise FormatError(f"{path}[{r}]", f"expected {shape[1]} entries, got {len(row)}")
        for c, x in enumerate(row):
            out[r, c] = parse_scalar(f, x, f"{path}[{r}][{c}]")
    return out


def _need(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise FormatError(path, message)


def _key(doc: dict, key: str, path: str, kind=None):
    if key not in doc:
        raise FormatError(f"{path}.{key}" if path else key, "missing required field")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"{path}.{key}" if path else key, f"expected {getattr(kind, '__name__', kind)}")
    return v


def _field(doc: dict, path: str, override: Optional[Field]) -> Field:
    if override is not None:
        return override
    tag = _key(doc, "field", path)
    if tag != "Q" and not (isinstance(tag, dict) and set(tag) == {"Fp"} and isinstance(tag["Fp"], int)):
        raise FormatError(f"{path}.field" if path else "field", 'expected "Q" or {"Fp": p}')
    try:
        return field_from_tag(tag)
    except ValueError as e:
        raise FormatError(f"{path}.field" if path else "field", str(e)) from None


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else str(key)


# ---------------------------------------------------------------------------
# algebras


def algebra_to_json(A: Algebra) -> dict:
    mul = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            terms = [[k, format_scalar(A.table[i, j, k])] for k in range(n) if A.table[i, j, k] != 0]
            if terms:
                mul.append([i, j, terms])
    doc: dict = {
        "field": field_tag(A.field),
        "basis": list(A.labels),
        "unit": [format_scalar(c) for c in A.unit],
        "mul": mul,
    }
    if A.name:
        doc["name"] = A.name
    if A.points:
        doc["points"] = [[p, lab] for p, lab in A.points]
    return doc


def algebra_from_json(doc: dict, path: str = "", field: Optional[Field] = None, name: str = "") -> Algebra:
    _need(isinstance(doc, dict), path, "expected an object")
    f = _field(doc, path, field)
    basis = _key(doc, "basis", path, list)
    for k, lab in enumerate(basis):
        _need(isinstance(lab, str), _join(_join(path, "basis"), k), "basis labels must be strings")
    if len(set(basis)) != len(basis):
        raise FormatError(_join(path, "basis"), "duplicate basis labels")
    n = len(basis)
    unit = _key(doc, "unit", path, list)
    if len(unit) != n:
        raise FormatError(_join(path, "unit"), f"expected {n} coefficients, got {len(unit)}")
    u = f.array([parse_scalar(f, c, _join(_join(path, "unit"), k)) for k, c in enumerate(unit)]) if n else f.zeros(0)
    table = f.zeros(n, n, n)
    seen = set()
    mp = _join(path, "mul")
    for r, entry in enumerate(_key(doc, "mul", path, list)):
        ep = _join(mp, r)
        _need(isinstance(entry, list) and len(entry) == 3, ep, "expected [i, j, [[k, coeff], ...]]")
        i, j, terms = entry
        for v, nm in ((i, "i"), (j, "j")):
            _need(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n, ep, f"{nm} must be a basis index in [0, {n})")
        if (i, j) in seen:
            raise FormatError(ep, f"duplicate product entry for ({i}, {j})")
        seen.add((i, j))
        _need(isinstance(terms, list), _join(ep, 2), "expected a list of [k, coeff]")
        for t, term in enumerate(terms):
            tp = _join(_join(ep, 2), t)
            _need(isinstance(term, list) and len(term) == 2, tp, "expected [k, coeff]")
            k, c = term
            _need(isinstance(k, int) and not isinstance(k, bool) and 0 <= k < n, tp, f"k must be a basis index in [0, {n})")
            table[i, j, k] = f.scalar(f.add(table[i, j, k], parse_scalar(f, c, _join(tp, 1))))
    points = doc.get("points", [])
    _need(isinstance(points, list), _join(path, "points"), "expected a list of [name, label]")
    for k, pt in enumerate(points):
        ok = isinstance(pt, list) and len(pt) == 2 and all(isinstance(x, str) for x in pt) and pt[1] in basis
        _need(ok, _join(_join(path, "points"), k), "expected [point name, basis label]")
    A = Algebra(f, basis, table, u, name or doc.get("name", ""), tuple(tuple(p) for p in points))
    try:
        A.validate()
    except AlgebraError as e:
        raise InvariantError(str(e)) from None
    return A


# ---------------------------------------------------------------------------
# quivers


def quiver_to_json(Q: QuiverPresentation, name: str = "") -> dict:
    doc: dict = {
        "field": field_tag(Q.field),
        "vertices": list(Q.vertices),
        "arrows": [{"from": s, "to": t, "label": lab} for s, t, lab in Q.arrows],
        "relations": [[[list(p), format_scalar(c)] for p, c in rel] for rel in Q.relations],
        "bound": Q.bound,
    }
    if name:
        doc["name"] = name
    return doc


def quiver_from_json(doc: dict, path: str = "", field: Optional[Field] = None) -> QuiverPresentation:
    _need(isinstance(doc, dict), path, "expected an object")
    f = _field(doc, path, field)
    vertices = _key(doc, "vertices", path, list)
    _need(len(set(map(str, vertices))) == len(vertices), _join(path, "vertices"), "duplicate vertices")
    arrows = []
    labels = set()
    for k, a in enumerate(_key(doc, "arrows", path, list)):
        ap = _join(_join(path, "arrows"), k)
        _need(isinstance(a, dict), ap, "expected {from, to, label}")
        s, t, lab = (_key(a, key, ap) for key in ("from", "to", "label"))
        _need(s in vertices, _join(ap, "from"), f"unknown vertex {s!r}")
        _need(t in vertices, _join(ap, "to"), f"unknown vertex {t!r}")
        _need(isinstance(lab, str) and lab not in labels, _join(ap, "label"), "labels must be unique strings")
        labels.add(lab)
        arrows.append((s, t, lab))
    rels = []
    for r, rel in enumerate(doc.get("relations", [])):
        rp = _join(_join(path, "relations"), r)
        _need(isinstance(rel, list), rp, "expected a list of [path, coeff]")
        terms = []
        for t, term in enumerate(rel):
            tp = _join(rp, t)
            _need(isinstance(term, list) and len(term) == 2 and isinstance(term[0], list), tp, "expected [path, coeff]")
            for lab in term[0]:
                _need(lab in labels, _join(tp, 0), f"unknown arrow {lab!r}")
            terms.append((list(term[0]), parse_scalar(f, term[1], _join(tp, 1))))
        rels.append(tuple(terms))
    bound = _key(doc, "bound", path, int)
    _need(bound >= 0, _join(path, "bound"), "bound must be non-negative")
    return QuiverPresentation(tuple(vertices), tuple(arrows), tuple(rels), bound, f)


def compile_quiver_document(doc: dict, path: str = "", field: Optional[Field] = None, name: str = "") -> Algebra:
    """Compile a quiver document; each vertex ``v`` names the simple at ``e{v}``."""
    Q = quiver_from_json(doc, path, field)
    try:
        A = compile_quiver(Q, name or doc.get("name", ""))
    except AlgebraError as e:
        raise InvariantError(str(e)) from None
    points = [(str(v), f"e{v}") for v in Q.vertices if f"e{v}" in A.labels]
    return Algebra(A.field, A.labels, A.table, A.unit, A.name, tuple(points))


# ---------------------------------------------------------------------------
# modules


def module_to_json(M: Module, algebra_name: str) -> dict:
    return {
        "algebra": algebra_name,
        "dim": M.dim,
        "action": {lab: _matrix_out(a) for lab, a in zip(M.algebra.labels, M.action)},
    }


def module_from_json(doc: dict, A: Algebra, path: str = "", name: str = "") -> Module:
    _need(isinstance(doc, dict), path, "expected an object")
    d = _key(doc, "dim", path, int)
    _need(d >= 0, _join(path, "dim"), "dim must be non-negative")
    action = _key(doc, "action", path, dict)
    for lab in action:
        _need(lab in A.labels, _join(_join(path, "action"), lab), f"not a basis label of {A.name or 'the algebra'}")
    acts = []
    for lab in A.labels:
        _need(lab in action, _join(_join(path, "action"), lab), "missing action matrix")
        acts.append(_matrix_in(A.field, action[lab], (d, d), _join(_join(path, "action"), lab)))
    M = Module(A, tuple(acts), name)
    ok, msg = check_module(A, M)
    if not ok:
        raise InvariantError(f"not a module: {msg}")
    return M


# ---------------------------------------------------------------------------
# graded algebras


def graded_to_json(doc_source: dict) -> dict:
    """Canonical form of a graded document (graded algebras keep their source)."""
    out = {
        "field": doc_source["field"],
        "degrees": dict(doc_source["degrees"]),
        "relations": [[[list(w), format_scalar(c)] for w, c in rel] for rel in doc_source.get("relations", [])],
    }
    if "bound" in doc_source:
        out["bound"] = doc_source["bound"]
    if doc_source.get("name"):
        out["name"] = doc_source["name"]
    return out


def graded_from_json(
    doc: dict, path: str = "", field: Optional[Field] = None, bound: Optional[int] = None, name: str = ""
) -> GradedAlgebra:
    _need(isinstance(doc, dict), path, "expected an object")
    f = _field(doc, path, field)
    degrees = _key(doc, "degrees", path, dict)
    for g, d in degrees.items():
        _need(isinstance(d, int) and not isinstance(d, bool) and d >= 1, _join(_join(path, "degrees"), g), "degree must be a positive integer")
    rels = []
    for r, rel in enumerate(doc.get("relations", [])):
        rp = _join(_join(path, "relations"), r)
        _need(isinstance(rel, list), rp, "expected a list of [word, coeff]")
        terms: dict = {}
        for t, term in enumerate(rel):
            tp = _join(rp, t)
            _need(isinstance(term, list) and len(term) == 2 and isinstance(term[0], list), tp, "expected [word, coeff]")
            for g in term[0]:
                _need(g in degrees, _join(tp, 0), f"unknown generator {g!r}")
            word = "*".join(term[0]) or "1"
            terms[word] = terms.get(word, 0) + Fraction(parse_scalar(f, term[1], _join(tp, 1)))
        if len({sum(degrees[g] for g in w.split("*") if g != "1") for w in terms}) > 1:
            raise InvariantError(f"{rp}: relation is not homogeneous")
        rels.append(terms)
    N = bound if bound is not None else doc.get("bound", DEFAULT_GRADED_BOUND)
    _need(isinstance(N, int) and N >= 0, _join(path, "bound"), "bound must be a non-negative integer")
    return graded_presentation(list(degrees.items()), rels, N, f, name or doc.get("name", ""))


# ---------------------------------------------------------------------------
# documents


def document_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise FormatError("", "expected a JSON object")
    for key, kind in (("mul", "algebra"), ("arrows", "quiver"), ("action", "module"), ("degrees", "graded")):
        if key in doc:
            return kind
    if "objects" in doc:
        return "bundle"
    raise FormatError("", "cannot tell the object kind (expected one of mul/arrows/action/degrees/objects)")


def canonical(doc: dict) -> dict:
    """Canonical ordering of a single-object document (used for round trips)."""
    kind = document_kind(doc)
    if kind == "algebra":
        return algebra_to_json(algebra_from_json(doc))
    if kind == "quiver":
        return quiver_to_json(quiver_from_json(doc), doc.get("name", ""))
    if kind == "graded":
        graded_from_json(doc)
        rels = [[(list(t[0]), Fraction(t[1])) for t in rel] for rel in doc.get("relations", [])]
        return graded_to_json(dict(doc, relations=rels))
    raise FormatError("", f"canonical form needs a standalone object, got a {kind}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=False)


def _parse_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} column {e.colno}", e.msg) from None


# ---------------------------------------------------------------------------
# workspace


@dataclass
class Entry:
    name: str
    kind: str  # algebra | module | graded | subspace | ideal | open | other
    obj: Any
    op: str
    inputs: tuple = ()


@dataclass
class Workspace:
    """Named objects plus a log recording how each one was built."""

    entries: dict = dc_field(default_factory=dict)
    log: list = dc_field(default_factory=list)
    field: Optional[Field] = None  # override applied to everything loaded
    graded_bound: Optional[int] = None
    current: Optional[str] = None  # algebra used when a command names none
    current_open: Optional[str] = None  # open subspace from the last "localize complement"

    def add(self, name: str, kind: str, obj, op: str, inputs=()) -> Entry:
        if name in self.entries:
            raise KeyError(f"name {name!r} already used by a {self.entries[name].kind}")
        e = Entry(name, kind, obj, op, tuple(inputs))
        self.entries[name] = e
        self.log.append({"name": name, "kind": kind, "op": op, "inputs": list(e.inputs)})
        return e

    def fresh(self, stem: str) -> str:
        if stem not in self.entries:
            return stem
        k = 2
        while f"{stem}#{k}" in self.entries:
            k += 1
        return f"{stem}#{k}"

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def get(self, name: str, kind: Optional[str] = None):
        if name not in self.entries:
            if kind in (None, "algebra", "graded") and name in FIXTURES:
                self.load_fixture(name)
            else:
                raise KeyError(f"unknown name {name!r}")
        e = self.entries[name]
        if kind is not None and e.kind != kind:
            raise KeyError(f"{name!r} is a {e.kind}, not a {kind}")
        return e.obj

    def names(self, kind: Optional[str] = None) -> list:
        return [n for n, e in self.entries.items() if kind is None or e.kind == kind]

    # loading --------------------------------------------------------------
    def load_document(self, doc, name: str = "", source: str = "<text>", path: str = "") -> list:
        kind = document_kind(doc)
        if kind == "bundle":
            objs = _key(doc, "objects", path, dict)
            added = []
            for nm, sub in objs.items():
                added += self.load_document(sub, nm, source, _join(_join(path, "objects"), nm))
            return added
        nm = name or doc.get("name") or Path(source).stem
        if kind == "algebra":
            obj = algebra_from_json(doc, path, self.field, nm)
        elif kind == "quiver":
            obj = compile_quiver_document(doc, path, self.field, nm)
            kind = "algebra"
        elif kind == "graded":
            obj = graded_from_json(doc, path, self.field, self.graded_bound, nm)
        else:
            alg = _key(doc, "algebra", path, str)
            try:
                A = self.get(alg, "algebra")
            except KeyError as e:
                raise FormatError(_join(path, "algebra"), str(e.args[0])) from None
            obj = module_from_json(doc, A, path, nm)
        self.add(nm, kind, obj, "load", (source,))
        return [nm]

    def load_text(self, text: str, name: str = "", source: str = "<text>") -> list:
        return self.load_document(_parse_text(text), name, source)

    def load_path(self, path, name: str = "") -> list:
        p = Path(path)
        return self.load_text(p.read_text(), name, str(p))

    def load_fixture(self, name: str) -> list:
        return self.load_text(fixture_text(name), name, f"fixture:{name}")


FIXTURES = ("T2", "KK", "DUAL", "DUAL_quiver", "GL", "UT")


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"no fixture named {name!r}")
    return resources.files("ncspaces").joinpath("data", f"{name}.json").read_text()


def fixture_document(name: str) -> dict:
    return json.loads(fixture_text(name))


def load_fixture_algebra(name: str, field: Optional[Field] = None) -> Algebra:
    ws = Workspace(field=field)
    ws.load_fixture(name)
    return ws.get(name, "algebra")

"""Command-line interface: ``ncspaces <command> ...``.

Every command prints a small table, or with ``--json`` a JSON record.  Exit
status is 0 on success, 1 when a verification suite or internal certificate
fails, and 2 for usage and input errors.  ``run_command`` is the same surface
as a function, operating on a shared :class:`~ncspaces.io.Workspace`.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .algebra import Algebra, AlgebraError, Ideal, ideal_generated, ideal_power, radical, truncated_polynomial, upper_triangular, find_basis_matching
from .graded import (
    GradedAlgebra,
    GradedError,
    central_divisor,
    graded_isomorphic,
    graded_line_block,
    graded_plane,
    graded_regular,
    hilbert,
    point_tails,
    rees,
    tails_iso_bounded,
)
from .io import FIXTURES, FormatError, InvariantError, Workspace, algebra_to_json, module_to_json
from .linalg import GF, FieldMismatch, Subspace, field_from_tag
from .localization import (
    OpenSubspace,
    contains_in_complement,
    extend,
    is_stable_class,
    open_complement,
    restrict,
    tau_and_r1,
    unit_map,
    z_cap_u,
)
from .modules import (
    Module,
    ModuleError,
    composition_factors,
    direct_sum,
    end_algebra,
    ext_dim,
    indecomposable_projective,
    injective_envelope,
    is_isomorphic,
    is_tiny,
    module_from_subspace,
    quotient_module,
    regular_module,
    simple_module,
    socle,
    top,
    zero_module,
)
from .sampling import all_ideals
from .subspaces import (
    ClosedSubspace,
    SerreClass,
    closed_combine,
    empty_subspace,
    point_index,
    point_name,
    point_names,
    point_subspace,
    points_and_primes,
    serre_and_sat,
    support,
    whole_space,
    zero_locus,
)
from .suites import ACCEPTANCE, SUITES, verify_suite

ENUMERATION_LIMIT = 1 << 12
GRADED_FIXTURES = ("GL", "UT")


class UsageError(ValueError):
    pass


@dataclass
class CommandResult:
    text: str
    record: dict
    status: int = 0


# ---------------------------------------------------------------------------
# references


def _algebra(ws: Workspace, name: Optional[str]) -> Algebra:
    name = name or ws.current
    if not name:
        raise UsageError("no algebra given (use --algebra NAME)")
    A = ws.get(name, "algebra")
    ws.current = name
    return A


def _graded(ws: Workspace, name: str) -> GradedAlgebra:
    return ws.get(name, "graded")


def closed_ref(ws: Workspace, A: Algebra, text: str) -> ClosedSubspace:
    """A point name, ``X``, ``empty``, ``rad``, ``ideal:lab,lab`` or a stored subspace."""
    if text in ws and ws.entries[text].kind == "subspace":
        return ws.get(text, "subspace")
    if text in ("X", "whole"):
        return whole_space(A)
    if text in ("empty", "none"):
        return empty_subspace(A)
    if text == "rad":
        return zero_locus(radical(A))
    if text.startswith("ideal:"):
        labels = [x for x in text[len("ideal:"):].split(",") if x]
        bad = [x for x in labels if x not in A.labels]
        if bad:
            raise UsageError(f"unknown basis labels {bad}")
        return zero_locus(ideal_generated(A, [A.basis_vector(A.labels.index(x)) for x in labels]))
    return point_subspace(A, text)


def class_ref(ws: Workspace, A: Algebra, text: str) -> SerreClass:
    """A closed-subspace reference, or a comma list of point names."""
    if "," in text and not text.startswith("ideal:"):
        return SerreClass(A, frozenset(point_index(A, p) for p in text.split(",") if p))
    return serre_and_sat(closed_ref(ws, A, text))


def module_ref(ws: Workspace, A: Algebra, text: str) -> Module:
    """A stored module, or ``O_x`` / ``P_x`` / ``E_x`` for the simple,
    projective cover and injective envelope at point ``x``, ``A`` or ``0``."""
    if text in ws:
        M = ws.get(text)
        if not isinstance(M, Module):
            raise UsageError(f"{text!r} is not a module")
        return M
    if text in ("A", "regular"):
        return regular_module(A)
    if text == "0":
        return zero_module(A)
    kind, _, pt = text.partition("_")
    if pt and kind in ("O", "P", "E", "I"):
        i = point_index(A, pt)
        if kind == "O":
            return simple_module(A, i)
        if kind == "P":
            return indecomposable_projective(A, i)
        return injective_envelope(simple_module(A, i)).module
    raise UsageError(f"unknown module {text!r} (stored names: {ws.names('module')})")


def _factors(A: Algebra, M: Module) -> dict:
    return {point_name(A, i): c for i, c in sorted(composition_factors(M).items())}


def _fmt_factors(fac: dict) -> str:
    return " + ".join(f"{c}*O_{p}" if c > 1 else f"O_{p}" for p, c in fac.items()) or "0"


def _module_summary(A: Algebra, M: Module) -> dict:
    if M.dim == 0:
        return {"dim": 0, "factors": {}, "socle": {}, "top": {}}
    soc = module_from_subspace(M, socle(M))
    return {"dim": M.dim, "factors": _factors(A, M), "socle": _factors(A, soc), "top": _factors(A, top(M).module)}


def _table(rows: list, header: list) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _ideal_text(I: Ideal) -> str:
    if I.dim == 0:
        return "0"
    if I.dim == I.ambient.dim:
        return "A"
    return "span{" + ", ".join(I.describe()) + "}"


def _store(ws: Workspace, stem: str, kind: str, obj, op: str, inputs=()) -> str:
    name = ws.fresh(stem)
    ws.add(name, kind, obj, op, inputs)
    return name


# ---------------------------------------------------------------------------
# commands


def cmd_describe(ws: Workspace, args) -> CommandResult:
    name = args.name or args.algebra or ws.current
    if name and (name in ws and ws.entries[name].kind == "graded" or name not in ws and name in GRADED_FIXTURES):
        G = _graded(ws, name)
        rec = {"name": name, "kind": "graded", "field": repr(G.field), "bound": G.bound, "hilbert": list(G.dims),
               "generators": [[g[0], g[1]] for g in G.generators]}
        return CommandResult(f"{name}: graded algebra over {G.field!r}, generators {[g[0] for g in G.generators]}, "
                             f"Hilbert function {list(G.dims)} up to degree {G.bound}", rec)
    A = _algebra(ws, name)
    S = A.structure
    rad = S.radical
    loewy = 1
    while ideal_power(rad, loewy).dim:
        loewy += 1
    n = S.simple_count if S.split else None
    rec = {
        "name": A.name or name,
        "field": repr(A.field),
        "dim": A.dim,
        "basis": list(A.labels),
        "radical_dim": rad.dim,
        "semisimple": rad.dim == 0,
        "split": S.split,
        "points": sorted(point_names(A)) if S.split else None,
        "simples": n,
        "loewy_length": loewy,
    }
    shape = "semisimple" if rad.dim == 0 else f"radical of dim {rad.dim}, Loewy length {loewy}"
    text = f"{rec['name']}: dim {A.dim} over {A.field!r}, {shape}, {n} points {rec['points']}"
    return CommandResult(text, rec)


def cmd_simples(ws: Workspace, args) -> CommandResult:
    A = _algebra(ws, args.algebra)
    n = A.structure.require_split().simple_count
    simples = [simple_module(A, i) for i in range(n)]
    rows, recs = [], []
    for i, S in enumerate(simples):
        P = indecomposable_projective(A, i)
        E = injective_envelope(S).module
        ext1 = [ext_dim(S, T, 1) for T in simples]
        pt = point_name(A, i)
        recs.append({"point": pt, "index": i, "dim": S.dim, "end_dim": end_algebra(S).dim,
                     "projective": _module_summary(A, P), "injective": _module_summary(A, E),
                     "ext1_to": dict(zip((point_name(A, j) for j in range(n)), ext1))})
        rows.append([pt, S.dim, P.dim, _fmt_factors(_factors(A, top(P).module)), E.dim,
                     " ".join(f"{point_name(A, j)}:{d}" for j, d in enumerate(ext1))])
    text = _table(rows, ["point", "dim", "dim P", "top P", "dim E", "Ext1(O, O_j)"])
    return CommandResult(text, {"algebra": A.name, "simples": recs})


def cmd_ideals(ws: Workspace, args) -> CommandResult:
    A = _algebra(ws, args.algebra)
    S = A.structure
    primes = {P.space for P in S.prime_ideals}
    rad = S.radical
    powers = {}
    k = 1
    P = rad
    while True:
        powers.setdefault(P.space, f"rad^{k}")
        if P.dim == 0:
            break
        k += 1
        P = ideal_power(rad, k)
    if A.field.p and A.field.p ** A.dim <= ENUMERATION_LIMIT:
        ideals, complete = all_ideals(A), True
    else:
        ideals, complete = [Ideal(A, s) for s in powers] + list(S.prime_ideals), False
    seen, rows, recs = set(), [], []
    for I in sorted(ideals, key=lambda I: (I.dim, I.describe())):
        if I.space in seen:
            continue
        seen.add(I.space)
        tags = []
        if I.space in primes:
            tags.append("prime")
        if I.space in powers:
            tags.append(powers[I.space])
        rows.append([I.dim, _ideal_text(I), ",".join(tags)])
        recs.append({"dim": I.dim, "basis": I.describe(), "tags": tags})
    text = _table(rows, ["dim", "ideal", "notes"])
    if not complete:
        text += "\n(structural ideals only; the full lattice is enumerated for small finite fields)"
    return CommandResult(text, {"algebra": A.name, "complete": complete, "ideals": recs})


def cmd_subspace(ws: Workspace, args) -> CommandResult:
    A = _algebra(ws, args.algebra)
    if args.op == "support":
        if len(args.refs) != 1:
            raise UsageError("subspace support takes one module")
        M = module_ref(ws, A, args.refs[0])
        W = support(M)
        label = f"supp({args.refs[0]})"
    else:
        if len(args.refs) != 2:
            raise UsageError(f"subspace {args.op} takes two closed subspaces")
        W1, W2 = (closed_ref(ws, A, r) for r in args.refs)
        W = closed_combine(args.op, W1, W2)
        sym = {"intersect": " n ", "union": " u ", "gabriel": "."}[args.op]
        label = sym.join(args.refs)
    name = _store(ws, label, "subspace", W, f"subspace {args.op}", args.refs)
    pts = sorted(point_name(A, i) for i in W.simples())
    rec = {"name": name, "ideal": W.ideal.describe(), "ideal_dim": W.ideal.dim, "points": pts}
    return CommandResult(f"{name}: ideal {_ideal_text(W.ideal)}, points {pts}", rec)


def cmd_points(ws: Workspace, args) -> CommandResult:
    A = _algebra(ws, args.algebra)
    pp = points_and_primes(A)
    rows, recs = [], []
    for pt, prime in zip(pp.points, pp.primes):
        tiny = is_tiny(simple_module(A, pt.index)).tiny
        rows.append([pt.name, pt.index, "yes" if pt.rational else "no", "yes" if tiny else "no", _ideal_text(prime.ideal)])
        recs.append({"point": pt.name, "index": pt.index, "rational": pt.rational, "tiny": tiny, "prime_ideal": prime.ideal.describe()})
    return CommandResult(_table(rows, ["point", "index", "rational", "tiny", "prime ideal"]), {"algebra": A.name, "points": recs})


def _current_open(ws: Workspace) -> OpenSubspace:
    name = ws.current_open
    if not name:
        raise UsageError("no open subspace yet (run 'localize complement W' first, or pass --remove W)")
    return ws.get(name, "open")


def cmd_localize(ws: Workspace, args) -> CommandResult:
    if args.op == "complement":
        A = _algebra(ws, args.algebra)
        if len(args.refs) != 1:
            raise UsageError("localize complement takes one closed subspace or point list")
        cls = class_ref(ws, A, args.refs[0])
        U = open_complement(A, cls)
        name = _store(ws, f"X\\{args.refs[0]}", "open", U, "localize complement", (A.name, args.refs[0]))
        ws.current_open = name
        keep = sorted(point_name(A, i) for i in cls.complement.simples)
        rec = {"name": name, "removed": cls.names(), "remaining_points": keep, "corner_dim": U.B.dim}
        return CommandResult(f"{name}: removes {cls.names()}, keeps {keep}; corner algebra eAe of dim {U.B.dim}", rec)
    if args.remove:
        A = _algebra(ws, args.algebra)
        cls = class_ref(ws, A, args.remove)
        ws.current_open = _store(ws, f"X\\{args.remove}", "open", open_complement(A, cls), "localize complement", (A.name, args.remove))
    U = _current_open(ws)
    A = U.ambient
    if len(args.refs) != 1:
        raise UsageError(f"localize {args.op} takes one module")
    ref = args.refs[0]
    if args.op == "extend":
        N = ws.get(ref)
        if not isinstance(N, Module) or not N.algebra.same_as(U.B):
            raise UsageError(f"{ref!r} is not a module over the corner algebra of the current open")
        M = extend(U, N)
        name = _store(ws, f"j_*{ref}", "module", M, "localize extend", (ref,))
        rec = {"name": name, **_module_summary(A, M)}
        return CommandResult(f"{name}: dim {M.dim}, factors {_fmt_factors(rec['factors'])}", rec)
    M = module_ref(ws, A, ref)
    if args.op == "restrict":
        N = restrict(U, M)
        name = _store(ws, f"j^*{ref}", "module", N, "localize restrict", (ref,))
        return CommandResult(f"{name}: module of dim {N.dim} over the corner algebra (dim {U.B.dim})",
                             {"name": name, "dim": N.dim, "corner_dim": U.B.dim})
    if args.op == "torsion":
        rep = tau_and_r1(U, M)
        tau = module_from_subspace(M, rep.torsion)
        rec = {
            "module": ref,
            "tau": _module_summary(A, tau),
            "extension": _module_summary(A, rep.extension),
            "r1": _module_summary(A, rep.r1),
            "r1_derived_dim": rep.r1_derived_dim,
            "certificates": {k: bool(v) for k, v in rep.certificates.items()},
            "stable_class": is_stable_class(U),
        }
        lines = [f"0 -> tau {ref} -> {ref} -> j_*j^*{ref} -> R1tau {ref} -> 0  with dimensions "
                 f"{tau.dim}, {M.dim}, {rep.extension.dim}, {rep.r1.dim}"]
        lines += [f"  {'ok  ' if v else 'FAIL'} {k}" for k, v in rep.certificates.items()]
        if not rec["stable_class"]:
            lines.append("  note: the removed class is not stable, so the cokernel need not equal the derived R1 tau")
        status = 0 if rep.ok else 1
        return CommandResult("\n".join(lines), rec, status)
    if args.op == "extend-restrict":
        E, eta = unit_map(U, M)
        name = _store(ws, f"j_*j^*{ref}", "module", E, "localize extend-restrict", (ref,))
        f = A.field
        injective = M.dim == 0 or f.rank(eta) == M.dim
        image = Subspace.span(f, E.dim, eta) if M.dim and E.dim else Subspace.zero(f, E.dim)
        C = quotient_module(E, image).module
        rec = {"name": name, **_module_summary(A, E), "unit_injective": bool(injective), "cokernel": _module_summary(A, C)}
        flag = ""
        if injective and C.dim:
            split = is_isomorphic(E, direct_sum(M, C).module)
            rec["split"] = bool(split)
            flag = f"{'split' if split else 'non-split'} extension by {_fmt_factors(_factors(A, C))}"
            rec["flag"] = flag
        elif injective:
            flag = f"{ref} lies in the open subspace"
            rec["flag"] = flag
        text = f"{name}: dim {E.dim}, socle {_fmt_factors(rec['socle'])}, top {_fmt_factors(rec['top'])}"
        if flag:
            text += f"; {flag}"
        return CommandResult(text, rec)
    raise UsageError(f"unknown localize operation {args.op!r}")


def cmd_contains(ws: Workspace, args) -> CommandResult:
    A = _algebra(ws, args.algebra)
    V = closed_ref(ws, A, args.V)
    cls = class_ref(ws, A, args.W)
    v = contains_in_complement(V, cls)
    rec = {"V": args.V, "W": args.W, "contained": v.contained, "by_ext": v.by_ext, "by_localization": v.by_localization}
    if v.witness:
        _, S, G, h, e1 = v.witness
        rec["witness"] = {"simple": _factors(A, S), "module": module_to_json(G, A.name or "A"), "hom": h, "ext1": e1}
    text = f"{args.V} inside X\\{args.W}: {v.contained} (Hom/Ext1 criterion {v.by_ext}, unit criterion {v.by_localization})"
    return CommandResult(text, rec)


def cmd_zcapu(ws: Workspace, args) -> CommandResult:
    A = _algebra(ws, args.algebra)
    Z = closed_ref(ws, A, args.Z)
    W = closed_ref(ws, A, args.W)
    r = z_cap_u(Z, W)
    rec = {"Z": args.Z, "W": args.W, "defined": r.defined}
    if r.defined:
        keep = sorted(point_name(A, i) for i in r.simples)
        rec["points"] = keep
        text = f"{args.Z} n (X\\{args.W}) is defined: the open part of {args.Z} with points {keep}"
    else:
        i, j, d = r.witness
        rec["witness"] = {"from": point_name(A, i), "to": point_name(A, j), "ext1": d}
        text = (f"{args.Z} n (X\\{args.W}) is not defined: "
                f"Ext1(O_{point_name(A, i)}, O_{point_name(A, j)}) has dimension {d}")
    return CommandResult(text, rec)


def cmd_graded(ws: Workspace, args) -> CommandResult:
    op, refs = args.op, args.refs
    if op == "hilbert":
        G = _graded(ws, refs[0] if refs else "UT")
        h = hilbert(graded_regular(G))
        return CommandResult(f"{G.name}: Hilbert function {list(h)} (degrees 0..{G.bound})", {"name": G.name, "hilbert": list(h)})
    if op == "divisor":
        if len(refs) != 2:
            raise UsageError("graded divisor NAME GENERATOR")
        G = _graded(ws, refs[0])
        d, z = G.generator_vector(refs[1])
        rep = central_divisor(G, z, d, graded_regular(G))
        rec = {"name": G.name, "z": refs[1], "degree": d, "kernel": list(rep.kernel_dims),
               "cokernel_hilbert": list(hilbert(rep.cokernel)), "checks": {k: bool(v) for k, v in rep.checks.items()}}
        text = [f"0 -> K -> {G.name}(-{d}) --{refs[1]}--> {G.name} -> {G.name}/{refs[1]} -> 0",
                f"  kernel dims {rec['kernel']}", f"  cokernel Hilbert {rec['cokernel_hilbert']}"]
        text += [f"  {'ok  ' if v else 'FAIL'} {k}" for k, v in rep.checks.items()]
        return CommandResult("\n".join(text), rec, 0 if rep.ok else 1)
    if op in ("rees", "points"):
        name = refs[0] if refs else "kx"
        N = args.bound or 8
        if name == "kx":
            R = truncated_polynomial(N + 1, _field_or_default(ws), "x", "k[x]")
            gens = args.gens.split(",") if args.gens else ["x"]
        else:
            R = _algebra(ws, name)
            gens = args.gens.split(",") if args.gens else [lab for lab in R.labels if lab != "1"]
        if op == "rees":
            G = rees(R, gens, N)
            iso = None
            if name == "kx":
                iso = graded_isomorphic(G, graded_plane(N, R.field)) is not None
            rec = {"algebra": R.name, "generators": gens, "hilbert": list(G.dims), "isomorphic_to_UT": iso}
            text = f"Rees({R.name}) with filtration by {gens}: Hilbert {list(G.dims)}"
            if iso is not None:
                text += f"; isomorphic to UT up to degree {N}: {iso}"
            return CommandResult(text, rec)
        n = R.structure.require_split().simple_count
        tails = [point_tails(R, simple_module(R, i), gens, N) for i in range(n)]
        rows, recs = [], []
        for i, V in enumerate(tails):
            rows.append([point_name(R, i), list(hilbert(V))])
            recs.append({"point": point_name(R, i), "hilbert": list(hilbert(V))})
        distinct = all(not tails_iso_bounded(a, b, N - 1) for a, b in _pairs(tails))
        text = _table(rows, ["point", "Hilbert"]) + f"\npairwise non-isomorphic tails: {distinct}"
        return CommandResult(text, {"algebra": R.name, "tails": recs, "pairwise_distinct": distinct})
    if op == "zd":
        if not refs:
            raise UsageError("graded zd D  (for example 0,1,2)")
        D = [int(x) for x in refs[0].split(",")]
        f = _field_or_default(ws)
        B = graded_line_block(D, f)
        match = find_basis_matching(B, upper_triangular(len(set(D)), f)) is not None
        rec = {"D": D, "dim": B.dim, "matches_upper_triangular": match, "algebra": algebra_to_json(B)}
        return CommandResult(f"Z_D for D = {D}: dim {B.dim}, matches {len(set(D))}x{len(set(D))} upper triangular: {match}", rec)
    raise UsageError(f"unknown graded operation {op!r}")


def _pairs(xs):
    return [(a, b) for k, a in enumerate(xs) for b in xs[k + 1:]]


def _field_or_default(ws: Workspace):
    return ws.field or GF(2)


def cmd_verify(ws: Workspace, args) -> CommandResult:
    names = list(ACCEPTANCE) if args.suite == "all" else [args.suite]
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; known: {', '.join(SUITES)}, all")
    reports = [verify_suite(n, args.seed, args.workers) for n in names]
    status = 0 if all(r.passed for r in reports) else 1
    text = "\n".join(r.table() for r in reports)
    rec = {"reports": [r.to_dict() for r in reports], "passed": status == 0}
    return CommandResult(text, rec, status)


def cmd_load(ws: Workspace, args) -> CommandResult:
    added = []
    for p in args.refs:
        added += ws.load_path(p)
    return CommandResult("loaded " + ", ".join(added), {"loaded": added})


COMMANDS = {
    "describe": cmd_describe,
    "simples": cmd_simples,
    "ideals": cmd_ideals,
    "subspace": cmd_subspace,
    "points": cmd_points,
    "localize": cmd_localize,
    "contains": cmd_contains,
    "zcapu": cmd_zcapu,
    "graded": cmd_graded,
    "verify": cmd_verify,
    "load": cmd_load,
}


# ---------------------------------------------------------------------------
# parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra name (fixtures: " + ", ".join(FIXTURES) + ")")
    common.add_argument("--module", help="module name")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, help="truncation bound for graded objects")
    common.add_argument("--json", action="store_true", help="print the machine-readable record")
    common.add_argument("--field", help='override the field of loaded objects: "Q", "F2", "F3", ...')
    common.add_argument("--load", action="append", default=[], metavar="FILE", help="load objects from a JSON file")
    common.add_argument("--state", metavar="FILE", help="replay and extend a command log kept in FILE")

    p = _Parser(prog="ncspaces", description="Exact subspace calculus for finite-dimensional and graded algebras.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sp = sub.add_parser("describe", parents=[common], help="summary of an algebra")
    sp.add_argument("name", nargs="?")
    sub.add_parser("simples", parents=[common], help="simples, projective covers, injective envelopes, Ext1")
    sub.add_parser("ideals", parents=[common], help="two-sided ideals")
    sp = sub.add_parser("subspace", parents=[common], help="closed subspace operations")
    sp.add_argument("op", choices=["intersect", "union", "gabriel", "support"])
    sp.add_argument("refs", nargs="*")
    sub.add_parser("points", parents=[common], help="closed points and prime ideals")
    sp = sub.add_parser("localize", parents=[common], help="open complements and the functors j^*, j_*")
    sp.add_argument("op", choices=["complement", "restrict", "extend", "torsion", "extend-restrict"])
    sp.add_argument("refs", nargs="*")
    sp.add_argument("--remove", metavar="W", help="work on X minus W instead of the last complement")
    sp = sub.add_parser("contains", parents=[common], help="is V inside X minus W?")
    sp.add_argument("V")
    sp.add_argument("W")
    sp = sub.add_parser("zcapu", parents=[common], help="Z intersected with X minus W")
    sp.add_argument("Z")
    sp.add_argument("W")
    sp = sub.add_parser("graded", parents=[common], help="graded algebras: hilbert, divisor, rees, points, zd")
    sp.add_argument("op", choices=["hilbert", "divisor", "rees", "points", "zd"])
    sp.add_argument("refs", nargs="*")
    sp.add_argument("--gens", help="comma-separated filtration generators")
    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("--suite", required=True, help="suite name or 'all': " + ", ".join(SUITES))
    sp.add_argument("--workers", type=int, default=1)
    sp = sub.add_parser("load", parents=[common], help="load JSON files into the workspace")
    sp.add_argument("refs", nargs="+")
    return p


def _prepare(ws: Workspace, args) -> None:
    if args.field:
        ws.field = field_from_tag(args.field)
    if args.bound is not None:
        ws.graded_bound = args.bound
    for path in args.load:
        ws.load_path(path)
    if args.module and args.command == "localize" and not args.refs:
        args.refs = [args.module]


def run_command(command, ws: Optional[Workspace] = None) -> CommandResult:
    """Run one command (a string or argv list) against ``ws``."""
    ws = ws if ws is not None else Workspace()
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    args = build_parser().parse_args(argv)
    if not args.command:
        raise UsageError("missing command")
    _prepare(ws, args)
    return COMMANDS[args.command](ws, args)


_INPUT_ERRORS = (UsageError, FormatError, InvariantError, KeyError, AlgebraError, ModuleError, GradedError, FieldMismatch, OSError)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0 if argv else 2
    state_path = None
    if "--state" in argv:
        k = argv.index("--state")
        if k + 1 >= len(argv):
            print("error: --state needs a file", file=sys.stderr)
            return 2
        state_path = Path(argv[k + 1])
        argv = argv[:k] + argv[k + 2:]
    ws = Workspace()
    history = []
    try:
        if state_path and state_path.exists():
            history = json.loads(state_path.read_text()).get("commands", [])
            for old in history:
                run_command(old, ws)
        res = run_command(argv, ws)
    except _INPUT_ERRORS as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"assertion failed: {e}", file=sys.stderr)
        return 1
    if state_path:
        state_path.write_text(json.dumps({"commands": history + [argv], "log": ws.log}, indent=1))
    if "--json" in argv:
        print(json.dumps(res.record, indent=1, sort_keys=True, default=_jsonable))
    else:
        print(res.text)
    return res.status


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return str(x)


if __name__ == "__main__":
    sys.exit(main())

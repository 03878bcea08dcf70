"""Named verification suites.

Each suite replays worked examples on the fixtures and then runs property
checks over seeded random instances.  Instance ``k`` of a suite run with seed
``s`` depends only on ``(s, k)``, so instances can be farmed out to worker
processes and merged back in index order without changing the report.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from .algebra import (
    DUAL,
    KK,
    T2,
    Algebra,
    Ideal,
    ideal_combine,
    ideal_generated,
    find_basis_matching,
    product_of_fields,
    truncated_polynomial,
    upper_triangular,
    zero_ideal,
)
from .graded import (
    bounded_point_simplicity,
    central_divisor,
    degree_zero_localization,
    graded_isomorphic,
    graded_line,
    graded_line_block,
    graded_plane,
    graded_regular,
    hilbert,
    point_tails,
    rees,
    tails_iso_bounded,
)
from .io import (
    algebra_to_json,
    compile_quiver_document,
    format_scalar,
    load_fixture_algebra,
    module_to_json,
    quiver_to_json,
)
from .linalg import GF, QQ, Field, Subspace
from .localization import (
    contains_in_complement,
    counit_iso,
    extend,
    in_open,
    is_stable_class,
    open_combine,
    open_complement,
    restrict,
    tau_and_r1,
    z_cap_u,
)
from .modules import (
    Module,
    annihilator,
    composition_factors,
    derived_socle_dim,
    derived_top_dim,
    direct_sum,
    enumerate_modules,
    ext_dim,
    indecomposable_projective,
    injective_envelope,
    is_isomorphic,
    module_from_subspace,
    regular_module,
    simple_module,
    socle,
    top,
)
from .sampling import all_ideals, quiver_family_f2, random_algebra, random_ideal, random_module, random_serre_class
from .subspaces import (
    SerreClass,
    _ann_of_family,
    closed_combine,
    end_is_local,
    fbn_witness,
    is_prime_ideal_bruteforce,
    point_index,
    point_name,
    point_subspace,
    points_and_primes,
    prime_injective_table,
    serre_and_sat,
    zero_locus,
)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Verdict:
    name: str
    passed: bool
    instances: int = 1
    failures: int = 0
    detail: dict = dc_field(default_factory=dict)
    witness: Optional[dict] = None  # smallest failing instance, replayable

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "instances": self.instances, "failures": self.failures}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    verdicts: list
    runtime: float = 0.0
    findings: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }
        if self.findings:
            out["findings"] = self.findings
        if timing:
            out["runtime"] = round(self.runtime, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=1)

    def table(self) -> str:
        rows = [f"suite {self.suite} (seed {self.seed}): {'PASS' if self.passed else 'FAIL'} in {self.runtime:.2f}s"]
        width = max((len(v.name) for v in self.verdicts), default=0)
        for v in self.verdicts:
            mark = "ok  " if v.passed else "FAIL"
            extra = f"{v.instances} instances" if v.instances != 1 else ""
            if v.failures:
                extra += f", {v.failures} failed"
            rows.append(f"  {mark} {v.name.ljust(width)}  {extra}".rstrip())
            if not v.passed and v.witness is not None:
                rows.append("       witness: " + json.dumps(v.witness, sort_keys=True))
        if self.findings:
            rows.append(f"  findings: {len(self.findings)}")
        return "\n".join(rows)


class _Tally:
    """Pass/fail counts for one named check, keeping the smallest failure."""

    def __init__(self, name: str):
        self.name = name
        self.count = 0
        self.failures = 0
        self.best = None
        self.detail: dict = {}

    def add(self, ok: bool, size=0, witness=None):
        self.count += 1
        if not ok:
            self.failures += 1
            if self.best is None or size < self.best[0]:
                self.best = (size, witness() if callable(witness) else witness)

    def verdict(self, minimum: int = 1) -> Verdict:
        enough = self.count >= minimum
        detail = dict(self.detail)
        if not enough:
            detail["too few instances"] = f"{self.count} < {minimum}"
        return Verdict(self.name, enough and self.failures == 0, self.count, self.failures, detail, self.best and self.best[1])


class _Tallies(dict):
    def __missing__(self, key):
        t = self[key] = _Tally(key)
        return t

    def feed(self, records):
        for name, ok, size, witness in records:
            self[name].add(ok, size, witness)


def _rec(name: str, ok, size, witness) -> tuple:
    """A picklable record; the witness is built only for failures."""
    ok = bool(ok)
    return (name, ok, size, None if ok or witness is None else (witness() if callable(witness) else witness))


def _check(name: str, ok: bool, witness=None) -> Verdict:
    return Verdict(name, bool(ok), witness=None if ok else (witness() if callable(witness) else witness))


# ---------------------------------------------------------------------------
# witnesses in the input format


def _ideal_doc(I: Ideal) -> list:
    return [[format_scalar(x) for x in row] for row in I.space.basis]


def witness_doc(A: Algebra, modules: Optional[dict] = None, **extra) -> dict:
    objs = {"A": algebra_to_json(A)}
    for nm, M in (modules or {}).items():
        objs[nm] = module_to_json(M, "A")
    out: dict = {"objects": objs}
    for k, v in extra.items():
        if isinstance(v, Ideal):
            v = _ideal_doc(v)
        elif isinstance(v, SerreClass):
            v = sorted(v.simples)
        out[k] = v
    return out


# ---------------------------------------------------------------------------
# seeded instances

_SALT = {
    "gabriel-asymmetry": 11,
    "torsion-sequence": 23,
    "containment-equivalence": 37,
    "open-lattice": 41,
    "fbn-bijection": 53,
}


def instance_rng(suite: str, seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), _SALT[suite], int(k)])


def _random_field(rng) -> Field:
    return GF(2) if rng.random() < 0.5 else GF(3)


def _run_instances(fn: Callable, seed: int, count: int, workers: int) -> list:
    """``[fn(seed, k) for k in range(count)]``, optionally in worker processes."""
    if workers <= 1:
        return [fn(seed, k) for k in range(count)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, [seed] * count, range(count), chunksize=max(1, count // (4 * workers))))


def _fixtures(fields=(GF(2), GF(3), QQ)) -> list:
    return [(nm, mk(f)) for f in fields for nm, mk in (("T2", T2), ("KK", KK), ("DUAL", DUAL))]


# ---------------------------------------------------------------------------
# bad-triangle


def suite_bad_triangle(seed: int = 0, workers: int = 1) -> SuiteReport:
    out = []
    for f in (GF(2), GF(3), QQ):
        A = T2(f)
        tag = f"[{f!r}]"
        p, q = point_index(A, "p"), point_index(A, "q")
        Op, Oq = simple_module(A, p), simple_module(A, q)
        out.append(_check(f"(a) two simples {tag}", A.structure.simple_count == 2))
        e_qp, e_pq = ext_dim(Oq, Op, 1), ext_dim(Op, Oq, 1)
        out.append(_check(f"(b) Ext1(O_q,O_p)=1, Ext1(O_p,O_q)=0 {tag}", (e_qp, e_pq) == (1, 0),
                          lambda: witness_doc(A, ext=[e_qp, e_pq])))
        W = point_subspace(A, "q")
        U = open_complement(A, W)
        E = extend(U, restrict(U, Op))
        soc = module_from_subspace(E, socle(E))
        tp = top(E).module
        split = direct_sum(Op, Oq).module
        ok_c = (
            E.dim == 2
            and is_isomorphic(soc, Op)
            and is_isomorphic(tp, Oq)
            and not is_isomorphic(E, split)
            and end_is_local(E).local
        )
        out.append(_check(f"(c) j_*j^*O_p: dim 2, socle O_p, top O_q, non-split {tag}", ok_c,
                          lambda: witness_doc(A, {"E": E})))
        Z = zero_locus(ideal_generated(A, [A.element({"e12": 1})]))
        if f == GF(2):
            mods = enumerate_modules(A, 3)
            bad = [M for M in mods if Z.contains_module(M) and in_open(U, M)]
            v = _check(f"(d) Mod Z and Mod X\\W share no nonzero module of dim <= 3 {tag}", not bad,
                       lambda: witness_doc(A, {"M": bad[0]}))
            v.instances = len(mods)
            out.append(v)
        c_pq = contains_in_complement(point_subspace(A, "p"), W).contained
        c_qp = contains_in_complement(point_subspace(A, "q"), point_subspace(A, "p")).contained
        out.append(_check(f"(e) p in X\\q is false, q in X\\p is true {tag}", (c_pq, c_qp) == (False, True)))
        zc = z_cap_u(Z, W)
        ok_f = (not zc.defined) and zc.witness is not None and zc.witness[:2] == (q, p) and zc.witness[2] == 1
        out.append(_check(f"(f) Z cap (X\\W) undefined, witness Ext1(O_q,O_p) != 0 {tag}", ok_f,
                          lambda: witness_doc(A, result=str(zc.witness))))
    return SuiteReport("bad-triangle", seed, out)


# ---------------------------------------------------------------------------
# gabriel-asymmetry / gabriel-inclusion


def _gabriel_instance(seed: int, k: int) -> list:
    rng = instance_rng("gabriel-asymmetry", seed, k)
    A = random_algebra(rng, _random_field(rng))
    I, J = random_ideal(rng, A), random_ideal(rng, A)
    lhs = ideal_combine("sum", ideal_combine("product", I, J), ideal_combine("product", J, I))
    meet = ideal_combine("intersect", I, J)
    ok = lhs.space <= meet.space
    strict = ok and lhs.space != meet.space
    wit = lambda: witness_doc(A, I=I, J=J)  # noqa: E731
    return [_rec("IJ + JI inside I meet J (random pairs)", ok, A.dim, wit), ("__strict", strict, 0, None)]


def suite_gabriel(seed: int = 0, workers: int = 1, name: str = "gabriel-asymmetry", pairs: int = 500) -> SuiteReport:
    out = []
    for f in (GF(2), GF(3), QQ):
        A = T2(f)
        P, Q = point_subspace(A, "p"), point_subspace(A, "q")
        e12 = Subspace.span(f, 3, A.element({"e12": 1}).reshape(1, -1))
        union = closed_combine("union", P, Q).ideal.space
        pq = closed_combine("gabriel", P, Q).ideal.space
        qp = closed_combine("gabriel", Q, P).ideal.space
        out.append(_check(f"ideal(p u q) = ideal(p.q) = span(e12) [{f!r}]", union == pq == e12,
                          lambda: witness_doc(A, union=str(union.basis.tolist()), pq=str(pq.basis.tolist()))))
        out.append(_check(f"ideal(q.p) = 0, so p.q != q.p [{f!r}]", qp.dim == 0 and qp != pq))
    t = _Tallies()
    strict_witnesses = []
    # every pair of ideals of T2 over GF(2), then seeded random pairs
    A = T2(GF(2))
    ideals = all_ideals(A)
    for I, J in itertools.product(ideals, repeat=2):
        lhs = ideal_combine("sum", ideal_combine("product", I, J), ideal_combine("product", J, I))
        meet = ideal_combine("intersect", I, J)
        ok = lhs.space <= meet.space
        t["IJ + JI inside I meet J (all T2 pairs)"].add(ok, A.dim, lambda: witness_doc(A, I=I, J=J))
        if ok and lhs.space != meet.space and len(strict_witnesses) < 3:
            strict_witnesses.append(witness_doc(A, I=I, J=J))
    for recs in _run_instances(_gabriel_instance, seed, pairs, workers):
        main, strict = recs
        t.feed([main])
        t["__strict"].add(not strict[1])  # counts strict instances as "failures" of equality
    out.append(t["IJ + JI inside I meet J (all T2 pairs)"].verdict(len(ideals) ** 2))
    out.append(t["IJ + JI inside I meet J (random pairs)"].verdict(pairs))
    strict_random = t["__strict"].failures
    out.append(Verdict("strictness witness recorded", bool(strict_witnesses), len(strict_witnesses), 0,
                       {"strict random pairs": strict_random, "examples": strict_witnesses[:1]}))
    return SuiteReport(name, seed, out)


# ---------------------------------------------------------------------------
# torsion-sequence


def _proper_class(rng, A: Algebra) -> SerreClass:
    n = A.structure.require_split().simple_count
    cls = random_serre_class(rng, A)
    if len(cls.simples) == n:
        cls = SerreClass(A, cls.simples - {int(rng.integers(n))})
    return cls


def _torsion_instance(seed: int, k: int) -> list:
    rng = instance_rng("torsion-sequence", seed, k)
    A = random_algebra(rng, _random_field(rng))
    cls = _proper_class(rng, A)
    M = random_module(rng, A)
    U = open_complement(A, cls)
    rep = tau_and_r1(U, M)
    size = A.dim + M.dim
    wit = lambda: witness_doc(A, {"M": M}, torsion_class=cls)  # noqa: E731
    recs = [_rec(name, ok, size, wit) for name, ok in rep.certificates.items()]
    recs.append(_rec("counit j^*j_* = id", counit_iso(U, restrict(U, M)) is not None, size, wit))
    # the cokernel equals the derived R1 tau exactly when the class is stable;
    # these two diagnostics locate any disagreement, they do not replace it
    agree = rep.certificates["derived R1 agrees"]
    stable = is_stable_class(U)
    if stable:
        recs.append(_rec("diagnostic: derived R1 agrees on stable classes", agree, size, wit))
    recs.append(_rec("diagnostic: every disagreement is on an unstable class", agree or not stable, size, wit))
    return recs


def suite_torsion(seed: int = 0, workers: int = 1, count: int = 200) -> SuiteReport:
    t = _Tallies()
    for recs in _run_instances(_torsion_instance, seed, count, workers):
        t.feed(recs)
    out = []
    for nm, x in t.items():
        out.append(x.verdict(1 if nm.startswith("diagnostic: derived") else count))
    return SuiteReport("torsion-sequence", seed, out)


# ---------------------------------------------------------------------------
# containment-equivalence


def _containment_instance(seed: int, k: int) -> list:
    rng = instance_rng("containment-equivalence", seed, k)
    A = random_algebra(rng, _random_field(rng))
    I = random_ideal(rng, A)
    V = zero_locus(I)
    cls = random_serre_class(rng, A)
    wit = lambda: witness_doc(A, V_ideal=I, W_class=cls)  # noqa: E731
    try:
        verdict = contains_in_complement(V, cls)
        agree = verdict.by_ext == verdict.by_localization
    except AssertionError:
        return [_rec("criteria (1) and (2) agree", False, A.dim, wit)]
    recs = [_rec("criteria (1) and (2) agree", agree, A.dim, wit)]
    # a contained V puts every module on V inside the open
    if verdict.contained:
        U = open_complement(A, cls)
        for _ in range(2):
            M = random_module(rng, A)
            if V.contains_module(M):
                recs.append(_rec("contained V: sampled modules lie in the open", in_open(U, M), A.dim + M.dim,
                             lambda M=M: witness_doc(A, {"M": M}, V_ideal=I, W_class=cls)))
    return recs


def suite_containment(seed: int = 0, workers: int = 1, count: int = 200) -> SuiteReport:
    t = _Tallies()
    for recs in _run_instances(_containment_instance, seed, count, workers):
        t.feed(recs)
    out = [t["criteria (1) and (2) agree"].verdict(count)]
    if "contained V: sampled modules lie in the open" in t:
        out.append(t["contained V: sampled modules lie in the open"].verdict())
    # brute force: every closed subspace and Serre class of T2 over GF(2),
    # against the definition on all modules of dimension <= 3
    A = T2(GF(2))
    mods = enumerate_modules(A, 3)
    n = A.structure.simple_count
    brute = _Tally("T2 brute force: verdict = definition on modules of dim <= 3")
    single = _Tally("T2 module form: {M} in X\\W iff unit bijective, dim <= 3")
    for I in all_ideals(A):
        V = zero_locus(I)
        for r in range(n + 1):
            for simples in itertools.combinations(range(n), r):
                cls = SerreClass(A, frozenset(simples))
                U = open_complement(A, cls)
                on_V = [M for M in mods if V.contains_module(M)]
                truth = all(in_open(U, M) for M in on_V)
                verdict = contains_in_complement(V, cls).contained
                brute.add(verdict == truth, 0, lambda: witness_doc(A, V_ideal=I, W_class=cls))
    for M in mods:
        for r in range(n + 1):
            for simples in itertools.combinations(range(n), r):
                cls = SerreClass(A, frozenset(simples))
                v = contains_in_complement([M], cls).contained
                single.add(v == in_open(open_complement(A, cls), M), M.dim,
                           lambda: witness_doc(A, {"M": M}, W_class=cls))
    out += [brute.verdict(), single.verdict()]
    return SuiteReport("containment-equivalence", seed, out)


# ---------------------------------------------------------------------------
# open-lattice


def _class_of(V) -> SerreClass:
    return V.torsion_class


def _open_lattice_instance(seed: int, k: int) -> list:
    rng = instance_rng("open-lattice", seed, k)
    A = random_algebra(rng, _random_field(rng))
    IW, IZ = random_ideal(rng, A), random_ideal(rng, A)
    W, Z = zero_locus(IW), zero_locus(IZ)
    U, V = open_complement(A, W), open_complement(A, Z)
    wit = lambda: witness_doc(A, W_ideal=IW, Z_ideal=IZ)  # noqa: E731
    recs = []
    union = open_combine("union", U, V)
    recs.append(_rec("U u V = X \\ (W n Z)", _class_of(union) == serre_and_sat(closed_combine("intersect", W, Z)), A.dim, wit))
    try:
        inter = open_combine("intersect", U, V, closed=(W, Z))
        ok = _class_of(inter) == serre_and_sat(closed_combine("gabriel", W, Z))
    except AssertionError:
        inter, ok = None, False
    recs.append(_rec("U n V = X \\ (W . Z)", ok, A.dim, wit))
    c1, c2 = random_serre_class(rng, A), random_serre_class(rng, A)
    V1, V2 = open_complement(A, c1), open_complement(A, c2)
    lhs = open_combine("intersect", U, open_combine("union", V1, V2))
    rhs = open_combine("union", open_combine("intersect", U, V1), open_combine("intersect", U, V2))
    recs.append(_rec("U n (V1 u V2) = (U n V1) u (U n V2)", _class_of(lhs) == _class_of(rhs), A.dim,
                 lambda: witness_doc(A, W_ideal=IW, V1_class=c1, V2_class=c2)))
    if inter is not None:
        for _ in range(2):
            M = random_module(rng, A)
            ok = in_open(inter, M) == (in_open(U, M) and in_open(V, M))
            recs.append(_rec("Mod(U n V) = Mod U n Mod V (sampled modules)", ok, A.dim + M.dim,
                         lambda M=M: witness_doc(A, {"M": M}, W_ideal=IW, Z_ideal=IZ)))
    # quasi-compactness: a union of opens is already the union of a finite subfamily
    fam = [random_serre_class(rng, A) for _ in range(int(rng.integers(1, 6)))]
    total = fam[0]
    for c in fam[1:]:
        total = total & c
    chosen = [fam[0]]
    cur = fam[0]
    for c in fam[1:]:
        if (cur & c) != cur:
            chosen.append(c)
            cur = cur & c
    n = A.structure.simple_count
    recs.append(_rec("finite subfamily reaches the union", cur == total and len(chosen) <= n + 1, A.dim,
                 lambda: witness_doc(A, family=[sorted(c.simples) for c in fam])))
    return recs


def suite_open_lattice(seed: int = 0, workers: int = 1, count: int = 200) -> SuiteReport:
    t = _Tallies()
    for recs in _run_instances(_open_lattice_instance, seed, count, workers):
        t.feed(recs)
    minimum = {"Mod(U n V) = Mod U n Mod V (sampled modules)": 1}
    out = [x.verdict(minimum.get(nm, count)) for nm, x in t.items()]
    for nm, A in _fixtures((GF(2),)):
        mods = enumerate_modules(A, 3)
        n = A.structure.simple_count
        classes = [SerreClass(A, frozenset(s)) for r in range(n + 1) for s in itertools.combinations(range(n), r)]
        tally = _Tally(f"membership Mod(U n V) = Mod U n Mod V, all modules dim <= 3 [{nm}]")
        for c1, c2 in itertools.product(classes, repeat=2):
            U, V = open_complement(A, c1), open_complement(A, c2)
            UV = open_combine("intersect", U, V)
            for M in mods:
                ok = in_open(UV, M) == (in_open(U, M) and in_open(V, M))
                tally.add(ok, M.dim, lambda: witness_doc(A, {"M": M}, U_class=c1, V_class=c2))
        out.append(tally.verdict())
    return SuiteReport("open-lattice", seed, out)


# ---------------------------------------------------------------------------
# fbn-bijection


def _bijection_records(A: Algebra, label: str, samples) -> list:
    recs = []
    size = A.dim
    wit = lambda: witness_doc(A)  # noqa: E731
    n = A.structure.require_split().simple_count
    try:
        table = prime_injective_table(A)
        certified = all(row.certificate.local for row in table)
    except AssertionError:
        return [_rec("#primes = #simples = #indecomposable injectives", False, size, wit)]
    primes = points_and_primes(A).primes
    injectives = [row.injective for row in table]
    distinct = all(not is_isomorphic(a, b) for a, b in itertools.combinations(injectives, 2))
    injective = all(ext_dim(simple_module(A, i), E, 1) == 0 for E in injectives for i in range(n))
    socles = all(
        composition_factors(module_from_subspace(E, socle(E))) == {row.simple: 1} for row, E in zip(table, injectives)
    )
    recs.append(_rec("#primes = #simples = #indecomposable injectives",
                 len(primes) == n == len(table) and distinct, size, wit))
    recs.append(_rec("injectives certified: local End, Ext1(S, E) = 0, simple socle",
                 certified and injective and socles, size, wit))
    f = A.field
    if f.p == 2 and A.dim <= 6:
        brute = [I for I in all_ideals(A) if is_prime_ideal_bruteforce(I)]
        same = sorted(tuple(map(tuple, I.space.basis.tolist())) for I in brute) == sorted(
            tuple(map(tuple, P.ideal.space.basis.tolist())) for P in primes
        )
        recs.append(_rec("prime ideals by brute force match the points", same and len(brute) == n, size, wit))
    for M in samples:
        w = fbn_witness(M)
        ok = w is not None and _ann_of_family(M, list(w)) == annihilator(M).space and len(w) <= max(M.dim, 1)
        recs.append(_rec("Ann M = intersection of Ann(m_i): witness found", ok, size + M.dim,
                     lambda M=M: witness_doc(A, {"M": M})))
    return recs


def _fbn_instance(seed: int, k: int) -> list:
    rng = instance_rng("fbn-bijection", seed, k)
    A = random_algebra(rng, _random_field(rng))
    samples = [random_module(rng, A) for _ in range(3)]
    return _bijection_records(A, f"random {k}", samples)


def suite_fbn(seed: int = 0, workers: int = 1, count: int = 50) -> SuiteReport:
    t = _Tallies()
    fixtures = _fixtures() + [("DUAL_quiver", load_fixture_algebra("DUAL_quiver"))]
    fixture_tally = _Tallies()
    for nm, A in fixtures:
        if A.field.p:
            samples = enumerate_modules(A, 3)
        else:
            rng = np.random.default_rng([seed, 5])
            samples = [random_module(rng, A) for _ in range(4)] + [regular_module(A)]
        fixture_tally.feed(_bijection_records(A, nm, samples))
    for recs in _run_instances(_fbn_instance, seed, count, workers):
        t.feed(recs)
    out = []
    for nm, x in fixture_tally.items():
        x.name = f"{nm} [fixtures]"
        out.append(x.verdict())
    for nm, x in t.items():
        x.name = f"{nm} [random]"
        out.append(x.verdict(count if nm.startswith(("#primes", "injectives")) else 1))
    return SuiteReport("fbn-bijection", seed, out)


# ---------------------------------------------------------------------------
# point-functor


def _test_modules(A: Algebra, seed: int) -> list:
    if A.field.p and A.field.p ** A.dim <= 64:
        return enumerate_modules(A, 3)
    n = A.structure.simple_count
    rng = np.random.default_rng([seed, 7, A.dim])
    mods = [simple_module(A, i) for i in range(n)]
    mods += [indecomposable_projective(A, i) for i in range(n)]
    mods += [injective_envelope(simple_module(A, i)).module for i in range(n)]
    mods += [regular_module(A)] + [random_module(rng, A) for _ in range(4)]
    return mods


def suite_point_functor(seed: int = 0, workers: int = 1) -> SuiteReport:
    out = []
    fixtures = _fixtures() + [("DUAL_quiver", load_fixture_algebra("DUAL_quiver"))]
    for nm, A in fixtures:
        mods = _test_modules(A, seed)
        for i in range(A.structure.simple_count):
            S = simple_module(A, i)
            pt = point_name(A, i)
            for j in (0, 1):
                soc = _Tally(f"R^{j} socle_{pt} = Ext^{j}(O_{pt}, -) (x) O_{pt} [{nm} {A.field!r}]")
                tp = _Tally(f"L_{j} top_{pt} = Tor_{j} twin [{nm} {A.field!r}]")
                for M in mods:
                    soc.add(derived_socle_dim(S, M, j) == ext_dim(S, M, j) * S.dim, M.dim,
                            lambda: witness_doc(A, {"S": S, "N": M}, j=j))
                    tp.add(derived_top_dim(S, M, j) == ext_dim(M, S, j) * S.dim, M.dim,
                           lambda: witness_doc(A, {"S": S, "M": M}, j=j))
                out += [soc.verdict(), tp.verdict()]
    return SuiteReport("point-functor", seed, out)


# ---------------------------------------------------------------------------
# graded

GRADED_BOUND = 8


def graded_checks(f: Field, N: int = GRADED_BOUND) -> list:
    out = []
    tag = f"[{f!r}, N={N}]"
    GL, UT = graded_line(N, f), graded_plane(N, f)
    x = GL.generator_vector("x")[1]
    t = UT.generator_vector("t")[1]
    rep = central_divisor(GL, x, 1, graded_regular(GL))
    out.append(_check(f"(a) divisor x on GL: kernel 0, M/Mz Hilbert 1,0,0,... {tag}",
                      rep.ok and sum(rep.kernel_dims) == 0 and hilbert(rep.cokernel) == (1,) + (0,) * N,
                      {"checks": {k: bool(v) for k, v in rep.checks.items()}, "hilbert": list(hilbert(rep.cokernel))}))
    rep = central_divisor(UT, t, 1, graded_regular(UT))
    out.append(_check(f"(a) divisor t on UT: kernel 0, M/Mz Hilbert 1,1,1,... {tag}",
                      rep.ok and sum(rep.kernel_dims) == 0 and hilbert(rep.cokernel) == (1,) * (N + 1),
                      {"checks": {k: bool(v) for k, v in rep.checks.items()}, "hilbert": list(hilbert(rep.cokernel))}))
    B2 = graded_line_block([0, 1], f)
    out.append(_check(f"(b) Z_D for |D| = 2 matches T2 {tag}", find_basis_matching(B2, T2(f)) is not None,
                      lambda: {"objects": {"B": algebra_to_json(B2)}}))
    B3 = graded_line_block([0, 1, 2], f)
    out.append(_check(f"(b) Z_D for |D| = 3 matches 3x3 upper triangular {tag}",
                      find_basis_matching(B3, upper_triangular(3, f)) is not None,
                      lambda: {"objects": {"B": algebra_to_json(B3)}}))
    R = rees(truncated_polynomial(N + 1, f), ["x"], N)
    out.append(_check(f"(c) Rees(k[x]) isomorphic to UT {tag}", graded_isomorphic(R, UT) is not None,
                      {"rees dims": list(R.dims), "UT dims": list(UT.dims)}))
    loc = degree_zero_localization(GL, x, 1)
    ok = loc.algebra is not None and find_basis_matching(loc.algebra, product_of_fields(1, f)) is not None
    out.append(_check(f"(d) GL[x^-1]_0 = k {tag}", ok, {"filtration": list(loc.filtration_dims)}))
    A = T2(f)
    tails = [point_tails(A, simple_module(A, i), ["e12", "e11"], N) for i in range(2)]
    hs = [hilbert(V) for V in tails]
    ok = (
        all(h == (1,) * (N + 1) for h in hs)
        and not tails_iso_bounded(tails[0], tails[1], N - 1)
        and all(tails_iso_bounded(V, V, 0) for V in tails)
        and all(bounded_point_simplicity(V) for V in tails)
    )
    out.append(_check(f"(e) two non-isomorphic point tails over T2, one per simple {tag}", ok,
                      {"hilbert": [list(h) for h in hs]}))
    return out


def suite_graded(seed: int = 0, workers: int = 1) -> SuiteReport:
    out = []
    for f in (GF(2), GF(3), QQ):
        out += graded_checks(f)
    return SuiteReport("graded", seed, out)


# ---------------------------------------------------------------------------
# distributivity fuzzer


def _space_key(S: Subspace) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in S.basis)


def distributivity_search(max_dim: int = 4, keep: int = 5) -> dict:
    """Look for ``W n (Y u Z) != (W n Y) u (W n Z)`` among closed subspaces of
    every algebra in the GF(2) quiver family.  In ideals: ``I_W + (I_Y n I_Z)``
    against ``(I_W + I_Y) n (I_W + I_Z)``."""
    algebras = triples = 0
    per_algebra = []
    examples = []
    for Q, A in quiver_family_f2(max_dim):
        A.structure.require_split()
        ideals = all_ideals(A)
        algebras += 1
        keys = {_space_key(I.space): k for k, I in enumerate(ideals)}
        n = len(ideals)
        add = [[keys[_space_key(ideals[a].space + ideals[b].space)] for b in range(n)] for a in range(n)]
        meet = [[keys[_space_key(ideals[a].space & ideals[b].space)] for b in range(n)] for a in range(n)]
        found = 0
        for w, y, z in itertools.product(range(n), repeat=3):
            triples += 1
            lhs = add[w][meet[y][z]]
            rhs = meet[add[w][y]][add[w][z]]
            if lhs != rhs:
                found += 1
                if len(examples) < keep:
                    examples.append(
                        {
                            "quiver": quiver_to_json(Q),
                            "W_ideal": _ideal_doc(ideals[w]),
                            "Y_ideal": _ideal_doc(ideals[y]),
                            "Z_ideal": _ideal_doc(ideals[z]),
                            "lhs_dim": ideals[lhs].dim,
                            "rhs_dim": ideals[rhs].dim,
                        }
                    )
        if found:
            per_algebra.append({"quiver": quiver_to_json(Q), "dim": A.dim, "ideals": n, "counterexamples": found})
    return {"algebras": algebras, "triples": triples, "counterexamples": sum(r["counterexamples"] for r in per_algebra),
            "by_algebra": per_algebra, "examples": examples}


def replay_distributivity(example: dict) -> bool:
    """Rebuild a logged counterexample from its JSON and confirm it."""
    A = compile_quiver_document(example["quiver"])
    f = A.field

    def ideal(rows):
        vecs = [f.array([f.scalar(c) for c in r]) for r in rows]
        return ideal_generated(A, vecs) if vecs else zero_ideal(A)

    W, Y, Z = (zero_locus(ideal(example[k])) for k in ("W_ideal", "Y_ideal", "Z_ideal"))
    lhs = closed_combine("intersect", W, closed_combine("union", Y, Z))
    rhs = closed_combine("union", closed_combine("intersect", W, Y), closed_combine("intersect", W, Z))
    return lhs != rhs


def suite_distributivity(seed: int = 0, workers: int = 1) -> SuiteReport:
    res = distributivity_search()
    replay = all(replay_distributivity(ex) for ex in res["examples"])
    out = [
        Verdict("search completed over the GF(2) quiver family, dim <= 4", res["algebras"] > 0, res["algebras"], 0,
                {"triples": res["triples"], "counterexamples": res["counterexamples"]}),
        Verdict("logged counterexamples replay from JSON", replay, len(res["examples"])),
    ]
    return SuiteReport("distributivity", seed, out, findings=res["examples"])


# ---------------------------------------------------------------------------
# registry


SUITES = {
    "bad-triangle": suite_bad_triangle,
    "gabriel-asymmetry": suite_gabriel,
    "gabriel-inclusion": lambda seed=0, workers=1: suite_gabriel(seed, workers, name="gabriel-inclusion"),
    "torsion-sequence": suite_torsion,
    "containment-equivalence": suite_containment,
    "open-lattice": suite_open_lattice,
    "fbn-bijection": suite_fbn,
    "point-functor": suite_point_functor,
    "graded": suite_graded,
    "distributivity": suite_distributivity,
}

# the acceptance list, in order ("gabriel-inclusion" repeats gabriel-asymmetry)
ACCEPTANCE = (
    "bad-triangle",
    "gabriel-asymmetry",
    "torsion-sequence",
    "containment-equivalence",
    "open-lattice",
    "fbn-bijection",
    "point-functor",
    "graded",
    "distributivity",
)


def verify_suite(name: str, seed: int = 0, workers: int = 1) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    t0 = time.perf_counter()
    rep = SUITES[name](seed, workers)
    rep.runtime = time.perf_counter() - t0
    return rep

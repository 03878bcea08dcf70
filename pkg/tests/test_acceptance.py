"""One check per acceptance criterion, each printing a single PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.  Every criterion is exact: counts are
integers and equalities are over the field, so there is no tolerance to set.
"""

import json
import sys

import pytest

from ncspaces.suites import replay_distributivity, verify_suite

LINES: list = []


def _count(rep, fragment):
    return min(v.instances for v in rep.verdicts if fragment in v.name)


def _failing(rep):
    return [f"{v.name} ({v.failures}/{v.instances} failed)" for v in rep.verdicts if not v.passed]


def c1_bad_triangle():
    rep = verify_suite("bad-triangle", 0)
    parts = {p for p in "abcdef" if any(v.name.startswith(f"({p})") for v in rep.verdicts)}
    return rep.passed and parts == set("abcdef"), rep, f"parts {''.join(sorted(parts))}"


def c2_gabriel():
    rep = verify_suite("gabriel-inclusion", 7)
    n = _count(rep, "random pairs")
    return rep.passed and n >= 500, rep, f"{n} random ideal pairs"


def c3_torsion():
    rep = verify_suite("torsion-sequence", 42)
    n = min(v.instances for v in rep.verdicts if not v.name.startswith("diagnostic"))
    return rep.passed and n >= 200, rep, f"{n} (algebra, class, module) instances"


def c4_containment():
    rep = verify_suite("containment-equivalence", 42)
    n = _count(rep, "criteria (1) and (2) agree")
    brute = _count(rep, "T2 brute force")
    return rep.passed and n >= 200 and brute > 0, rep, f"{n} instances, {brute} T2 modules brute-forced"


def c5_open_lattice():
    rep = verify_suite("open-lattice", 42)
    n = min(_count(rep, k) for k in ("U u V", "U n V = X", "U n (V1 u V2)", "finite subfamily"))
    return rep.passed and n >= 200, rep, f"{n} instances per class identity"


def c6_fbn():
    rep = verify_suite("fbn-bijection", 42)
    n = _count(rep, "#primes = #simples = #indecomposable injectives [random]")
    return rep.passed and n >= 50, rep, f"{n} random split algebras"


def c7_point_functor():
    rep = verify_suite("point-functor", 42)
    return rep.passed, rep, f"{len(rep.verdicts)} identities"


def c8_graded():
    rep = verify_suite("graded", 42)
    parts = {p for p in "abcde" if any(v.name.startswith(f"({p})") for v in rep.verdicts)}
    return rep.passed and parts == set("abcde"), rep, f"parts {''.join(sorted(parts))}, N = 8"


def c9_distributivity():
    rep = verify_suite("distributivity", 42)
    replayed = all(replay_distributivity(json.loads(json.dumps(x))) for x in rep.findings)
    return rep.passed and replayed, rep, f"{len(rep.findings)} logged counterexamples, all replayed: {replayed}"


CRITERIA = [
    (1, "bad-triangle", c1_bad_triangle),
    (2, "gabriel-asymmetry", c2_gabriel),
    (3, "torsion-sequence", c3_torsion),
    (4, "containment-equivalence", c4_containment),
    (5, "open-lattice", c5_open_lattice),
    (6, "fbn-bijection", c6_fbn),
    (7, "point-functor", c7_point_functor),
    (8, "graded", c8_graded),
    (9, "distributivity fuzzer", c9_distributivity),
]


def run(idx, name, fn):
    ok, rep, detail = fn()
    line = f"criterion {idx} {name}: {'PASS' if ok else 'FAIL'} ({detail}; {rep.runtime:.2f}s)"
    if not ok:
        line += " failing: " + "; ".join(_failing(rep))
    LINES.append(line)
    print(line)
    return ok, line


@pytest.mark.parametrize("idx,name,fn", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_acceptance(idx, name, fn):
    ok, line = run(idx, name, fn)
    assert ok, line


if __name__ == "__main__":
    results = [run(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)

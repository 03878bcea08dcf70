import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncspaces.algebra import T2, find_basis_matching, upper_triangular
from ncspaces.io import (
    FIXTURES,
    FormatError,
    InvariantError,
    Workspace,
    algebra_from_json,
    algebra_to_json,
    canonical,
    fixture_document,
    load_fixture_algebra,
    module_from_json,
    module_to_json,
    parse_scalar,
)
from ncspaces.linalg import GF, QQ
from ncspaces.modules import indecomposable_projective, is_isomorphic
from ncspaces.sampling import random_algebra, random_module

seeds = st.integers(0, 10**6)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_are_canonical(name):
    doc = fixture_document(name)
    assert canonical(doc) == doc


def test_t2_fixture_matches_constructor():
    A = load_fixture_algebra("T2")
    assert A.same_as(T2(GF(2))) and A.points == (("q", "e11"), ("p", "e22"))
    assert algebra_to_json(A)["mul"] == [[0, 0, [[0, "1"]]], [0, 1, [[1, "1"]]], [1, 2, [[1, "1"]]], [2, 2, [[2, "1"]]]]


def test_dual_quiver_matches_dual():
    assert find_basis_matching(load_fixture_algebra("DUAL_quiver"), load_fixture_algebra("DUAL")) is not None


def test_field_override():
    A = load_fixture_algebra("T2", QQ)
    assert A.field == QQ and A.same_as(T2(QQ))
    ws = Workspace(field=QQ)
    ws.load_fixture("UT")
    assert ws.get("UT").dims == tuple(range(1, 10))


@given(seeds, st.sampled_from([GF(2), GF(3), QQ]))
def test_algebra_and_module_round_trip(seed, f):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, f, max_dim=8)
    doc = algebra_to_json(A)
    B = algebra_from_json(json.loads(json.dumps(doc)))
    assert B.same_as(A) and algebra_to_json(B) == doc
    M = random_module(rng, A, 4)
    N = module_from_json(json.loads(json.dumps(module_to_json(M, "A"))), A)
    assert all(np.array_equal(x, y) for x, y in zip(M.action, N.action)) and is_isomorphic(M, N)


def rescaled_cubic():
    """``k[x]/(x^3)`` on the basis ``1, y = 2x/3, x^2``, so ``y y = 4/9 x^2``."""
    return {
        "field": "Q",
        "basis": ["1", "y", "x2"],
        "unit": ["1", "0", "0"],
        "mul": [[0, 0, [[0, "1"]]], [0, 1, [[1, "1"]]], [0, 2, [[2, "1"]]], [1, 0, [[1, "1"]]], [1, 1, [[2, "4/9"]]], [2, 0, [[2, "1"]]]],
    }


def test_rational_structure_constants_survive():
    doc = rescaled_cubic()
    A = algebra_from_json(doc)
    assert canonical(doc) == doc
    y = A.basis_vector(1)
    assert A.mul(y, y).tolist() == [0, 0, QQ.scalar(4) / 9]
    with pytest.raises(FormatError, match=r"mul\[4\]\[2\]\[0\]\[1\]: '4/9' has a denominator divisible by 3"):
        algebra_from_json(dict(doc, field={"Fp": 3}))
    assert parse_scalar(QQ, "-3/7", "x") == QQ.scalar(-3) / 7
    assert parse_scalar(GF(5), "3/2", "x") == 4


@pytest.mark.parametrize(
    "mutate,kind,fragment",
    [
        (lambda d: d.pop("unit"), FormatError, "unit: missing required field"),
        (lambda d: d["mul"].append([0, 5, [[0, "1"]]]), FormatError, "mul[4]: j must be a basis index in [0, 3)"),
        (lambda d: d.update(field={"Fp": 4}), FormatError, "field"),
        (lambda d: d.update(field="R"), FormatError, 'expected "Q" or {"Fp": p}'),
        (lambda d: d["mul"][0][2][0].__setitem__(1, "1/2"), FormatError, "denominator divisible by 2"),
        (lambda d: d["mul"][0][2][0].__setitem__(1, 1.5), FormatError, "string or integer"),
        (lambda d: d["mul"].append([1, 0, [[1, "1"]]]), InvariantError, "not associative"),
    ],
)
def test_algebra_errors_locate_the_problem(mutate, kind, fragment):
    doc = fixture_document("T2")
    mutate(doc)
    with pytest.raises(kind) as err:
        algebra_from_json(doc)
    assert fragment in str(err.value)


def test_json_syntax_error_reports_position():
    with pytest.raises(FormatError, match="line 2 column"):
        Workspace().load_text('{"field": "Q",\n "basis": [,]}')


def test_module_errors():
    A = T2(GF(2))
    good = module_to_json(indecomposable_projective(A, 0), "T2")
    bad = dict(good, action={k: v for k, v in good["action"].items() if k != "e12"})
    with pytest.raises(FormatError, match="e12"):
        module_from_json(bad, A)
    wrong = json.loads(json.dumps(good))
    wrong["action"]["e11"] = [["0"] * good["dim"] for _ in range(good["dim"])]
    with pytest.raises(InvariantError):
        module_from_json(wrong, A)


def test_workspace_bundle_and_names():
    A = T2(GF(3))
    M = random_module(np.random.default_rng(1), A, 3)
    bundle = {"objects": {"B": algebra_to_json(A), "M": module_to_json(M, "B")}}
    ws = Workspace()
    assert ws.load_document(bundle) == ["B", "M"]
    assert ws.get("M").dim == M.dim and ws.get("B", "algebra").same_as(A)
    with pytest.raises(KeyError):
        ws.load_document(bundle)
    with pytest.raises(KeyError, match="not a graded"):
        ws.get("B", "graded")
    assert ws.fresh("B") == "B#2" and [e["op"] for e in ws.log] == ["load", "load"]


def test_unknown_document_kind():
    with pytest.raises(FormatError, match="object kind"):
        Workspace().load_document({"hello": 1})

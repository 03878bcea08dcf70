import json

import pytest

from ncspaces.io import Workspace
from ncspaces.localization import is_stable_class, open_complement, tau_and_r1
from ncspaces.subspaces import SerreClass
from ncspaces.suites import SUITES, instance_rng, replay_distributivity, suite_point_functor, suite_torsion, verify_suite


@pytest.fixture(scope="module")
def torsion_run():
    # instance 67 at seed 0 is an unstable-class disagreement
    return suite_torsion(seed=0, count=70)


def test_instance_streams_are_pure():
    a = instance_rng("torsion-sequence", 5, 3).integers(0, 1 << 30, 4).tolist()
    b = instance_rng("torsion-sequence", 5, 3).integers(0, 1 << 30, 4).tolist()
    c = instance_rng("torsion-sequence", 5, 4).integers(0, 1 << 30, 4).tolist()
    assert a == b != c


def test_report_bytes_are_deterministic(torsion_run):
    again = suite_torsion(seed=0, count=70, workers=2)
    assert torsion_run.to_json() == again.to_json()
    assert "runtime" not in json.loads(torsion_run.to_json())


def test_failure_carries_a_replayable_witness(torsion_run):
    verdicts = {v.name: v for v in torsion_run.verdicts}
    bad = verdicts["derived R1 agrees"]
    assert not bad.passed and bad.failures == 1 and bad.instances == 70
    assert verdicts["diagnostic: every disagreement is on an unstable class"].passed
    ws = Workspace()
    ws.load_document(json.loads(json.dumps(bad.witness)))
    A, M = ws.get("A", "algebra"), ws.get("M")
    U = open_complement(A, SerreClass(A, frozenset(bad.witness["torsion_class"])))
    rep = tau_and_r1(U, M)
    assert not rep.certificates["derived R1 agrees"] and not is_stable_class(U)
    assert not torsion_run.passed


def test_point_functor_suite_passes():
    rep = suite_point_functor(seed=3)
    assert rep.passed and all(v.instances >= 1 for v in rep.verdicts)


def test_registry_and_alias():
    a, b = verify_suite("gabriel-inclusion", 7), verify_suite("gabriel-asymmetry", 7)
    assert a.suite == "gabriel-inclusion" and a.passed
    assert [v.to_dict() for v in a.verdicts] == [v.to_dict() for v in b.verdicts]
    assert any("strict" in v.name and v.passed for v in a.verdicts)
    with pytest.raises(KeyError):
        verify_suite("no-such-suite")


def test_distributivity_counterexample_replays():
    rep = verify_suite("distributivity", 0)
    assert rep.passed and rep.findings
    first = rep.findings[0]
    assert replay_distributivity(json.loads(json.dumps(first)))

import json

import pytest

from ncspaces.cli import UsageError, main, run_command
from ncspaces.algebra import upper_triangular
from ncspaces.io import Workspace, algebra_to_json
from ncspaces.linalg import GF


def test_describe_and_simples():
    r = run_command("describe --algebra T2")
    assert r.record["dim"] == 3 and r.record["points"] == ["p", "q"] and r.record["loewy_length"] == 2
    r = run_command("simples --algebra T2")
    ext = {s["point"]: s["ext1_to"] for s in r.record["simples"]}
    assert ext == {"q": {"q": 0, "p": 1}, "p": {"q": 0, "p": 0}}


def test_ideals_enumerated_and_structural():
    r = run_command("ideals --algebra T2")
    assert r.record["complete"] and [i["dim"] for i in r.record["ideals"]] == [0, 1, 2, 2, 3]
    r = run_command("ideals --algebra T2 --field Q")
    assert not r.record["complete"]


def test_subspace_ops_on_t2():
    ws = Workspace()
    assert run_command("subspace gabriel p q --algebra T2", ws).record["ideal"] == ["e12"]
    assert run_command("subspace gabriel q p", ws).record["ideal_dim"] == 0
    assert run_command("subspace union p q", ws).record["ideal"] == ["e12"]
    assert run_command("subspace intersect p.q q", ws).record["ideal_dim"] == 2  # stored result reused by name


def test_localization_session():
    ws = Workspace()
    run_command("localize complement q --algebra T2", ws)
    r = run_command("localize extend-restrict O_p", ws)
    assert r.record["dim"] == 2 and r.record["socle"] == {"p": 1} and r.record["top"] == {"q": 1}
    assert r.record["flag"] == "non-split extension by O_q"
    r = run_command("localize torsion O_p", ws)
    assert r.status == 0 and r.record["r1"]["factors"] == {"q": 1} and r.record["stable_class"]


def test_contains_and_zcapu():
    assert not run_command("contains p q --algebra T2").record["contained"]
    assert run_command("contains q p --algebra T2").record["contained"]
    r = run_command("zcapu p q --algebra T2")
    assert not r.record["defined"] and r.record["witness"] == {"from": "q", "to": "p", "ext1": 1}


def test_graded_commands():
    assert run_command("graded hilbert UT").record["hilbert"] == list(range(1, 10))
    assert run_command("graded divisor GL x").status == 0
    assert run_command("graded rees --bound 6").record["isomorphic_to_UT"]
    assert run_command("graded zd 0,1,2").record["matches_upper_triangular"]
    assert run_command("graded points T2 --bound 6").record["pairwise_distinct"]


def test_main_exit_codes(capsys, tmp_path):
    assert main(["describe", "--algebra", "KK", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["semisimple"]
    assert main(["describe", "--algebra", "nope"]) == 2
    assert "unknown name" in capsys.readouterr().err
    assert main(["localize", "restrict", "O_p"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"Fp": 2}, "basis": ["a"], "unit": ["1"], "mul": [[0, 3, [[0, "1"]]]]}')
    assert main(["describe", "bad", "--load", str(bad)]) == 2
    assert "mul[0]: j must be a basis index in [0, 1)" in capsys.readouterr().err
    assert main([]) == 2


def test_verify_exit_status(capsys):
    assert main(["verify", "--suite", "point-functor", "--seed", "1"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["verify", "--suite", "nonsense"]) == 2


def test_state_file_replays_session(tmp_path, capsys):
    st = tmp_path / "session.json"
    assert main(["localize", "complement", "q", "--algebra", "T2", "--state", str(st)]) == 0
    capsys.readouterr()
    assert main(["localize", "extend-restrict", "O_p", "--state", str(st), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["flag"] == "non-split extension by O_q"
    saved = json.loads(st.read_text())
    assert len(saved["commands"]) == 2 and saved["log"][-1]["op"] == "localize extend-restrict"


def test_loaded_algebra_and_remove_flag(tmp_path):
    path = tmp_path / "ut3.json"
    path.write_text(json.dumps(dict(algebra_to_json(upper_triangular(3, GF(3))), name="UT3")))
    ws = Workspace()
    r = run_command(f"localize torsion P_p0 --load {path} --algebra UT3 --remove p2", ws)
    assert r.record["tau"]["factors"] == {"p2": 1} and r.status == 0  # socle of e11 A is spanned by e13
    with pytest.raises(UsageError):
        run_command("localize torsion Q_p0 --remove p2", ws)

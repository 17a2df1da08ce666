from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gpdeform import __version__
from gpdeform.cli import run

LAM = {"nakayama": [8, 9, 9]}
DUAL = {"truncated_polynomial": 2}
V1 = {"algebra": LAM, "string": ["γ3", "γ2"]}
V2 = {"algebra": LAM, "string": ["γ3", "γ2", "γ1", "γ3", "γ2"]}
K = {"algebra": DUAL, "simple": 0}
X_INFL = {"left": DUAL, "right": DUAL, "sum": [{"regular": True}, {"free": True}]}
Y_INFL = {"left": DUAL, "right": DUAL, "regular": True}


def j(doc) -> str:
    return json.dumps(doc, ensure_ascii=False)


def ok(*argv) -> dict:
    code, text = run(list(argv))
    assert code == 0, text
    return json.loads(text)


def test_scenario_appendix():
    out = ok("scenario", "appendix")
    res = out["result"]
    assert all(res["checks"].values())
    assert res["results"]["Omega_V2_iso_V1"] is True
    assert res["results"]["dim_stable_End_V1"] == 1
    assert res["results"]["dim_Ext1_V2_V2"] == 1
    assert res["results"]["versal_V1"]["ring"] == "k[[t]]/(t^3)"


def test_scenario_over_rationals():
    out = ok("scenario", "appendix", "--field", "0")
    assert out["config"]["field"] == 0
    assert all(out["result"]["checks"].values())


def test_reports_embed_version_and_config():
    out = ok("def", "versal", j(K), "--order", "3")
    assert out["tool"] == "gpdeform" and out["version"] == __version__
    assert out["config"] == {"cutoff": 4, "cutoff_source": "default", "field": 2, "order": 3}
    assert out["result"]["relations"] == ["t^2"]


def test_global_flags_before_subcommand():
    out = ok("--order", "2", "def", "versal", j(K))
    assert out["config"]["order"] == 2


def test_cutoff_from_environment(monkeypatch):
    monkeypatch.setenv("GPDEFORM_CUTOFF", "7")
    out = ok("mod", "gp", j(V1))
    assert out["config"]["cutoff"] == 7 and out["config"]["cutoff_source"] == "env"
    out = ok("mod", "gp", j(V1), "--cutoff", "9")
    assert out["config"]["cutoff"] == 9 and out["config"]["cutoff_source"] == "flag"


def test_versal_dual_numbers():
    out = ok("def", "versal", j(K), "--order", "4")
    assert out["result"]["relations"] == ["t^2"] and out["result"]["exact"]


def test_algebra_commands():
    out = ok("alg", "nakayama", "8", "9", "9")
    assert out["result"]["dim"] == 26
    doc = out["result"]["algebra"]
    again = ok("alg", "check", j(doc))
    assert again["result"]["dim"] == 26
    built = ok("alg", "build", j(doc))
    assert built["result"]["dim"] == 26


def test_module_commands():
    assert ok("mod", "hom", j(V1), j(V1))["result"]["dim"] == 1
    assert ok("mod", "ext", j(V2), j(V2), "-i", "1")["result"]["dim"] == 1
    assert ok("mod", "stable-end", j(V2))["result"]["dim"] == 1
    syz = ok("mod", "syzygy", j({"algebra": LAM, "projective": 1}))["result"]
    assert syz["is_zero"] is True
    syz = ok("mod", "syzygy", j(V2))["result"]
    assert syz["syzygy"]["dims"] == [1, 1, 1]
    res = ok("mod", "resolve", j(K))["result"]
    assert res["terms"] == [[2]] * 5 and res["terminated"] is False
    assert ok("mod", "string", j(LAM), "γ3", "γ2")["result"]["module"]["dims"] == [1, 1, 1]
    parts = ok("mod", "decompose", j({"algebra": LAM, "sum": [{"projective": 1}, {"string": ["γ3", "γ2"]}]}))
    assert sorted(sum(p["module"]["dims"]) for p in parts["result"]["summands"]) == [3, 9]


def test_gp_expectations():
    assert ok("mod", "gp", j(V1), "--expect", "Yes")["result"]["status"] == "Yes"
    code, text = run(["mod", "gp", j({"algebra": {"linear": 2}, "simple": 0}), "--expect", "Yes"])
    assert code == 1
    out = json.loads(text)
    assert out["status"] == "refuted"


def test_complex_commands():
    stalk_k = {"algebra": DUAL, "stalk": {"simple": 0}}
    out = ok("cx", "perfect", j(stalk_k))["result"]
    assert out["status"] == "No" and out["certificate"]["period"] == 1
    code, _ = run(["cx", "perfect", j(stalk_k), "--expect", "Yes"])
    assert code == 1
    sv1 = {"algebra": LAM, "stalk": {"string": ["γ3", "γ2"]}}
    assert ok("cx", "hom-sg", j(sv1), j(sv1))["result"]["dim"] == 1
    assert ok("cx", "hom-derived", j(sv1), j(sv1), "-i", "0")["result"]["dim"] == 1
    coh = ok("cx", "cohomology", j(sv1), "-n", "0")["result"]
    assert coh["cohomology"]["dims"] == [1, 1, 1]


def test_deformation_commands():
    assert ok("def", "tangent", j(V1))["result"]["dim"] == 1
    out = ok("def", "enumerate", j(K), j({"vars": ["t"], "relations": ["t^2"], "order": 2}))
    assert out["result"]["classes"] == 2
    lift = {"module": K, "ring": {"vars": ["t"], "relations": ["t^2"], "order": 2}, "coeffs": {"x": {"t": [[1]]}}}
    source = {"vars": ["t"], "relations": ["t^3"], "order": 3}
    out = ok("def", "extend", j(lift), j(source))
    assert out["result"]["extends"] is False
    code, _ = run(["def", "extend", j(lift), j(source), "--expect-lift"])
    assert code == 1
    trivial = {"module": K, "ring": lift["ring"], "coeffs": {}}
    out = ok("def", "extend", j(trivial), j(source), "--expect-lift")
    assert out["result"]["extends"] is True


def test_singular_equivalence_commands():
    out = ok("sing", "check", j(X_INFL), j(Y_INFL), "--expect-certified")
    assert out["result"]["certified"] is True and out["result"]["Q_dim"] == 4
    out = ok("sing", "transport", j(X_INFL), j(K), "--gp")
    assert out["result"]["module"]["dims"] == [3] and out["result"]["gp"]["status"] == "Yes"
    out = ok("sing", "invariance", j(X_INFL), j(Y_INFL), j(K), "--order", "3")
    assert out["result"]["invariant"] is True
    bad = {"left": DUAL, "right": DUAL, "algebra": {"enveloping": True}, "simple": 0}
    code, _ = run(["sing", "check", j(bad), j(Y_INFL)])
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["mod", "frobnicate"],
    ["mod", "string", j(LAM), "γ1", "γ1", "γ1", "γ1", "γ1", "γ1", "γ1", "γ1", "γ1"],
    ["mod", "hom", "{not json", j(V1)],
    ["mod", "hom", "/nonexistent/file.json", j(V1)],
    ["def", "versal", j(V1), "--order", "zero"],
    ["--field", "4", "scenario", "appendix"],
])
def test_input_errors_exit_2(argv, capsys):
    code, text = run(argv)
    assert code == 2
    assert "error" in text + capsys.readouterr().err


def test_reports_are_deterministic():
    argv = ["scenario", "appendix"]
    assert run(argv)[1] == run(argv)[1]
    argv = ["sing", "check", j(X_INFL), j(Y_INFL)]
    assert run(argv)[1] == run(argv)[1]


def test_console_entry_point(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(j(K), encoding="utf-8")
    first = subprocess.run([sys.executable, "-m", "gpdeform", "def", "versal", str(path)],
                           capture_output=True, text=True, check=False)
    second = subprocess.run([sys.executable, "-m", "gpdeform", "def", "versal", str(path)],
                            capture_output=True, text=True, check=False)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["result"]["ring"] == "k[[t]]/(t^2)"

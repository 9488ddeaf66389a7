import json
import subprocess
import sys
from importlib import resources

import pytest

from qpskew.cli import main
from qpskew.instance import parse_instance

DATA = resources.files("qpskew.data")


def path_of(name):
    return str(DATA.joinpath(f"{name}.json"))


def read(d, name):
    return json.loads((d / name).read_text(encoding="utf-8"))


def test_build_paper(tmp_path):
    assert main(["build", path_of("paper_z3xz3"), "--out", str(tmp_path)]) == 0
    qg = read(tmp_path, "qg.json")
    wg = read(tmp_path, "wg.json")
    ch = read(tmp_path, "choices.json")
    assert len(qg["quiver"]["vertices"]) == 6 and len(qg["quiver"]["arrows"]) == 15
    assert sorted(c for c, _ in wg["potential"]) == ["1", "1", "1", "9"]
    assert ch["I_tilde"] == ["i1", "j1"] and ch["chi"]["x1"] == "chi(1)"
    labels = qg["vertex_labels"]
    assert sorted(v["rep"] for v in labels.values()) == ["i1"] * 3 + ["j1"] * 3


def test_build_trivial(tmp_path):
    assert main(["build", path_of("trivial"), "--out", str(tmp_path)]) == 0
    qg = read(tmp_path, "qg.json")
    src = json.loads(DATA.joinpath("trivial.json").read_text(encoding="utf-8"))
    origin = {a["id"]: a["origin"] for a in qg["quiver"]["arrows"]}
    assert sorted(origin.values()) == sorted(a["id"] for a in src["quiver"]["arrows"])
    wg = read(tmp_path, "wg.json")["potential"]
    relabeled = sorted((c, [origin[a] for a in cyc]) for c, cyc in wg)
    # rotations may differ after relabeling, so compare as multisets of arrows
    assert sorted((c, sorted(x)) for c, x in relabeled) == \
        sorted((c, sorted(x)) for c, x in src["potential"])


def test_build_kronecker(tmp_path):
    assert main(["build", path_of("kronecker_z2"), "--out", str(tmp_path)]) == 0
    qg = read(tmp_path, "qg.json")
    assert len(qg["quiver"]["vertices"]) == 4 and len(qg["quiver"]["arrows"]) == 4
    assert read(tmp_path, "wg.json")["potential"] == []


def test_build_round_trip_and_determinism(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert main(["build", path_of("paper_z3xz3"), "--out", str(a)]) == 0
    assert main(["build", path_of("paper_z3xz3"), "--out", str(b)]) == 0
    for name in ("qg.json", "wg.json", "choices.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    # the Q_G file is itself a valid instance for the trivial group
    inst = parse_instance(read(a, "qg.json"))
    assert len(inst.quiver.arrows) == 15 and len(inst.potential().terms) == 4
    assert main(["build", str(a / "qg.json"), "--out", str(c)]) == 0
    # for the trivial group every arrow x becomes x~[tr,tr]
    again = [[k, [a.removesuffix("~[tr,tr]") for a in cyc]] for k, cyc in read(c, "wg.json")["potential"]]
    assert again == read(a, "wg.json")["potential"]


def test_verify(tmp_path, capsys):
    assert main(["verify", path_of("paper_z3xz3"), "--out", str(tmp_path)]) == 0
    report = read(tmp_path, "report.json")
    assert report["passed"] and report["first_failure"] is None
    assert list(report["checks"]) == ["corners", "iota", "transport", "s_commutes", "counting", "dg_iso"]
    assert "PASS dg_iso" in capsys.readouterr().out
    assert main(["verify", path_of("trivial"), "--out", str(tmp_path)]) == 0


def test_verify_negative_control(tmp_path):
    assert main(["verify", path_of("paper_z3xz3"), "--negative-control", "--out", str(tmp_path)]) == 1
    first = read(tmp_path, "report.json")["first_failure"]
    assert first["check"] == "dg_iso" and first["counterexample"].startswith("check (a)")


def test_verify_is_deterministic_across_threads(tmp_path, monkeypatch):
    a, b = tmp_path / "a", tmp_path / "b"
    monkeypatch.setenv("QPSKEW_THREADS", "1")
    main(["verify", path_of("paper_z3xz3"), "--out", str(a)])
    monkeypatch.setenv("QPSKEW_THREADS", "4")
    main(["verify", path_of("paper_z3xz3"), "--out", str(b)])
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_normalize(tmp_path):
    out = tmp_path / "n.json"
    assert main(["normalize", path_of("kronecker_z2"), "--out", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["base_change"] == {"a.0": [["1", "a"], ["1", "b"]], "a.1": [["1", "a"], ["-1", "b"]]}
    assert data["instance"]["action"][0]["arrows"] == {"a.0": [["1", "a.0"]], "a.1": [["-1", "a.1"]]}
    # the normalized file is a valid, already monomial instance
    inst = parse_instance(data["instance"])
    act, bc, _ = inst.monomial()
    assert all(bc[a] == {a: 1} for a in bc)
    assert main(["normalize", path_of("paper_z3xz3"), "--out", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert all(v == [["1", k]] for k, v in data["base_change"].items())
    src = json.loads(DATA.joinpath("paper_z3xz3.json").read_text(encoding="utf-8"))
    assert data["instance"]["quiver"] == src["quiver"]


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": [2], "quiver": {"vertices": ["1"], '
                   '"arrows": [{"id": "a", "source": "1", "target": "9"}]}}')
    assert main(["build", str(bad), "--out", str(tmp_path)]) == 2
    assert main(["build", str(tmp_path / "missing.json")]) == 2
    syntax = tmp_path / "syntax.json"
    src = json.loads(DATA.joinpath("paper_z3xz3.json").read_text(encoding="utf-8"))
    src["potential"][0][0] = "1/0"
    syntax.write_text(json.dumps(src))
    assert main(["build", str(syntax), "--out", str(tmp_path)]) == 2
    order = tmp_path / "order.json"
    order.write_text(json.dumps({
        "group": [3], "quiver": {"vertices": ["1", "2"], "arrows": []},
        "action": [{"vertices": {"1": "2", "2": "1"}}]}))
    assert main(["normalize", str(order)]) == 2
    noninv = tmp_path / "noninv.json"
    src = json.loads(DATA.joinpath("paper_z3xz3.json").read_text(encoding="utf-8"))
    src["potential"] = src["potential"][:2]
    noninv.write_text(json.dumps(src))
    assert main(["build", str(noninv), "--out", str(tmp_path)]) == 3
    assert main(["verify", str(noninv), "--out", str(tmp_path)]) == 3


def test_console_script(tmp_path):
    res = subprocess.run([sys.executable, "-m", "qpskew.cli", "build", path_of("kronecker_z2"),
                          "--out", str(tmp_path)], capture_output=True, text=True)
    assert res.returncode == 0 and "4 vertices, 4 arrows" in res.stdout
    with pytest.raises(SystemExit):
        main(["frobnicate"])

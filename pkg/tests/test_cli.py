import json
import subprocess
import sys

import pytest

from cpwlmat.cli import run

from conftest import ANCHOR_LOW_ORDER, ANCHOR_VALUES, max2_net

ANCHOR_JSON = json.dumps({"n": 3, "mode": "exact",
                         "values": {str(m): str(v) for m, v in enumerate(ANCHOR_VALUES)}})
TABLE_JSON = json.dumps({"n": 3, "mode": "exact",
                         "values": {str(m): str(v) for m, v in sorted(ANCHOR_LOW_ORDER.items())}})


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dim_m32(capsys):
    code, out, _ = call(capsys, "dim", "--matroid", '{"type":"uniform","n":3,"k":2}')
    data = json.loads(out)
    assert code == 0
    assert (data["kernel_dim"], data["independent_count"], data["discrepancy"]) == (7, 7, 0)


def test_dim_m42(capsys):
    code, out, _ = call(capsys, "dim", "--matroid", '{"type":"uniform","n":4,"k":2}')
    data = json.loads(out)
    assert (data["kernel_dim"], data["independent_count"], data["discrepancy"]) == (12, 11, 1)
    assert data["dimension"] == 11
    _, out, _ = call(capsys, "dim", "--matroid", '{"type":"uniform","n":4,"k":2}',
                     "--model", "circuit-only")
    data = json.loads(out)
    assert data["dimension"] == 12 and data["discrepancy"] == 1


def test_reduce(capsys, tmp_path):
    path = tmp_path / "table.json"
    path.write_text(TABLE_JSON)
    code, out, _ = call(capsys, "reduce", "--k", "2", "--table", str(path))
    assert code == 0
    assert json.loads(out)["values"]["7"] == "12"


def test_transform_round_trip_bytes(capsys, tmp_path):
    src = tmp_path / "f.json"
    code, out, _ = call(capsys, "transform", "--function", ANCHOR_JSON, "--inverse")
    # canonical serialization of the original function
    code, canon, _ = call(capsys, "transform", "--function", out)
    src.write_text(canon)
    spec = tmp_path / "spec.json"
    back = tmp_path / "back.json"
    assert run(["transform", "--function", str(src), "-o", str(spec)]) == 0
    assert run(["transform", "--function", str(spec), "--inverse", "-o", str(back)]) == 0
    assert back.read_bytes() == src.read_bytes()
    assert json.loads(spec.read_text())["values"]["6"] == "2"


def test_deterministic_output(capsys):
    a = call(capsys, "probe", "--function", ANCHOR_JSON, "--seed", "5", "--trials", "20")
    b = call(capsys, "probe", "--function", ANCHOR_JSON, "--seed", "5", "--trials", "20")
    assert a == b and json.loads(a[1])["conforming"] is True


def test_check_strict(capsys):
    perturbed = json.loads(ANCHOR_JSON)
    perturbed["values"]["7"] = "13"
    m = '{"type":"uniform","n":3,"k":2}'
    code, out, _ = call(capsys, "check", "--function", json.dumps(perturbed), "--matroid", m)
    assert code == 0 and json.loads(out)["member"] is False
    code, out, _ = call(capsys, "check", "--function", json.dumps(perturbed), "--matroid", m,
                        "--strict")
    assert code == 1
    assert json.loads(out)["violations"] == [{"mask": 7, "set": "{1,2,3}", "residual": "1"}]
    code, _, _ = call(capsys, "check", "--function", ANCHOR_JSON, "--matroid", m, "--strict")
    assert code == 0


def test_check_models_disagree(capsys):
    vals = {str(S): "1" if S == 15 else "0" for S in range(16)}
    F = json.dumps({"n": 4, "mode": "exact", "values": vals})  # point mass: spectrum hits 1111 only among circuits' supersets
    m = '{"type":"uniform","n":4,"k":2}'
    _, out, _ = call(capsys, "check", "--function", F, "--matroid", m, "--model", "circuit-only")
    weak = json.loads(out)
    _, out, _ = call(capsys, "check", "--function", F, "--matroid", m)
    strong = json.loads(out)
    assert weak["member"] is True and strong["member"] is False
    assert [v["set"] for v in strong["violations"]] == ["{1,2,3,4}"]


def test_basis(capsys):
    code, out, _ = call(capsys, "basis", "--function", ANCHOR_JSON, "--matroid",
                        '{"type":"uniform","n":3,"k":2}', "--strict")
    data = json.loads(out)
    assert code == 0 and data["residual"] == []
    assert data["coeffs"] == {"0": "0", "1": "1", "2": "2", "3": "2", "4": "3", "5": "2", "6": "2"}


def test_lovasz_eval(capsys):
    F = json.dumps({"n": 2, "mode": "exact", "values": {"0": "0", "1": "1", "2": "2", "3": "5"}})
    code, out, _ = call(capsys, "lovasz-eval", "--function", F, "--point", "1/2,1/2")
    assert code == 0 and out == "5/2\n"
    code, _, err = call(capsys, "lovasz-eval", "--function", F, "--point", "1/2")
    assert code == 2 and "point" in err


def test_probe_breakline_via_max(capsys):
    # max of two modular interpolants: x1 - x2 and 2*x2 - x1
    f1 = json.dumps({"n": 2, "mode": "exact", "values": {"0": "0", "1": "1", "2": "-1", "3": "0"}})
    f2 = json.dumps({"n": 2, "mode": "exact", "values": {"0": "0", "1": "-1", "2": "2", "3": "1"}})
    code, out, _ = call(capsys, "probe", "--function", f1, "--max-with", f2,
                        "--trials", "200", "--seed", "0", "--strict")
    rep = json.loads(out)
    assert code == 1 and rep["conforming"] is False and len(rep["witness"]["points"]) == 4


def test_net_analyze(capsys, tmp_path):
    path = tmp_path / "net.json"
    path.write_text(json.dumps(max2_net(3).to_json()))
    code, out, _ = call(capsys, "net-analyze", "--net", str(path), "--k", "1", "--strict")
    rep = json.loads(out)
    assert code == 1 and rep["max_order"] == 2
    assert rep["violations"][0]["set"] == "{1,2}"
    assert rep["violations"][0]["coefficient"] == pytest.approx(-1, abs=1e-9)
    code, _, _ = call(capsys, "net-analyze", "--net", str(path), "--k", "2", "--strict")
    assert code == 0
    code, out, _ = call(capsys, "probe", "--net", str(path), "--trials", "50")
    assert code == 0


def test_matroid_info(capsys):
    code, out, _ = call(capsys, "matroid-info", "--matroid",
                        '{"type":"circuits","n":3,"circuits":[[1,2],[2,3]]}')
    data = json.loads(out)
    assert data["independent_count"] == 5 and data["rank"] == 2
    assert data["axioms"]["elimination"] is False
    code, out, _ = call(capsys, "matroid-info", "--matroid",
                        '{"type":"circuits","n":3,"circuits":[[1,2],[1,2,3]]}')
    assert code == 0 and json.loads(out)["axioms"]["antichain"] is False


def test_witness(capsys):
    code, out, _ = call(capsys, "witness", "--n", "3", "--k", "2")
    data = json.loads(out)
    assert code == 0 and data["certificate"]["set"] == "{1,2,3}"
    assert data["certificate"]["moebius_value"] == "1"
    code, _, err = call(capsys, "witness", "--n", "3", "--k", "3")
    assert code == 2 and "k:" in err


@pytest.mark.parametrize("argv,field", [
    (["dim", "--matroid", '{"type":"uniform","n":3,"k":7}'], "matroid.k"),
    (["dim", "--matroid", "{not json"], "matroid"),
    (["dim", "--matroid", "/no/such/file.json"], "matroid"),
    (["transform", "--function", '{"n":2,"mode":"exact","values":{"0":"1"}}'], "values.1"),
    (["reduce", "--k", "2", "--table", '{"n":3,"values":{"0":"0"}}'], "values"),
    (["check", "--function", ANCHOR_JSON, "--matroid", '{"type":"uniform","n":4,"k":2}'],
     "size mismatch"),
])
def test_malformed_input(capsys, argv, field):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 1 and field in err


def test_size_cap(capsys, monkeypatch):
    monkeypatch.setenv("CPWLMAT_MAX_N", "3")
    code, _, err = call(capsys, "dim", "--matroid", '{"type":"uniform","n":4,"k":2}')
    assert code == 2 and "cap" in err
    code, _, _ = call(capsys, "dim", "--matroid", '{"type":"uniform","n":15,"k":2}')
    assert code == 2
    monkeypatch.delenv("CPWLMAT_MAX_N")
    code, _, err = call(capsys, "dim", "--matroid", '{"type":"uniform","n":15,"k":2}')
    assert code == 2 and "n <= 14" in err


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cpwlmat", "dim", "--matroid",
                           '{"type":"uniform","n":3,"k":2}'], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["kernel_dim"] == 7

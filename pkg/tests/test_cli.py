import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from pbrigid import arith, classify as classify_mod
from pbrigid.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, name, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    assert data["command"] == name
    return code, data


def test_classify_exit_codes(capsys):
    assert run(capsys, "classify", "2", "3", "5", "30")[0] == 0
    assert run(capsys, "classify", "1", "2", "3")[0] == 1
    assert run(capsys, "classify", "3", "3", "3", "3", "3")[0] == 2
    assert run(capsys, "classify", "2,3,x")[0] == 64
    assert run(capsys, "classify", "2", "3")[0] == 64
    assert run(capsys, "classify", "0", "3", "4")[0] == 64


def test_classify_trace_text(capsys):
    code, out, _ = run(capsys, "classify", "2", "3", "5", "30", "--trace")
    assert code == 0
    assert out.splitlines()[0] == "(2,3,5,30): Rigid"
    assert out.splitlines()[-1].strip().startswith("FanoThreefoldCase")


def test_classify_json(capsys):
    for argv, status in [(("2", "3", "3", "4"), "Rigid"), (("2", "2", "3"), "NotRigid"),
                         (("3", "4", "5", "7", "11", "13"), "Rigid"), (("3",) * 5, "ConjecturallyRigid")]:
        _, data = run_json(capsys, "classify", "classify", *argv)
        assert data["result"]["status"] == status


def test_argparse_errors_are_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--class", "gamma-minus")
    assert code == 0 and len(out.splitlines()) == 8 and "2 3 5 30" in out.splitlines()
    assert run(capsys, "enumerate", "--n", "2", "--class", "gamma-minus")[0] == 64
    assert run(capsys, "enumerate", "--n", "4", "--class", "gamma-minus")[0] == 64
    assert run(capsys, "enumerate", "--n", "3", "--class", "gamma-plus")[0] == 64
    _, data = run_json(capsys, "enumerate", "enumerate", "--n", "3", "--class", "gamma-plus", "--max", "8")
    tuples = [tuple(t) for t in data["result"]]
    assert (2, 3, 8, 8) not in tuples  # cotype 1: 3 does not divide lcm(2, 8, 8)
    assert (3, 3, 4, 4) not in tuples and (2, 4, 8, 8) in tuples
    assert tuples == sorted(tuples)
    _, alias = run_json(capsys, "enumerate", "enumerate", "--class", "gamma-plus-sample", "--max", "8")
    assert alias["result"] == data["result"]


def test_geometry(capsys):
    code, out, _ = run(capsys, "geometry", "2", "3", "5", "30")
    assert code == 0 and "K^2            2/15" in out and out.count("x 1/") == 3
    code, data = run_json(capsys, "geometry", "geometry", "2", "3", "4", "12")
    assert data["result"]["K_squared"] == "2/3"
    assert data["result"]["resolution_graph"]["ambient_k_squared"] == 0
    assert run(capsys, "geometry", "2", "3", "3", "4")[0] == 65
    assert run(capsys, "geometry", "2", "3", "5")[0] == 65
    code, out, _ = run(capsys, "geometry", "2", "3", "5", "30", "--dot")
    assert code == 0 and out.startswith('graph "(2,3,5,30)"')
    _, data = run_json(capsys, "geometry", "geometry", "3", "3", "3", "3")
    assert data["result"]["singular_points"] == []


def test_contract_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "resolution", "2", "3", "5", "30")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("graph"))
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out, _ = run(capsys, "contract", "--input", str(path), "--order", "Delta,E2,E3")
    assert code == 0 and out.splitlines()[-2] == "final K^2 = 1"
    code, data = run_json(capsys, "contract", "contract", "--input", str(path), "--order", "Delta,E2,E3")
    assert data["result"]["degree"] == 1 and data["result"]["notes"]["E5"]
    assert run(capsys, "contract", "--input", str(path), "--order", "E5")[0] == 65

    _, out, _ = run(capsys, "resolution", "2", "3", "4", "12")
    path.write_text(out)
    _, data = run_json(capsys, "contract", "contract", "--input", str(path), "--auto")
    assert data["result"]["degree"] == 2

    # a geometry envelope is accepted as input too
    _, out, _ = run(capsys, "geometry", "2", "3", "4", "12", "--json")
    path.write_text(out)
    code, data = run_json(capsys, "contract", "contract", "--input", str(path))
    assert data["result"]["degree"] == 2


def test_contract_bad_input(capsys, tmp_path):
    path = tmp_path / "g.json"
    for text in ["not json", "[1, 2]", '{"curves": [{"name": "a", "self_int": -1, "k_degree": 0}]}']:
        path.write_text(text)
        assert run(capsys, "contract", "--input", str(path))[0] == 65
    assert run(capsys, "contract", "--input", str(tmp_path / "missing.json"))[0] == 65
    path.write_text("{}")
    code, data = run_json(capsys, "contract", "contract", "--input", str(path))
    assert code == 0 and data["result"]["final"]["curves"] == []


def test_witness(capsys):
    code, data = run_json(capsys, "witness", "witness", "2", "2", "3", "4")
    assert code == 0 and data["result"]["nilpotency"]["certified"]
    code, out, _ = run(capsys, "witness", "1", "5", "7", "9")
    assert code == 0 and "Certified" in out
    assert run(capsys, "witness", "2", "3", "5", "30")[0] == 65


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0 and "FAIL" not in out
    code, data = run_json(capsys, "verify-paper", "verify-paper")
    assert code == 0 and data["result"]["passed"] and data["result"]["summary"]["failed"] == 0


def test_verify_paper_detects_corrupted_weights(capsys, monkeypatch):
    real = arith.weights

    def corrupted(S):
        w = real(S)
        return arith.WeightVector(tuple(x + 1 for x in w.weights), w.total_degree)

    monkeypatch.setattr(arith, "weights", corrupted)
    classify_mod._trace.cache_clear()
    try:
        code, data = run_json(capsys, "verify-paper", "verify-paper")
    finally:
        monkeypatch.undo()
        classify_mod._trace.cache_clear()
    assert code == 70
    failed = {c["name"] for c in data["result"]["checks"] if not c["passed"]}
    assert {"surface-2-3-5-30", "surface-2-3-4-12"} <= failed


def test_json_is_deterministic(capsys):
    a = run(capsys, "classify", "2", "3", "4", "5", "--json")[1]
    b = run(capsys, "classify", "2", "3", "4", "5", "--json")[1]
    assert a == b


def test_module_entry_point_no_color():
    env = dict(os.environ, NO_COLOR="1")
    p = subprocess.run([sys.executable, "-m", "pbrigid", "classify", "1", "2", "3"],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 1
    assert p.stdout.strip() == "(1,2,3): NotRigid (witness unit-exponent:i=0,j=1)"
    assert "\033[" not in p.stdout

import json

from supersec import HypergraphValuation, Instance, Uniform
from supersec.cli import main


def write(path, data):
    path.write_text(json.dumps(data))
    return path


def test_gen_and_degree(tmp_path, capsys):
    spec = write(tmp_path / "spec.json", {"n": 6, "d": 1, "seed": 3, "matroid": {"kind": "uniform", "k": 2}})
    out = tmp_path / "inst.json"
    assert main(["gen", "--spec", str(spec), "--out", str(out)]) == 0
    inst = Instance.load(out)
    assert inst.n == 6
    capsys.readouterr()
    assert main(["degree", "--instance", str(out)]) == 0
    text = capsys.readouterr().out
    assert f"supermodular degree: {inst.valuation.supermodular_degree()}" in text
    assert text.count("\n") == 7


def test_run_writes_reports(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    Instance(HypergraphValuation([1, 2]), Uniform(2, 1)).save(inst)
    conf = write(tmp_path / "conf.json", {"algorithm": "alg1-small-rank", "instance_path": str(inst), "trials": 2})
    out = tmp_path / "rep"
    assert main(["run", "--config", str(conf), "--trials", "50", "--seed", "9", "--out", str(out), "--trace"]) == 0
    first = (out / "report.csv").read_text()
    assert len(first.splitlines()) > 50
    assert "trace" in json.loads((out / "report.json").read_text())["rows"][0]
    assert main(["run", "--config", str(conf), "--trials", "50", "--seed", "9", "--out", str(out), "--trace"]) == 0
    assert (out / "report.csv").read_text() == first
    assert "ratio" in capsys.readouterr().out


def test_process_command(capsys):
    assert main(["process", "--p", "0.5", "--B", "1", "--L", "10", "--schedule", "adaptive", "--trials", "200"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 7


def test_exit_codes(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "missing.json")]) == 2
    bad = write(tmp_path / "bad.json", {"algorithm": "alg1-small-rank", "trials": 1})
    assert main(["run", "--config", str(bad)]) == 2
    big = {"valuation": {"n": 21, "weights": [1] * 21}, "matroid": {"kind": "uniform", "k": 2}}
    conf = write(tmp_path / "big.json", {"algorithm": "alg1-small-rank", "instance": big, "trials": 1})
    assert main(["run", "--config", str(conf)]) == 3
    spec = write(tmp_path / "spec.json", {"n": 3, "d": 3})
    assert main(["gen", "--spec", str(spec), "--out", str(tmp_path / "x.json")]) == 2
    assert main(["process", "--p", "2", "--B", "1", "--L", "1"]) == 2
    assert "config error" in capsys.readouterr().err

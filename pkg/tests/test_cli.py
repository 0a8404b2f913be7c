import json

import pytest

from adelic_weil import cli
from adelic_weil import verify as verify_mod

Z = '{"dim":1,"den":"1","rows":[[1]]}'
F_HALF = '{"dim":1,"K":' + Z + ',"support":[{"rep":["1/2"],"value":"1"}]}'
DELTA = '{"dim":1,"K":' + Z + ',"support":[{"rep":["0"],"value":"1"}]}'
J = '[["0","1"],["-1","0"]]'


def run(capsys, *argv):
    code = cli.main(["--json", *argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_lattice_ops(capsys):
    assert run(capsys, "lattice", "dual", "--L", '{"dim":1,"den":"2","rows":[[3]]}')[1] == {"dim": 1, "den": "3", "rows": [[2]]}
    assert run(capsys, "lattice", "index", "--L", Z, "--K", '{"dim":1,"den":"1","rows":[[4]]}')[1] == {"index": "4/1"}
    assert run(capsys, "lattice", "cosets", "--L", Z, "--K", '{"dim":1,"den":"1","rows":[[2]]}')[1] == {"reps": [["0/1"], ["1/1"]]}


def test_melem_ops(capsys):
    code, out, _ = run(capsys, "melem", "eval", "--f", F_HALF, "--x", '["5/2"]')
    assert code == 0 and out["value"] == {"order": 1, "terms": [[0, "1/1"]]}
    assert run(capsys, "melem", "pair", "--f", F_HALF, "--g", DELTA)[1]["value"] == {"order": 1, "terms": []}


def test_weil_apply_and_factor(capsys):
    code, out, _ = run(capsys, "weil", "apply", "--g", J, "--f", F_HALF)
    assert code == 0 and out["K"]["rows"] == [[2]]
    assert run(capsys, "weil", "factor", "--g", J)[1] == {"word": [{"atom": "J"}]}


def test_heis_and_theta(capsys):
    assert run(capsys, "heis", "commutant", "--L", Z, "--K", '{"dim":1,"den":"1","rows":[[6]]}')[1]["dimension"] == 1
    code, out, _ = run(capsys, "theta", "eval", "--f", DELTA, "--z", "[[0,1]]")
    assert code == 0 and abs(out["value"][0] - 1.0864348112133080) < 1e-12


def test_theta_modularity(capsys, tmp_path):
    s = tmp_path / "s.json"
    s.write_text("[[[0,1]],[[0,2]],[[0.3,0.7]]]")
    code, out, _ = run(capsys, "theta", "modularity", "--f", DELTA, "--g", J, "--samples", str(s))
    assert code == 0 and out["verdict"] == "PASS" and not out["exact_one"]


def test_congruence(capsys):
    code, out, _ = run(capsys, "congruence", "stabilizer", "--f", F_HALF, "--trials", "5", "--seed", "3")
    assert code == 0 and out["N"] == 2 and all(e["fixed"] for e in out["evidence"])
    assert len(run(capsys, "congruence", "sample", "--kind", "u", "--l", "8", "--count", "3")[1]) == 3
    assert run(capsys, "congruence", "member", "--kind", "gamma12", "--g", J)[1] == {"member": True}
    assert run(capsys, "congruence", "member", "--kind", "u", "--l", "2", "--g", J)[0] == 2


def test_verify_pass_and_determinism(capsys):
    first = cli.main(["--json", "verify", "covariance", "--n", "1", "--trials", "10", "--seed", "7"])
    a = capsys.readouterr().out
    assert first == 0 and json.loads(a) == {"suite": "covariance", "trials": 10, "passes": 10, "failures": []}
    cli.main(["weil", "verify", "covariance", "--n", "1", "--trials", "10", "--seed", "7", "--json"])
    assert capsys.readouterr().out == a


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(verify_mod.SUITES, "poisson", lambda rng, c: (False, {"why": "forced"}))
    code, out, _ = run(capsys, "verify", "poisson", "--trials", "2")
    assert code == 1 and out["passes"] == 0 and out["failures"][0] == {"trial": 0, "status": "fail", "why": "forced"}


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "nosuch"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["melem", "add", "--f", DELTA])
    assert info.value.code == 2
    bad = tmp_path / "c.json"
    bad.write_text('{"suite": "heisenberg",\n "trials": "x"}')
    code, _, err = run(capsys, "verify", "--config", str(bad))
    assert code == 2 and "/trials" in err


def test_convert(capsys, tmp_path):
    messy = '{"dim":1,"K":{"dim":1,"den":"1","rows":[[2]]},"support":[{"rep":["3"],"value":"1"},{"rep":["1/2"],"value":"2"}]}'
    code, out, _ = run(capsys, "convert", messy)
    assert code == 0 and [s["rep"] for s in out["support"]] == [["1/2"], ["1/1"]]
    path = tmp_path / "f.json"
    cli.main(["convert", messy])
    path.write_text(capsys.readouterr().out)
    cli.main(["convert", str(path)])
    assert capsys.readouterr().out == path.read_text()
    code, _, err = run(capsys, "convert", messy.replace('"3"', '"1/0"'))
    assert code == 2 and "/support/0/rep/0" in err

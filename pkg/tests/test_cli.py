import json

import pytest

from detlab.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_good_yes(capsys, samples):
    code, rep = run_json(capsys, "check", "good", str(samples / "sqfr_n4_d2.mat"))
    assert code == 0
    assert rep["result"]["verdict"] == "certified_yes"
    assert rep["schema_version"] == 1 and rep["field"] == 32003


def test_good_no_for_section(capsys, samples):
    code, rep = run_json(capsys, "check", "good", str(samples / "stgood_Z.mat"))
    assert code == 1
    assert rep["result"]["verdict"] == "certified_no"


def test_standard_yes(capsys, samples):
    code, _, _ = run(capsys, "check", "standard", str(samples / "stgood_Z.mat"))
    assert code == 0


def test_acm(capsys, samples):
    assert run(capsys, "check", "acm", str(samples / "veronese.ideal"))[0] == 0
    assert run(capsys, "check", "acm", str(samples / "deg9gen10.ideal"))[0] == 1


def test_mu_square(capsys, samples):
    code, rep = run_json(capsys, "compute", "mu", "--square", str(samples / "verodeform_Is.ideal"))
    assert code == 0
    assert rep["result"]["mu"] == 55


def test_betti_text(capsys, samples):
    code, out, _ = run(capsys, "compute", "betti", str(samples / "veronese.ideal"))
    assert code == 0
    assert "6" in out and "8" in out and "3" in out


def test_reproduce(capsys):
    code, rep = run_json(capsys, "reproduce", "verodeform", "--seed", "1")
    assert code == 0
    assert rep["result"]["passed"] is True


def test_json_is_deterministic(capsys, samples):
    args = ("check", "good", str(samples / "stgood_M.mat"), "--seed", "4")
    a = run_json(capsys, *args)[1]
    b = run_json(capsys, *args)[1]
    a.pop("timings"), b.pop("timings")
    assert a == b


def test_seed_from_environment(capsys, samples, monkeypatch):
    monkeypatch.setenv("DETLAB_SEED", "17")
    _, rep = run_json(capsys, "check", "good", str(samples / "stgood_M.mat"))
    assert rep["seed"] == 17


def test_field_override(capsys, samples):
    _, rep = run_json(capsys, "check", "standard", str(samples / "stgood_M.mat"), "--field", "65537")
    assert rep["field"] == 65537


def test_parse_error_exit_3(capsys, samples, tmp_path):
    assert run(capsys, "check", "good", str(samples / "empty.mat"))[0] == 3
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring n=2 p=32003\nx0 + * x1\n")
    code, _, err = run(capsys, "compute", "mu", str(bad))
    assert code == 3
    assert "line 2" in err


def test_missing_file_exit_3(capsys, tmp_path):
    assert run(capsys, "check", "good", str(tmp_path / "nope.mat"))[0] == 3


def test_usage_errors_exit_4(capsys, samples):
    assert run(capsys, "frobnicate")[0] == 4
    assert run(capsys)[0] == 4
    assert run(capsys, "reproduce")[0] == 4
    assert run(capsys, "compute", "bdl", str(samples / "stgood_M.mat"))[0] == 4

import json
import subprocess
import sys

import pytest

from orthoplucker.cli import main
from orthoplucker.exterior import Form, MetricSpace
from orthoplucker.harness.io import dump_form, form_to_json
from orthoplucker.lie import su3_form

E6 = MetricSpace(6)


@pytest.fixture
def split_file(tmp_path):
    path = tmp_path / "split.json"
    dump_form(Form.blade(E6, 1, 2, 3) + Form.blade(E6, 4, 5, 6), path)
    return str(path)


@pytest.fixture
def bad_relation_file(tmp_path):
    path = tmp_path / "bad.json"
    F = Form(E6, 3, {(1, 2, 3): 1, (1, 4, 5): 1, (2, 3, 6): 1, (4, 5, 6): 1})
    dump_form(F, path)
    return str(path)


@pytest.fixture
def su3_file(tmp_path):
    path = tmp_path / "su3.json"
    dump_form(su3_form(), path)
    return str(path)


def test_check_relation_exit_codes(split_file, bad_relation_file, capsys):
    assert main(["check-relation", split_file]) == 0
    assert "relation holds" in capsys.readouterr().out
    assert main(["check-relation", bad_relation_file]) == 1
    assert main(["check-relation", "--coordinate", bad_relation_file]) == 1


def test_check_simple(tmp_path, split_file):
    path = tmp_path / "simple.json"
    dump_form(Form.blade(E6, 1, 2, 3), path)
    assert main(["check-simple", str(path)]) == 0
    assert main(["check-simple", split_file]) == 1


def test_decompose_writes_parts(tmp_path, split_file, bad_relation_file, su3_file):
    out = tmp_path / "parts.json"
    assert main(["--quiet", "decompose", split_file, "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["status"] == "decomposed" and len(data["parts"]) == 2
    assert main(["decompose", bad_relation_file]) == 1
    assert main(["decompose", su3_file]) == 1


def test_normal_form(tmp_path, capsys):
    path = tmp_path / "w.json"
    dump_form(Form(MetricSpace(4), 2, {(1, 2): 1, (3, 4): 2}), path)
    assert main(["normal-form", str(path)]) == 0
    assert "euclidean-blocks" in capsys.readouterr().out
    dump_form(Form(MetricSpace(4, 2), 2, {(1, 2): 1}), path)
    assert main(["normal-form", str(path)]) == 2


def test_nlie_commands(tmp_path, capsys, su3_file):
    assert main(["nlie", "from-form", su3_file]) == 0
    bracket = tmp_path / "b.json"
    bracket.write_text(capsys.readouterr().out)
    assert main(["nlie", "jacobi", str(bracket)]) == 0
    assert main(["nlie", "invariance", str(bracket)]) == 0
    bad = tmp_path / "bad_b.json"
    bad.write_text(json.dumps({"arity": 2, "dim": 3, "constants": [
        {"lower": [1, 2], "upper": 1, "coeff": 1}, {"lower": [1, 3], "upper": 2, "coeff": 1}]}))
    assert main(["nlie", "jacobi", str(bad)]) == 1
    assert main(["nlie", "invariance", str(bad)]) == 1


def test_catalog(tmp_path, capsys):
    assert main(["catalog", "list", "--signature", "lorentzian", "--max-dim", "3"]) == 0
    assert "so(1,2)" in capsys.readouterr().out
    assert main(["catalog", "list", "--max-dim", "9"]) == 2
    assert main(["catalog", "export", "su3", "--form"]) == 0
    assert json.loads(capsys.readouterr().out) == form_to_json(su3_form())


def test_report_flag_in_either_position(tmp_path, split_file):
    one, two = tmp_path / "one.json", tmp_path / "two.json"
    assert main(["--report", str(one), "check-relation", split_file]) == 0
    assert main(["check-relation", split_file, "--report", str(two)]) == 0
    assert json.loads(one.read_text()) == json.loads(two.read_text())
    assert json.loads(one.read_text())["is_zero"] is True


def test_verify_case_report_is_reproducible(tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(2)]
    for path in paths:
        argv = ["verify-case", "e6-p3-so4", "--trials", "10", "--seed", "3", "--no-timing", "--report", str(path)]
        assert main(argv) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    data = json.loads(paths[0].read_text())
    assert data["case"] == "e6-p3-so4" and data["verdict"] == "pass" and data["failures"] == []


def test_usage_and_input_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["verify-case", "nope"]) == 2
    assert main(["verify-case", "e6-p3-so4", "--trials", "0"]) == 2
    assert main(["check-relation", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "dim": 4, "time_dims": 0, "degree": 2,\n  "terms": [\n'
                   '    {"indices": [2, 1], "coeff": 1}\n  ]\n}')
    capsys.readouterr()
    assert main(["check-relation", str(bad)]) == 2
    assert f"{bad}:4: field terms[0].indices" in capsys.readouterr().err


def test_conjecture_flags_su3(tmp_path, su3_file):
    report = tmp_path / "c.json"
    argv = ["conjecture", "--dim", "8", "--degree", "3", "--time", "0", "--trials", "10",
            "--form", su3_file, "--report", str(report)]
    assert main(argv) == 1
    data = json.loads(report.read_text())
    assert data["counterexample"] is True and data["candidate"]["support_rank"] == 8
    assert main(["conjecture", "--dim", "6", "--degree", "3", "--trials", "10"]) == 0
    assert main(["conjecture", "--dim", "6", "--degree", "3", "--form", su3_file]) == 2


def test_counterexample_command():
    assert main(["--quiet", "counterexample"]) == 0


@pytest.mark.slow
def test_verify_all_through_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "orthoplucker.cli", "verify-case", "all", "--trials", "50", "--seed", "7", "--quiet"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr

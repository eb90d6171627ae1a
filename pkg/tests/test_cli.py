import json

import pytest

from cartancalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology", "cp2", "--max-degree", "10")
    assert code == 0
    for n, dim in ((0, 1), (2, 1), (4, 1), (5, 0), (6, 0), (10, 0)):
        assert f"H^{n}: dim {dim}" in out


def test_json_output_is_deterministic_and_versioned(capsys):
    args = ("--format", "json", "cartan-check", "sphere3", "--trials", "3", "--seed", "7")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["schema"] == 1
    assert obj["seed"] == 7
    assert obj["ok"] is True
    assert obj["request"]["command"] == "cartan-check"


def test_input_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "cohomology", str(tmp_path / "missing.cdga"))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.cdga"
    bad.write_text("gen x:2; d x = x;")
    code, _, err = run(capsys, "cohomology", str(bad))
    assert code == 2 and "degree" in err


def test_pairing_command(capsys):
    code, out, _ = run(capsys, "pairing", "cp2", "-k", "0", "-n", "0")
    assert code == 0
    assert "full rank: True" in out


def test_der_homology_command(capsys):
    code, out, _ = run(capsys, "der-homology", "cp2", "--max-degree", "6", "--reps")
    assert code == 0
    assert "H_3: dim 1" in out and "H_5: dim 1" in out
    assert "(y -> 1)" in out


def test_loop_and_hodge_and_cyclic(capsys):
    code, out, _ = run(capsys, "loop", "sphere3", "--max-degree", "4", "--reps")
    assert code == 0 and "x_bar^2" in out
    code, out, _ = run(capsys, "hodge", "sphere3", "-k", "2", "--max-degree", "5")
    assert code == 0 and "H^4: dim 1" in out
    code, out, _ = run(capsys, "cyclic", "sphere3", "--max-degree", "4")
    assert code == 0 and "HC^0: dim 1" in out and "HC^3: dim 0" in out
    code, out, _ = run(capsys, "hochschild", "sphere3", "--max-degree", "6")
    assert code == 0 and "HH^2: dim 1" in out


def test_cyclic_check_flag(capsys):
    code, out, _ = run(
        capsys, "cyclic", "oddproj1", "--max-degree", "8", "--check", "--trials", "4"
    )
    assert code == 0
    assert "contraction homotopy checks for t1" in out


def test_reproduce_single_and_exit_codes(capsys):
    code, out, _ = run(capsys, "reproduce", "sphere3", "--trials", "6")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out
    code, _, err = run(capsys, "reproduce", "nosuchfixture")
    assert code == 2 and "unknown fixture" in err


def test_reproduce_heavy_gate(capsys):
    code, _, err = run(capsys, "reproduce", "elliptic228")
    assert code == 2 and "--heavy" in err
    code, out, _ = run(
        capsys,
        "reproduce",
        "elliptic228",
        "--heavy",
        "--max-degree",
        "30",
        "--trials",
        "4",
    )
    assert code == 0 and "PASS" in out


def test_file_input(capsys, tmp_path):
    f = tmp_path / "my.cdga"
    f.write_text("gen x:2; gen y:5; d y = x^3;\n")
    code, out, _ = run(capsys, "cohomology", str(f), "--max-degree", "6")
    assert code == 0 and "H^4: dim 1" in out


def test_identical_seeds_identical_reports(capsys):
    args = (
        "--format", "json", "cartan-check", "oddproj1",
        "--trials", "4", "--seed", "3", "--max-degree", "8",
    )
    assert run(capsys, *args) == run(capsys, *args)

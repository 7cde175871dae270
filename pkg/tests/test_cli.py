import json
import shutil
import subprocess

import pytest

from eigencubic import corpus
from eigencubic.cli import main
from eigencubic.grassmann import plane_from_tensor

from conftest import poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


def test_analyze_binary(capsys):
    code, data, _ = run_json(capsys, "analyze", "x0^3+x1^3")
    assert code == 0 and data["schemaVersion"] == 1
    assert data["delta"] == 0 and data["regular"]["degree"] == 3


def test_analyze_example_key(capsys):
    code, data, _ = run_json(capsys, "analyze", "--example", "table1:delta-1-eps0")
    cell = next(c for c in corpus.DIMENSIONS_TERNARY if c.key == "table1:delta-1-eps0")
    assert code == 0 and (data["delta"], data["epsilon"]) == (cell.delta, cell.epsilon)


def test_analyze_tensor_input(capsys):
    code, data, _ = run_json(capsys, "analyze", "x0*x1;x0*x1")
    assert code == 0 and data["n"] == 1


def test_analyze_text_output(capsys):
    code, out, _ = run(capsys, "analyze", "x0^3+x1^3+x2^3", "--text")
    assert code == 0 and "schemaVersion: 1" in out and "delta: 0" in out


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "analyze", "x0^3+*x1")
    assert code == 2 and out == "" and "parse error" in err


def test_non_cubic_is_a_precondition_error(capsys):
    code, _, _ = run(capsys, "analyze", "x0^2+x1^2")
    assert code == 3


def test_unknown_field(capsys):
    code, _, _ = run(capsys, "analyze", "x0^3", "--field", "quaternions")
    assert code == 2


def test_solve_positive_dimension_exit_code(capsys):
    code, _, err = run(capsys, "solve", "x0*(x1^2+x2^2)")
    assert code == 4 and "zero-dimensional" in err


def test_solve_real_count(capsys):
    code, data, _ = run_json(capsys, "solve", "x0*x1*x2+x3^3")
    assert code == 0 and data["realCount"] == 9
    assert sum(p["multiplicity"] for p in data["points"]) == data["degree"]


def test_solve_exact_points(capsys):
    code, data, _ = run_json(capsys, "solve", "x0^3+x1^3+x2^3")
    assert code == 0 and data["pointCount"] == 7
    assert all(p["exact"] is not None for p in data["points"])


def test_solve_gaussian_field(capsys):
    code, data, _ = run_json(capsys, "solve", "x0^2*(x1+i*x2)", "--field", "gaussian")
    assert code == 0 and data["pointCount"] == 0


def test_output_is_byte_identical_across_runs(capsys):
    first = run(capsys, "solve", "x0^3+x1^2*x2+3*x3^3", "--json", "--seed", "3")
    second = run(capsys, "solve", "x0^3+x1^2*x2+3*x3^3", "--json", "--seed", "3")
    assert first == second


@pytest.mark.parametrize("which,total", [("1", 6), ("3", 16)])
def test_tables(capsys, which, total):
    code, data, _ = run_json(capsys, "tables", which)
    assert code == 0 and data["passed"] == data["total"] == total


def test_table_two(capsys):
    code, data, _ = run_json(capsys, "tables", "2", "--timings")
    assert code == 0 and data["passed"] == data["total"] == 10
    assert all("seconds" in c for c in data["cells"])


def test_grass_plane_and_pluecker(capsys):
    code, data, _ = run_json(capsys, "grass", "plane", "x0^3+x1^3+x2^3+x3^3")
    assert code == 0 and len(data["matrix"]) == 4 and data["basis"][14] == "L^2"
    code, data, _ = run_json(capsys, "grass", "pluecker", "x0^3+x1^3+x2^3+x3^3")
    assert code == 0 and len(data["coordinates"]) == 1365


def _matrix_file(tmp_path, M):
    path = tmp_path / "plane.json"
    path.write_text(json.dumps([[str(v) for v in row] for row in M]))
    return str(path)


def test_grass_check_recover_symmetric(capsys, tmp_path):
    f = poly("x0^3+x1^2*x2+3*x3^3", 3)
    path = _matrix_file(tmp_path, plane_from_tensor(f).as_lists())
    code, data, _ = run_json(capsys, "grass", "check", "--matrix", path)
    assert code == 0 and data["lambdaBlockNonsingular"]
    code, data, _ = run_json(capsys, "grass", "recover", "--matrix", path)
    assert code == 0 and data["quadrics"][0] == "3*x0^2"
    code, data, _ = run_json(capsys, "grass", "symmetric", "--matrix", path)
    assert code == 0 and data["symmetric"] and data["cubic"] == str(f)


def test_grass_check_failure(capsys, tmp_path):
    M = plane_from_tensor(poly("x0^3+x1^3+x2^3+x3^3", 3)).as_lists()
    M[1][14] = 1
    path = _matrix_file(tmp_path, M)
    code, data, _ = run_json(capsys, "grass", "check", "--matrix", path)
    assert code == 3 and not data["lambdaSquaredColumnZero"]
    code, _, _ = run(capsys, "grass", "recover", "--matrix", path)
    assert code == 3


def test_grass_binary_hurwitz(capsys):
    code, data, _ = run_json(capsys, "grass", "binary-hurwitz")
    assert code == 0 and data["termCount"] == 17
    assert data["rawRatio"] == "-3" and data["normalizedRatio"] == "1"
    assert data["computedTermsMissing"] == ["-108*a0*a2*a3^2", "-156*a1*a2^2*a3"]


def test_fit(capsys, tmp_path):
    path = tmp_path / "points.txt"
    path.write_text("".join(",".join(map(str, p)) + "\n" for p in corpus.FERMAT_TERNARY_POINTS))
    code, data, _ = run_json(capsys, "fit", str(path))
    assert code == 0 and (data["rank"], data["nullity"]) == (9, 1)
    assert data["cubics"] == ["x0^3 + x1^3 + x2^3"]


def test_fit_bad_points(capsys, tmp_path):
    path = tmp_path / "points.txt"
    path.write_text("1,0,0\n1,2\n")
    assert run(capsys, "fit", str(path))[0] == 3
    path.write_text("1,a,0\n")
    assert run(capsys, "fit", str(path))[0] == 2


@pytest.mark.skipif(shutil.which("eigencubic") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["eigencubic", "analyze", "x0^3+x1^3", "--json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["schemaVersion"] == 1

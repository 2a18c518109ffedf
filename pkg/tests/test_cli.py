import json

import pytest

from khbounds.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, InputError, load_knot, main
from khbounds.fixtures import named_knot, names


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kh_text(capsys):
    code, out, _ = run(capsys, "kh", "--knot", "corpus:3_1")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "Kh(3_1; Q)  width 2  thin"


def test_kh_csv_mirror(capsys):
    code, out, _ = run(capsys, "kh", "--knot", "corpus:m3_1", "--format", "csv")
    assert code == EXIT_OK
    assert out == "i,j,rank\n-3,-9,1\n-2,-5,1\n0,-3,1\n0,-1,1\n"


def test_kh_json_routes_agree(capsys):
    _, a, _ = run(capsys, "kh", "--knot", "corpus:5_2", "--format", "json", "--ring", "F2")
    _, b, _ = run(capsys, "kh", "--knot", "corpus:5_2", "--format", "json", "--ring", "F2",
                  "--route", "cube")
    assert a == b
    assert json.loads(a)["ring"] == "F2"


def test_bounds_json_and_jobs_deterministic(capsys):
    _, a, _ = run(capsys, "bounds", "--knot", "corpus:8_19", "--format", "json")
    _, b, _ = run(capsys, "bounds", "--knot", "corpus:8_19", "--format", "json", "--jobs", "2")
    assert a == b
    doc = json.loads(a)
    assert doc["bounds"]["alt_lb"] == 1
    assert doc["pg"] == {"Lee/Q": 2, "BN/F2": 3}


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--knot", "corpus:8_19", "--rings", "Q",
                       "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "bound,value,rule"
    assert "unknotting_lb,1,u_X(Q) - 1" in lines


def test_pages_and_s(capsys):
    code, out, _ = run(capsys, "pages", "--knot", "corpus:8_19", "--ring", "F2")
    assert code == EXIT_OK and out.rstrip().endswith("collapse page 3")
    code, out, _ = run(capsys, "s", "--knot", "torus:3,4")
    assert (code, out.strip()) == (EXIT_OK, "6")


def test_frobenius_check(capsys):
    code, out, _ = run(capsys, "frobenius-check", "--n", "2..4")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "frobenius-check", "--n", "2..3", "--corrupt")
    assert code == EXIT_FAIL


@pytest.mark.parametrize("argv", [
    ["kh", "--knot", "pd:PD[X(1,2,3,4)]"],
    ["kh", "--knot", "pd:PD[X(1,4,2,5"],
    ["kh", "--knot", "corpus:99_1"],
    ["kh", "--knot", "torus:4,6"],
    ["kh", "--knot", "kmn:0,1"],
    ["kh", "--knot", "bogus:1"],
    ["kh", "--knot", "corpus:3_1", "--ring", "R"],
    ["s", "--knot", "pd:PD[X(4,1,3,2),X(2,3,1,4)]"],
    ["kh", "--knot", "named:mm"],
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_resource_cap(capsys):
    code, _, err = run(capsys, "kh", "--knot", "torus:3,4", "--max-objects", "3")
    assert code == EXIT_CAP
    assert "resource cap" in err


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "kh", "--knot", "corpus:4_1", "--progress", "--format", "csv")
    assert code == EXIT_OK
    assert "[scan]" in err and "[scan]" not in out


def test_knot_sources():
    assert load_knot("kmn:1,1").crossings == named_knot("kmn11").crossings
    assert load_knot("torus:2,3").c == 3
    assert load_knot("named:figure8").c == 4
    assert "trefoil" in names()
    with pytest.raises(InputError):
        load_knot("torus:2")

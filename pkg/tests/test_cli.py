import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hamdisc.cli import main
from hamdisc.hamming import Code, write_code


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.txt"
    write_code(Code.from_words(["000", "111"]), path)
    return path


def test_construct_random_is_seeded(capsys):
    c1, a, _ = run(capsys, "construct", "random", "--n", "10", "--size", "32", "--seed", "1")
    c2, b, _ = run(capsys, "construct", "random", "--n", "10", "--size", "32", "--seed", "1", "--threads", "4")
    assert c1 == c2 == 0 and a == b
    assert a.splitlines()[0] == "n=10" and len(a.splitlines()) == 33


def test_construct_hamming(capsys, tmp_path):
    out = tmp_path / "h.txt"
    code, _, _ = run(capsys, "construct", "hamming", "--n", "7", "--out", str(out))
    assert code == 0 and len(out.read_text().splitlines()) == 17
    code, text, _ = run(capsys, "construct", "hamming-complement", "--n", "3")
    assert sorted(text.split()[1:]) == ["001", "010", "011", "100", "101", "110"]


@pytest.mark.parametrize(
    "argv, status",
    [
        (["construct", "random", "--n", "5", "--size", "4"], 1),  # missing seed
        (["construct", "random", "--n", "3", "--size", "9", "--seed", "1"], 2),
        (["construct", "jittered", "--n", "5", "--size", "3", "--seed", "1"], 2),
        (["construct", "antipodal", "--n", "4", "--size", "1", "--seed", "1"], 2),
        (["construct", "hamming", "--n", "6"], 2),
        (["search", "exhaustive", "--n", "6", "--size", "10", "--objective", "lp:uniform:2", "--budget", "5"], 2),
        (["search", "local", "--n", "3", "--size", "2", "--objective", "hemisphere:2"], 1),
        (["search", "exhaustive", "--n", "3", "--size", "2", "--objective", "cube:2"], 1),
        (["bounds", "eval"], 1),
        (["bounds", "eval", "--which", "jittered", "--N", "16"], 1),
        (["kernels", "expansion", "--n", "4"], 2),
    ],
)
def test_exit_codes(capsys, argv, status):
    code, _, err = run(capsys, *argv)
    assert code == status
    assert err


def test_argparse_errors_exit_with_usage_status(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "sobol", "--n", "3"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_missing_code_file_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "discrepancy", "lp", "--code", str(tmp_path / "none.txt"))
    assert code == 1 and err


def test_discrepancy_lp_json(capsys, pair_file):
    code, out, _ = run(capsys, "discrepancy", "lp", "--code", str(pair_file), "--p", "2")
    rec = json.loads(out)
    assert code == 0
    assert Fraction(int(rec["exact_numerator"]), int(rec["exact_denominator"])) == Fraction(1, 8)
    assert rec["value"] == pytest.approx(0.125**0.5)
    assert rec["identity_residual"] is None


def test_discrepancy_linf_and_hemisphere(capsys, pair_file):
    _, out, _ = run(capsys, "discrepancy", "linf", "--code", str(pair_file), "--radii", "0-2")
    assert json.loads(out)["value"] == 0.75
    _, out, _ = run(capsys, "discrepancy", "hemisphere", "--code", str(pair_file), "--p", "inf")
    assert json.loads(out)["value"] == 0


def test_discrepancy_stolarsky(capsys, pair_file):
    _, out, _ = run(capsys, "discrepancy", "stolarsky", "uniform", "--code", str(pair_file))
    rec = json.loads(out)
    assert rec["lhs"] == rec["rhs"] == "3/1" and rec["identity_residual"] == "0/1"
    _, out, _ = run(capsys, "discrepancy", "stolarsky", "hemisphere", "--code", str(pair_file))
    assert json.loads(out)["identity_residual"] == "0/1"
    code, _, _ = run(capsys, "discrepancy", "stolarsky", "--code", str(pair_file))
    assert code == 1


def test_discrepancy_spectrum_csv(capsys, pair_file):
    _, out, _ = run(capsys, "discrepancy", "spectrum", "--code", str(pair_file), "--format", "csv")
    assert out.splitlines() == ["w,distance,dual", "0,1/1,1/1", "1,0/1,0/1", "2,0/1,3/1", "3,1/1,0/1"]


def test_kernels(capsys):
    _, out, _ = run(capsys, "kernels", "krawtchouk", "--n", "3", "--k", "1")
    assert json.loads(out)["rows"] == [[0, 3], [1, 1], [2, -1], [3, -3]]
    _, out, _ = run(capsys, "kernels", "expansion", "--n", "3", "--format", "csv")
    assert out.splitlines()[1:] == ["0,2/1", "1,1/2", "2,0/1", "3,1/2"]
    _, out, _ = run(capsys, "kernels", "distance", "--n", "3")
    assert [r[1] for r in json.loads(out)["rows"]] == [0, 4, 4, 6]


def test_bounds_eval_and_compare(capsys, tmp_path):
    _, out, _ = run(capsys, "bounds", "eval", "--which", "random", "--p", "2", "--N", "16")
    assert json.loads(out)["value"] == pytest.approx(13.856406460551018)
    _, out, _ = run(capsys, "bounds", "eval", "--which", "random", "--N", "600", "--n", "10")
    assert json.loads(out)["applicable"] is False
    path = tmp_path / "z.txt"
    run(capsys, "construct", "random", "--n", "8", "--size", "16", "--seed", "3", "--out", str(path))
    code, out, _ = run(capsys, "bounds", "compare", "--code", str(path), "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("quantity,measured,bound")
    assert all(line.endswith("True") for line in lines[1:])


def test_search_json(capsys):
    code, out, _ = run(capsys, "search", "exhaustive", "--n", "3", "--size", "6", "--objective", "lp:uniform:2")
    rec = json.loads(out)
    assert code == 0 and rec["minimizer_count"] == 4 and rec["method"] == "exhaustive"
    assert ["001", "010", "011", "100", "101", "110"] in [sorted(m) for m in rec["minimizers"]]
    code, out, _ = run(
        capsys, "search", "local", "--n", "5", "--size", "4", "--objective", "hemisphere:2", "--seed", "2"
    )
    rec = json.loads(out)
    assert rec["upper_bound_only"] and rec["minimum"] == "0/1"


def test_experiment_byte_identical_across_threads(capsys, tmp_path):
    args = ["experiment", "--construction", "random", "--n", "8", "--size", "16", "--trials", "10", "--seed", "7"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--threads", "3")
    assert a == b
    rec = json.loads(a)
    assert len(rec["values"]) == 10 and rec["spec"]["seed"] == 7
    _, c, _ = run(capsys, *args, "--format", "csv")
    assert c.splitlines()[0] == "trial,value,power" and len(c.splitlines()) == 11


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick")
    rec = json.loads(out)
    assert code == 0 and rec["passed"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    import hamdisc.discrepancy as disc

    real = disc.distance_kernel
    monkeypatch.setattr(disc, "distance_kernel", lambda n, w: real(n, w) + 1)
    code, out, _ = run(capsys, "verify")
    assert code == 3 and json.loads(out)["passed"] is False


def test_module_entry_point(pair_file):
    proc = subprocess.run(
        [sys.executable, "-m", "hamdisc", "discrepancy", "hemisphere", "--code", str(pair_file)],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 0.0

import random
import subprocess
import sys

import pytest

from roughmat.approx import sixth_matrix
from roughmat.boolmat import BoolMatrix
from roughmat.cli import ParseError, format_family, format_matrix, main, parse_family, parse_matrix
from roughmat.covering import SetFamily, Universe

from conftest import PRINTED_B, PRINTED_PI, counterexample_matrix, example_covering

EXAMPLE_COV = "a b c d e f\na b\na c d\na b c d\nd e f\n"
FAMILY_NOT_COVERING = "a b c d e\na b c\nb d\nc d\n"
NAMES = "a,b,c,d,e,f"

GOLDEN = {
    ("characteristic", "cov", "--which", "pi"): (0, format_matrix(PRINTED_PI)),
    ("approx", "cov", "--op", "ih", "--set", "a"): (0, "a,b,c\n"),
    ("approx", "cov", "--op", "sl", "--set", "d,e,f"): (0, "e,f\n"),
    ("approx", "cov", "--op", "xh", "--set", ""): (0, "\n"),
    ("decompose", "b"): (0, "5 2\n1 0\n1 0\n0 1\n1 1\n0 0\nx1 x2 x4\nx3 x4\n"),
    ("check", "pi", "--axiom", "fifth", "--names", NAMES): (
        0,
        "ACCEPT\na b c d e f\na b c\nb\nc d e f\nc\ne f\n",
    ),
    ("check", "pi", "--axiom", "second", "--names", NAMES): (1, "REJECT not symmetric at (a,b)\n"),
    ("check", "xh", "--axiom", "sixth", "--names", NAMES): (
        0,
        "ACCEPT\n6 6\n1 1 1 0 0 0\n0 1 0 0 0 0\n0 0 1 0 0 0\n0 0 1 1 0 1\n0 0 0 0 1 1\n0 0 0 0 0 1\n"
        "a b c d e f\na b\na c d\na\nd e f\nd\ne\n",
    ),
    ("reduct", "cov"): (0, "a b c d e f\na b\na c d\nd e f\n"),
    ("reduct", "cov", "--kind", "gir"): (0, "a b c d e f\na b c d\nd e f\n"),
}


@pytest.fixture
def files(tmp_path):
    paths = {
        "cov": EXAMPLE_COV,
        "fam": FAMILY_NOT_COVERING,
        "b": format_matrix(PRINTED_B),
        "pi": format_matrix(PRINTED_PI),
        "xh": format_matrix(sixth_matrix(example_covering())),
        "ce": format_matrix(counterexample_matrix()),
        "swap": "2 2\n0 1\n1 0\n",
    }
    out = {}
    for key, text in paths.items():
        p = tmp_path / f"{key}.txt"
        p.write_text(text)
        out[key] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("argv", list(GOLDEN), ids=lambda a: "-".join(x for x in a if x) or "empty")
def test_golden(capsys, files, argv):
    code, expected = GOLDEN[argv]
    args = [files.get(a, a) if i == 1 else a for i, a in enumerate(argv)]
    got = run(capsys, *args)
    assert got[:2] == (code, expected)


def test_gamma_singleton_partition(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("a b\na\nb\n")
    assert run(capsys, "characteristic", str(p), "--which", "gamma")[:2] == (0, "2 2\n1 0\n0 1\n")


def test_uncovered_family_exit_1(capsys, files):
    code, out, err = run(capsys, "characteristic", files["fam"], "--which", "gamma")
    assert code == 1 and out == "" and "'e'" in err


def test_empty_block_exit_1(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("a b\na b\n-\n")
    code, _, err = run(capsys, "reduct", str(p))
    assert code == 1 and "block 1" in err


def test_counterexample_modes(capsys, files):
    code, out, _ = run(capsys, "decompose", files["ce"], "--mode", "exact")
    assert code == 0 and out.splitlines()[0] == "6 3"
    assert out.splitlines()[7:] == ["x1 x2 x3", "x1 x5 x6", "x3 x4 x5"]
    code, out, _ = run(capsys, "decompose", files["ce"], "--mode", "paper")
    assert code == 0 and out.splitlines()[0] == "6 4"
    code, out, _ = run(capsys, "decompose", files["ce"], "--mode", "greedy")
    assert code == 0 and out.splitlines()[0] == "6 3"


def test_decompose_infeasible(capsys, files):
    code, out, err = run(capsys, "decompose", files["swap"])
    assert code == 1 and out == ""
    assert "B_12=1 but B_11=0" in err


def test_decompose_asymmetric(capsys, files):
    code, _, err = run(capsys, "decompose", files["pi"])
    assert code == 1 and "not symmetric at (1,2)" in err


def test_decompose_non_square(capsys, tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("1 2\n1 0\n")
    assert run(capsys, "decompose", str(p))[0] == 2


def test_exact_bound_env(capsys, files, monkeypatch):
    monkeypatch.setenv("RM_EXACT_BOUND", "4")
    code, out, err = run(capsys, "decompose", files["b"], "--mode", "exact")
    assert code == 1 and out == "" and "paper" in err


def test_sixth_over_bound(capsys, tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(format_matrix(BoolMatrix.identity(7)))
    code, _, err = run(capsys, "check", str(p), "--axiom", "sixth")
    assert code == 1 and "n <= 6" in err


def test_check_default_names(capsys, files):
    code, out, _ = run(capsys, "check", files["pi"], "--axiom", "second")
    assert code == 1 and out == "REJECT not symmetric at (x1,x2)\n"


def test_check_bad_names(capsys, files):
    assert run(capsys, "check", files["pi"], "--axiom", "fifth", "--names", "a,b")[0] == 2
    assert run(capsys, "check", files["pi"], "--axiom", "fifth", "--names", "a,a,b,c,d,e")[0] == 2


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("", 1, 1),
        ("2 2\n1 0\n0 x\n", 3, 3),
        ("# comment\n2 2\n1 0\n", 4, 1),
        ("2 2\n1 0 1\n0 1\n", 2, 5),
        ("2 z\n", 1, 3),
        ("1 1\n1\n1\n", 3, 1),
    ],
)
def test_matrix_parse_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_matrix(text)
    assert (exc.value.line, exc.value.col) == (line, col)


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("a b a\nb\n", 1, 5),
        ("a b\na q\n", 2, 3),
        ("a b\n", 2, 1),
    ],
)
def test_family_parse_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_family(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_parse_error_exit_2(capsys, tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("2 2\n1 0\n0 7\n")
    code, out, err = run(capsys, "decompose", str(p))
    assert code == 2 and out == "" and "line 3, column 3" in err


def test_usage_errors(capsys, files):
    assert run(capsys)[0] == 2
    assert run(capsys, "approx", files["cov"], "--op", "zz", "--set", "a")[0] == 2
    assert run(capsys, "approx", files["cov"], "--op", "sh", "--set", "a,q")[0] == 2
    assert run(capsys, "characteristic", "/no/such/file", "--which", "pi")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_approx_invalid_covering(capsys, files):
    assert run(capsys, "approx", files["fam"], "--op", "sh", "--set", "a")[0] == 1


def test_comments_and_blank_lines(capsys, tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("# worked example\n\na b c d e f\n# blocks\na b\n\na c d\na b c d\nd e f\n")
    assert run(capsys, "characteristic", str(p), "--which", "pi")[1] == format_matrix(PRINTED_PI)


def test_stdin_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "roughmat", "approx", "-", "--op", "xl", "--set", "a,b"],
        input=EXAMPLE_COV, capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "b\n"


def test_subprocess_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "roughmat", "decompose", "-"], input="2 2\n0 1\n1 0\n",
        capture_output=True, text=True,
    )
    assert proc.returncode == 1 and "no decomposition exists" in proc.stderr


def random_matrix_text(rng):
    r, c = rng.randint(1, 8), rng.randint(1, 8)
    return format_matrix(BoolMatrix.from_rows([[rng.randint(0, 1) for _ in range(c)] for _ in range(r)]))


def random_family_text(rng):
    n = rng.randint(1, 7)
    u = Universe.of([f"e{i}" for i in range(n)])
    blocks = tuple(rng.randint(0, u.full) for _ in range(rng.randint(1, 5)))
    return format_family(SetFamily(u, blocks))


def test_round_trip_random_files():
    rng = random.Random(83)
    for _ in range(100):
        text = random_matrix_text(rng)
        assert format_matrix(parse_matrix(text)) == text
        m = parse_matrix(text)
        assert parse_matrix(format_matrix(m)) == m
        text = random_family_text(rng)
        assert format_family(parse_family(text)) == text
        f = parse_family(text)
        assert parse_family(format_family(f)) == f


def test_output_deterministic(capsys, files):
    first = run(capsys, "decompose", files["ce"], "--mode", "exact")
    assert all(run(capsys, "decompose", files["ce"], "--mode", "exact") == first for _ in range(3))

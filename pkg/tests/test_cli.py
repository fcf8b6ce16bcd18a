import subprocess
import sys

import pytest

from deltahom import cli, corpus
from deltahom import moves as mv
from deltahom.diagram import parse

CASES = [(name, x) for name in corpus.names() for x in corpus.entry(name).expected]


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "deltahom", *args], capture_output=True, text=True, input=stdin, timeout=900
    )


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    for name in corpus.names():
        (root / f"{name}.sgd").write_text(corpus.data_text(name))
    return root


@pytest.mark.parametrize("name,expect", CASES, ids=[f"{n}:{' '.join(x.args)}" for n, x in CASES])
def test_corpus_expectation(data_dir, name, expect):
    p = run(expect.args[0], str(data_dir / f"{name}.sgd"), *expect.args[1:])
    if expect.output.startswith("deltahom: "):
        assert p.returncode == cli.EXIT_PRECONDITION
        assert p.stderr.splitlines()[0] == expect.output
    else:
        assert p.returncode == 0, p.stderr
        assert p.stdout.splitlines()[0] == expect.output


@pytest.mark.parametrize("name", corpus.names())
def test_checked_in_files_match_emitter(name):
    assert corpus.data_text(name) == corpus.emit(name)
    assert parse(corpus.data_text(name)) == corpus.load(name)


def test_emit_round_trips_through_the_cli(tmp_path):
    out = tmp_path / "t.sgd"
    assert run("corpus", "emit", "slice2-m4", "-o", str(out)).returncode == 0
    assert out.read_text() == corpus.emit("slice2-m4")
    p = run("n12", str(out))
    assert p.stdout.splitlines()[0] == "n12 = 8 (mod 0)"


def test_corpus_list():
    p = run("corpus", "list")
    assert [ln.split(":")[0] for ln in p.stdout.splitlines()] == corpus.names()


@pytest.mark.parametrize(
    "args,code",
    [
        ((), 1),
        (("frobnicate",), 1),
        (("inv", "{hopf}"), 1),
        (("corpus", "emit", "no-such-entry"), 1),
        (("selftest", "--suite", "nope"), 1),
        (("validate", "{missing}"), 2),
        (("validate", "{bad}"), 2),
        (("n12", "{hopf}"), 2),
        (("n123", "{linked}"), 3),
        (("n123", "{borromean}"), 3),
        (("inv", "{hopf}", "--a2"), 3),
        (("move", "{hopf}", "--kind", "R1+", "--site", "999"), 3),
    ],
)
def test_exit_codes(data_dir, tmp_path, args, code):
    (tmp_path / "bad.sgd").write_text("X 1 2 3\n")
    paths = {
        "hopf": data_dir / "hopf.sgd",
        "linked": data_dir / "handcuff3-linked.sgd",
        "borromean": data_dir / "handcuff3-borromean.sgd",
        "missing": tmp_path / "nope.sgd",
        "bad": tmp_path / "bad.sgd",
    }
    p = run(*(a.format(**paths) for a in args))
    assert p.returncode == code, p.stderr
    if code:
        assert p.stderr.strip()


def test_parse_error_reports_position(tmp_path):
    (tmp_path / "bad.sgd").write_text("X 1 2 3 4\nX 1 a 4 3\n")
    p = run("validate", str(tmp_path / "bad.sgd"))
    assert "line 2, column 5" in p.stderr


def test_stdin_input(data_dir):
    p = run("inv", "-", "--jones", stdin=(data_dir / "trefoil.sgd").read_text())
    assert p.stdout == "t + t^3 - t^4\n"


def test_multiple_invariants_are_named(data_dir):
    p = run("inv", str(data_dir / "trefoil.sgd"), "--a2", "--v3")
    assert p.stdout == "a2 = 1\nv3 = -1/2\n"


def test_output_is_byte_stable(data_dir, tmp_path):
    src = str(data_dir / "slice3-m1.sgd")
    outputs = []
    for i in range(2):
        walk = tmp_path / f"w{i}.sgd"
        moved = tmp_path / f"m{i}.sgd"
        summed = tmp_path / f"s{i}.sgd"
        run("walk", src, "--allowed", "reidemeister,delta", "--self-only", "--steps", "6", "--seed", "9", "-o", str(walk))
        run("move", str(walk), "--kind", "R2+", "--site", "0", "-o", str(moved))
        run("disksum", str(moved), "--twist", "2:1", "-o", str(summed))
        report = run("n123", str(moved)).stdout
        outputs.append((walk.read_bytes(), moved.read_bytes(), summed.read_bytes(), report))
    assert outputs[0] == outputs[1]
    assert outputs[0][0].startswith(b"# 6 moves applied, seed 9\n")
    assert outputs[0][3].splitlines()[0] == "n123 = 1 (mod 0)"


def test_list_sites(data_dir):
    p = run("move", str(data_dir / "kink.sgd"), "--kind", "R1-", "--list-sites")
    assert p.returncode == 0
    assert p.stdout.startswith("0 R1-")


def test_selftest_is_deterministic():
    args = ("selftest", "--seed", "3", "--iters", "2", "--suite", "delta_a2", "--suite", "euler")
    first, second = run(*args), run(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.splitlines()[-1] == "all suites passed (seed 3, iters 2)"


def test_selftest_catches_a_mirrored_delta_tangle(monkeypatch, capsys):
    monkeypatch.setattr(mv, "DELTA_TANGLE", mv.DELTA_TANGLE.mirrored())
    code = cli.main(["selftest", "--seed", "0", "--iters", "20", "--suite", "delta_v3"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_PROPERTY
    assert out.startswith("FAIL lemma-delta-jones3")


def test_jobs_environment(monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV, "3")
    assert cli.build_parser().parse_args(["corpus", "list"]).jobs == 3
    monkeypatch.setenv(cli.JOBS_ENV, "x")
    assert cli.build_parser().parse_args(["corpus", "list"]).jobs == 1

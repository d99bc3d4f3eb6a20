import numpy as np
import pytest

from wedmatch.cli import main, parse_sizes, UsageError
from wedmatch.core_text import SCALE, parse_cost
from wedmatch.generators import random_string


def _write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data, encoding="utf-8")
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def files(tmp_path):
    return {
        "P": _write(tmp_path, "p.txt", "ab\n"),
        "T": _write(tmp_path, "t.txt", "abab\n"),
        "W": _write(tmp_path, "w.tsv", "a\tb\t2\nEPS\tb\t0.5\n"),
    }


def test_match_example(capsys, files):
    code, out, _ = _run(capsys, ["match", "--pattern", files["P"], "--text", files["T"], "-k", "0"])
    assert code == 0 and out == "0\n2\n"


def test_match_full_and_list(capsys, files):
    _, out, _ = _run(capsys, ["match", "--pattern", files["P"], "--text", files["T"], "--report", "full"])
    assert out == "0\t2\t0\n2\t4\t0\n"
    _, out, _ = _run(capsys, ["list", "--pattern", files["P"], "--text", files["T"]])
    assert out == "0\t2\t0\n2\t4\t0\n"


def test_verify_example(capsys, files):
    _, out, _ = _run(capsys, ["verify", "--pattern", files["P"], "--text", files["T"], "--interval", "0:3"])
    assert out == "0\t0\n2\t0\n"


def test_exit_codes(capsys, tmp_path, files):
    base = ["match", "--pattern", files["P"], "--text", files["T"]]
    assert main(base + ["-k", "abc"]) == 1
    assert main(base + ["-k", "-1"]) == 1
    assert main(["verify", "--pattern", files["P"], "--text", files["T"], "--interval", "3:1"]) == 1
    with pytest.raises(SystemExit) as e:
        main(["match", "--algo", "nope"])
    assert e.value.code == 1
    bad = _write(tmp_path, "bad.tsv", "a\tb\t0.5\n")
    assert main(base + ["--weights", bad]) == 2
    junk = _write(tmp_path, "junk.tsv", "a b 1\n")
    assert main(base + ["--weights", junk]) == 2
    assert main(["match", "--pattern", str(tmp_path / "missing"), "--text", files["T"]]) == 3
    capsys.readouterr()


def test_algos_agree(capsys, tmp_path, rng):
    W = _write(tmp_path, "w.tsv", "a\tb\t2\nEPS\tc\t1.25\nb\tEPS\t3\nc\ta\t1.5\n")
    for t in range(12):
        m = int(rng.integers(1, 40))
        P = _write(tmp_path, f"p{t}", random_string(rng, m, "abc") + "\n")
        T = _write(tmp_path, f"t{t}", random_string(rng, int(rng.integers(0, 200)), "abc") + "\n")
        k = str(int(rng.integers(0, 6)) + [0, 0.5, 0.25][t % 3])
        for report in ("starts", "full"):
            outs = set()
            for algo in ("sellers", "banded", "nk"):
                for threads in ("1", "3"):
                    code, out, _ = _run(capsys, ["match", "--pattern", P, "--text", T, "-k", k,
                                                 "--weights", W, "--algo", algo, "--report", report,
                                                 "--threads", threads])
                    assert code == 0
                    outs.add(out)
            assert len(outs) == 1
        full = outs.pop()
        for line in full.splitlines():
            i, j, d = line.split("\t")
            assert parse_cost(d) <= parse_cost(k)
        lo = int(rng.integers(0, 50))
        _, vout, _ = _run(capsys, ["verify", "--pattern", P, "--text", T, "-k", k, "--weights", W,
                                   "--interval", f"{lo}:{lo + 60}"])
        want = [f"{i}\t{d}" for i, _, d in (l.split("\t") for l in full.splitlines())
                if lo <= int(i) <= lo + 60]
        assert vout.splitlines() == want


def test_bench(capsys):
    code, out, _ = _run(capsys, ["bench", "--sizes", "300,40,2;200,30,1.5", "--repeats", "2"])
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "algo,n,m,k,seed,wall_ms,occ_count"
    body = [r.split(",") for r in rows[1:]]
    assert len(body) == 3 * 2 * 2
    for size in ("300", "200"):
        counts = {r[6] for r in body if r[1] == size}
        assert len(counts) == 1
    assert main(["bench", "--sizes", "10,20,1"]) == 1
    assert main(["bench", "--sizes", "10,5,1", "--algos", "x"]) == 1
    with pytest.raises(UsageError):
        parse_sizes(["1,2"])


def test_gen(capsys, tmp_path):
    a = [str(tmp_path / "p1"), str(tmp_path / "t1")]
    b = [str(tmp_path / "p2"), str(tmp_path / "t2")]
    for p, t in (a, b):
        assert main(["gen", "--pattern", p, "--text", t, "--length", "500", "--seed", "7",
                     "--pattern-length", "50"]) == 0
    assert open(a[0]).read() == open(b[0]).read() and open(a[1]).read() == open(b[1]).read()
    assert len(open(a[1]).read()) == 501
    assert main(["gen", "--pattern", a[0], "--text", a[1], "--length", "400", "--seed", "3",
                 "--mutation-rate", "0"]) == 0
    code, out, _ = _run(capsys, ["match", "--pattern", a[0], "--text", a[1], "-k", "0"])
    assert code == 0 and out.strip()
    assert main(["gen", "--pattern", a[0], "--text", a[1], "--length", "0"]) == 1

from pathlib import Path

import pytest

from eostrata.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_rows(capsys):
    code, out, _ = run(capsys, "enumerate", "--g", "1", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 1 + 2
    code, out, _ = run(capsys, "enumerate", "--g", "2", "--format", "csv")
    dims = [line.split(",")[-6] for line in out.splitlines()[1:]]
    assert code == 0 and len(dims) == 4


def test_enumerate_dims_g2(capsys):
    from eostrata.formats import parse_table
    _, out, _ = run(capsys, "enumerate", "--g", "2", "--format", "structured")
    assert [r.dim for r in parse_table(out.encode())] == [0, 1, 2, 3]


def test_enumerate_bad_g(capsys):
    code, _, err = run(capsys, "enumerate", "--g", "0")
    assert code == 2 and "--g" in err
    code, _, _ = run(capsys, "enumerate", "--g", "9")
    assert code == 2


def test_enumerate_out_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "enumerate", "--g", "3", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 9


def test_stratum(capsys):
    code, out, _ = run(capsys, "stratum", "--phi", "0,1,1")
    fields = dict(line.split(None, 1) for line in out.splitlines())
    assert code == 0 and (fields["dim"], fields["a"], fields["f"]) == ("2", "2", "0")
    code, out, _ = run(capsys, "stratum", "--phi", "1,2,3")
    fields = dict(line.split(None, 1) for line in out.splitlines())
    assert (fields["dim"], fields["w_min"]) == ("6", "-3,-2,-1")


def test_stratum_constraint_error(capsys):
    code, _, err = run(capsys, "stratum", "--phi", "0,2")
    assert code == 2 and "phi(2)=2 exceeds phi(1)+1" in err
    code, _, err = run(capsys, "stratum", "--phi", "a,b")
    assert code == 2


def test_poset(capsys, tmp_path):
    dot = tmp_path / "p.dot"
    code, out, _ = run(capsys, "poset", "--g", "2", "--order", "pointwise", "--dot", str(dot))
    assert code == 0 and "4 nodes, 3 edges" in out and "agree" in out
    assert dot.read_text().count("->") == 3
    code, out, _ = run(capsys, "poset", "--g", "1")
    assert "2 nodes, 1 edges" in out
    code, out, _ = run(capsys, "poset", "--g", "4", "--order", "bruhat")
    assert code == 0 and "16 nodes" in out
    code, _, _ = run(capsys, "poset", "--g", "5", "--order", "bruhat")
    assert code == 2


def test_classify_ordinary(capsys):
    code, out, _ = run(capsys, "classify", "--module", str(FIXTURES / "ordinary_g1.json"))
    assert code == 0
    assert "phi              1" in out and "dim              1" in out


def test_classify_corrupted(capsys):
    code, out, _ = run(capsys, "classify", "--module", str(FIXTURES / "corrupted_g1.json"))
    assert code == 1 and "F∘V" in out and "witness" in out


def test_classify_unpolarized(capsys):
    code, out, _ = run(capsys, "classify", "--module", str(FIXTURES / "unpolarized_n3.json"))
    assert code == 0 and "psi" in out and "phi" not in out


def test_classify_parse_failures(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", "--module", str(FIXTURES / "bad_shape.json"))
    assert code == 2
    code, _, _ = run(capsys, "classify", "--module", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--max-g", "1", "--primes", "2")
    assert code == 0 and "ALL PASS" in out


def test_verify_weyl(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "weyl", "--max-g", "4")
    assert code == 0 and "PASS weyl" in out


def test_verify_census(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "census", "--primes", "3", "--max-g", "2")
    assert code == 0 and "F_3 g=1" in out


def test_verify_bad_primes(capsys):
    code, _, _ = run(capsys, "verify", "--primes", "4")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("enumerate", "--g", "4", "--format", "csv"),
    ("enumerate", "--g", "3"),
])
def test_enumerate_deterministic_across_jobs(capsys, argv):
    outs = {run(capsys, *argv, "--jobs", str(j))[1] for j in (1, 1, 2)}
    assert len(outs) == 1


def test_poset_deterministic_across_jobs(capsys, tmp_path):
    data = []
    for j in (1, 2):
        dot = tmp_path / f"p{j}.dot"
        out = run(capsys, "poset", "--g", "4", "--dot", str(dot), "--jobs", str(j))[1]
        data.append((out, dot.read_bytes()))
    assert data[0] == data[1]

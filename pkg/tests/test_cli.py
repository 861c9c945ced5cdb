import subprocess
import sys

import pytest

from acbasis.adversary import format_certificate, load_certificate, parse_certificate
from acbasis.circuit import load_circuit, truth_table, validate
from acbasis.cli import main
from acbasis.cube import parity_table


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


def synth_file(run, tmp_path, func, n, *extra):
    path = tmp_path / f"{func}{n}.acc"
    code, _, _ = run("synth", "--func", func, "--n", n, *extra, "-o", path)
    assert code == 0
    return path


@pytest.mark.parametrize("argv,expect", [
    (["--func", "parity", "--n", 7], "gates: 4"),
    (["--func", "majority", "--n", 1], "gates: 1"),
    (["--func", "symmetric", "--n", 5, "--layers", "2,5"], "gates: 2"),
])
def test_synth_examples(run, argv, expect):
    code, out, _ = run("synth", *argv)
    assert code == 0 and out.strip() == expect


def test_synth_file_round_trip(run, tmp_path):
    for n in (1, 6, 14):
        path = synth_file(run, tmp_path, "parity", n)
        c = load_circuit(path)
        assert validate(c) == [] and truth_table(c).tolist() == parity_table(n).tolist()


def test_symmetric_file_is_valid(run, tmp_path):
    c = load_circuit(synth_file(run, tmp_path, "symmetric", 5, "--layers", "2,5"))
    assert validate(c) == []
    assert truth_table(c).tolist() == [int(bin(r).count("1") in (2, 5)) for r in range(32)]


@pytest.mark.parametrize("argv", [
    ["synth", "--func", "parity", "--n", 0],
    ["synth", "--func", "parity", "--n", 21],
    ["synth", "--func", "symmetric", "--n", 4],
    ["synth", "--func", "symmetric", "--n", 4, "--layers", "1,9"],
    ["synth", "--func", "symmetric", "--n", 4, "--layers", "a"],
    ["bounds", "--n-range", "0..3"],
    ["bounds", "--n-range", "5..3"],
    ["bounds", "--n-range", "1..65"],
    ["search", "--func", "parity", "--n", 5],
    ["search", "--func", "parity", "--n", 3, "--max-gates", 3],
    ["search", "--table", "011"],
    ["search", "--func", "parity"],
])
def test_usage_errors(run, argv):
    assert run(*argv)[0] == 2


def test_argparse_errors_exit_2(run):
    with pytest.raises(SystemExit) as exc:
        main(["synth", "--func", "xor", "--n", "3"])
    assert exc.value.code == 2


@pytest.mark.parametrize("func,n,bits,out", [
    ("parity", 3, "110", 0),
    ("parity", 3, "111", 1),
    ("majority", 5, "11100", 1),
    ("majority", 5, "11000", 0),
])
def test_eval_examples(run, tmp_path, func, n, bits, out):
    path = synth_file(run, tmp_path, func, n)
    code, text, _ = run("eval", "--circuit", path, "--input", bits)
    lines = text.splitlines()
    assert code == 0
    assert lines[-1] == f"out = {out}"
    assert lines[0].startswith("h1 = ") and len(lines) == load_circuit(path).size + 1


def test_eval_errors(run, tmp_path):
    path = synth_file(run, tmp_path, "parity", 3)
    assert run("eval", "--circuit", path, "--input", "10")[0] == 2
    assert run("eval", "--circuit", path, "--input", "1x0")[0] == 2
    bad = tmp_path / "bad.acc"
    bad.write_text("ac-circuit v1\ninputs 3\ngate 1 wires x1 x9\n")
    assert run("eval", "--circuit", bad, "--input", "101")[0] == 3
    assert run("eval", "--circuit", tmp_path / "missing.acc", "--input", "101")[0] == 2


def test_validate_command(run, tmp_path):
    path = synth_file(run, tmp_path, "majority", 4)
    code, out, _ = run("validate", "--circuit", path, "--func", "majority", "--table")
    assert code == 0
    assert out.splitlines() == ["valid: 4 inputs, 3 gates", "computes majority", "table: 0001011101111111"]
    assert run("validate", "--circuit", path, "--func", "parity")[0] == 1
    fwd = tmp_path / "fwd.acc"
    fwd.write_text("ac-circuit v1\ninputs 1\ngate 1 wires g2\nsupport 1\nendgate\n"
                   "gate 2 wires x1\nsupport 1\nendgate\n")
    code, out, _ = run("validate", "--circuit", fwd)
    assert code == 1 and "forward-reference" in out


@pytest.mark.parametrize("func,n,bound,tight", [
    ("parity", 8, 4, True),
    ("layered-parity", 5, 3, False),
    ("majority", 6, 4, True),
])
def test_certify_examples(run, tmp_path, func, n, bound, tight):
    path = synth_file(run, tmp_path, func, n)
    target = "majority" if func == "majority" else "parity"
    cert = tmp_path / "c.cert"
    code, out, _ = run("certify", "--circuit", path, "--func", target, "-o", cert)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == f"bound: {bound}"
    assert lines[1] == f"gates: {load_circuit(path).size}"
    assert ("tight" in lines) == tight
    code, out, _ = run("check-cert", "--circuit", path, "--cert", cert)
    assert code == 0 and out.strip() == f"certificate OK: L >= {bound}"


def test_certify_wrong_function(run, tmp_path):
    path = synth_file(run, tmp_path, "majority", 4)
    assert run("certify", "--circuit", path, "--func", "parity")[0] == 4


def certified(run, tmp_path, n=8):
    path = synth_file(run, tmp_path, "parity", n)
    cert = tmp_path / "c.cert"
    run("certify", "--circuit", path, "--func", "parity", "-o", cert)
    return path, cert


def test_check_cert_tampered_charge(run, tmp_path):
    path, cert_path = certified(run, tmp_path)
    lines = cert_path.read_text().splitlines()
    charged = [i for i, ln in enumerate(lines) if " charge " in ln]
    lines[charged[1]] = lines[charged[1]].rsplit(" ", 1)[0] + " " + lines[charged[0]].rsplit(" ", 1)[1]
    cert_path.write_text("\n".join(lines) + "\n")
    code, out, _ = run("check-cert", "--circuit", path, "--cert", cert_path)
    assert code == 1 and "[injective]" in out


def test_check_cert_shuffled(run, tmp_path):
    path, cert_path = certified(run, tmp_path)
    cert = load_certificate(cert_path)
    tuples = list(cert.tuples)
    tuples[1], tuples[2] = tuples[2], tuples[1]
    charges = {({1: 2, 2: 1}.get(p, p)): k for p, k in cert.charges.items()}
    cert_path.write_text(format_certificate(type(cert)(cert.n, cert.function, tuple(tuples), charges,
                                                       cert.claimed_bound)))
    code, out, _ = run("check-cert", "--circuit", path, "--cert", cert_path)
    assert code == 1 and "[chain]" in out


def test_check_cert_parse_error(run, tmp_path):
    path, cert_path = certified(run, tmp_path)
    cert_path.write_text("ac-cert v1\ninputs 8\nfunction parity\nbound x\n")
    assert run("check-cert", "--circuit", path, "--cert", cert_path)[0] == 3


def test_search_examples(run):
    code, out, _ = run("search", "--func", "majority", "--n", 4, "--max-gates", 2, "--jobs", 1)
    assert code == 0
    assert out.splitlines()[-1] == "no circuit with <= 2 gates; L(m_4) >= 3"
    assert "visited 2592004 candidates" in out
    code, out, _ = run("search", "--func", "parity", "--n", 2, "--max-gates", 1)
    assert code == 0 and out.splitlines()[-1] == "min gates: 1"
    code, out, _ = run("search", "--table", "0110100110010110", "--max-gates", 2, "--jobs", 1)
    assert code == 0 and out.splitlines()[-1] == "min gates: 2"


def test_search_writes_circuit(run, tmp_path):
    path = tmp_path / "p3.acc"
    code, _, _ = run("search", "--func", "parity", "--n", 3, "--jobs", 1, "-o", path)
    assert code == 0
    assert truth_table(load_circuit(path)).tolist() == parity_table(3).tolist()


def test_search_report_independent_of_jobs(run):
    outs = {run("search", "--func", "parity", "--n", 4, "--jobs", j)[1] for j in (1, 2)}
    assert len(outs) == 1


def test_bounds_rows(run):
    code, out, _ = run("bounds", "--n-range", "1..10")
    assert code == 0
    rows = {int(r.split()[0]): [int(v) for v in r.split()[1:]] for r in out.splitlines()[1:]}
    assert rows[1] == [1, 1, 1, 1]
    assert rows[5] == [3, 3, 3, 5]
    assert rows[10] == [5, 6, 6, 10]
    assert all(r[2] <= r[3] for r in rows.values())
    code, out, _ = run("bounds", "--n-range", "1..64")
    assert code == 0 and len(out.splitlines()) == 65


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "acbasis", "synth", "--func", "parity", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "gates: 2"

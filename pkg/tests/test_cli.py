import json
import subprocess
import sys

import pytest

from padichyper.cli import EXIT_FAIL, EXIT_OK, EXIT_UNDEFINED, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "ijk,value,modulus",
    [(("7", "3", "1", "1", "3"), 290, 2401), (("5", "4", "1", "1", "3"), 131, 625), (("11", "5", "1", "3", "4"), 0, 14641)],
)
def test_special_value(capsys, ijk, value, modulus):
    p, N, i, j, k = ijk
    code, out, _ = run(capsys, "special-value", "--p", p, "--N", N, "--i", i, "--j", j, "--k", k, "--json")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["value"] == value and record["modulus"] == modulus
    assert record["stable"] and record["h_unit_ok"]
    assert json.dumps(record) == out.strip()


def test_special_value_plain(capsys):
    code, out, _ = run(capsys, "special-value", "--p", "7", "--N", "3", "--i", "1", "--j", "1", "--k", "3")
    assert code == EXIT_OK and out.split()[0] == "290"


@pytest.mark.parametrize(
    "argv,fragment",
    [
        (["--p", "7", "--N", "4", "--i", "1", "--j", "1", "--k", "3"], "divide"),
        (["--p", "7", "--N", "3", "--i", "2", "--j", "2", "--k", "3"], "i+j <= k"),
        (["--p", "7", "--N", "3", "--i", "0", "--j", "1", "--k", "3"], "1..N"),
    ],
)
def test_special_value_invalid(capsys, argv, fragment):
    code, _, err = run(capsys, "special-value", *argv)
    assert code == EXIT_USAGE and fragment in err


def test_special_value_undefined(capsys):
    code, _, err = run(capsys, "special-value", "--p", "7", "--N", "2", "--i", "1", "--j", "1", "--k", "2", "--alpha", "2")
    assert code == EXIT_UNDEFINED and "undefined" in err


def test_table_single_row(capsys):
    code, out, _ = run(capsys, "table", "--p", "3", "--N", "2")
    assert code == EXIT_OK
    assert out == "p,N,i,j,k,modulus,value\n3,2,1,1,2,81,0\n"


def test_table_reduced_precision(capsys):
    _, low, _ = run(capsys, "table", "--p", "5", "--N", "4", "--prec", "2", "--format", "json")
    _, high, _ = run(capsys, "table", "--p", "5", "--N", "4", "--format", "json")
    lows = [json.loads(x) for x in low.splitlines()]
    highs = [json.loads(x) for x in high.splitlines()]
    assert [r["value"] for r in lows] == [r["value"] % 25 for r in highs]
    assert {(r["i"], r["j"], r["k"]): r["value"] for r in lows}[(1, 1, 3)] == 6


def test_table_primitive_filter(capsys):
    _, full, _ = run(capsys, "table", "--p", "5", "--N", "4")
    _, prim, _ = run(capsys, "table", "--p", "5", "--N", "4", "--primitive")
    assert "5,4,2,2,4" in full and "5,4,2,2,4" not in prim


def test_table_is_byte_stable(capsys):
    _, first, _ = run(capsys, "table", "--p", "7", "--N", "3")
    _, second, _ = run(capsys, "table", "--p", "7", "--N", "3", "--threads", "2")
    assert first == second


def test_table_json_round_trip(capsys):
    _, out, _ = run(capsys, "table", "--p", "7", "--N", "3", "--format", "json")
    for line in out.splitlines():
        assert json.dumps(json.loads(line)) == line


def test_table_check_against_published(capsys):
    code, _, err = run(capsys, "table", "--p", "7", "--N", "6", "--check")
    assert code == EXIT_OK and err == ""


def test_table_usage(capsys):
    assert run(capsys, "table")[0] == EXIT_USAGE
    assert run(capsys, "table", "--paper", "--p", "3")[0] == EXIT_USAGE
    assert run(capsys, "table", "--p", "7", "--N", "4")[0] == EXIT_USAGE


def test_verify_log(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "log", "--p", "3", "--n", "1")
    assert code == EXIT_OK and "all checks pass" in out


def test_verify_all_with_jsonl(capsys, tmp_path):
    sink = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "verify", "--suite", "all", "--p", "5", "--n", "1", "--max-m", "20", "--jsonl", str(sink))
    assert code == EXIT_OK
    records = [json.loads(x) for x in sink.read_text().splitlines()]
    assert records and all(r["passes"] for r in records)
    assert len(records) == len(out.splitlines()) - 1


def test_verify_p_two_notes_modulus(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "log", "--p", "2", "--n", "3")
    assert code == EXIT_OK and "2^2" in out


def test_verify_custom_corpus(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("# two entries\n1/4,1/4;1/2\n(1/2,1/2;1)\n")
    code, out, _ = run(capsys, "verify", "--suite", "coeff", "--p", "5", "--corpus", str(corpus))
    assert code == EXIT_OK and out.count("coeff") == 2


def test_verify_reports_failure(capsys, monkeypatch):
    import padichyper.congruence as cg

    real = cg.constant_D0
    monkeypatch.setattr(cg, "constant_D0", lambda params, prec: real(params, prec) + 1)
    code, out, _ = run(capsys, "verify", "--suite", "log", "--p", "5", "--n", "1")
    assert code == EXIT_FAIL and "failure" in out


def test_verify_bad_corpus_line(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("1/2,1/2\n")
    assert run(capsys, "verify", "--p", "5", "--corpus", str(corpus))[0] == EXIT_USAGE


def test_curve_all(capsys):
    code, out, _ = run(capsys, "curve", "--N", "2", "--i", "1", "--p", "3", "--check", "all")
    assert code == EXIT_OK
    assert "0 mod 81" in out and "FAIL" not in out
    assert "E1: [0, 1, 5/8" in out


def test_curve_ode(capsys):
    code, out, _ = run(capsys, "curve", "--N", "2", "--i", "1", "--p", "3", "--check", "ode")
    assert code == EXIT_OK and "ode residual zero" in out


def test_curve_endpoint_skipped_when_not_applicable(capsys):
    code, out, _ = run(capsys, "curve", "--N", "5", "--i", "2", "--p", "7")
    assert code == EXIT_OK and "skipped" in out


def test_curve_invalid(capsys):
    assert run(capsys, "curve", "--N", "5", "--i", "1", "--p", "5")[0] == EXIT_USAGE


def test_psi(capsys):
    assert run(capsys, "psi", "--p", "3", "--z", "1/2", "--prec", "2")[1] == "4\n"
    assert run(capsys, "psi", "--p", "7", "--z", "1", "--prec", "4")[1] == "0\n"
    assert run(capsys, "psi", "--p", "3", "--z", "1/3")[0] == EXIT_USAGE
    assert run(capsys, "psi", "--p", "3", "--z", "x")[0] == EXIT_USAGE


def test_dwork_prime(capsys):
    code, out, _ = run(capsys, "dwork-prime", "--p", "5", "--a", "1/3", "--iters", "4")
    assert code == EXIT_OK
    assert out.splitlines() == ["1/3, 2/3, 1/3, 2/3", "preperiod 0, period 2"]


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nonsense", "--p", "3"])
    assert info.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "padichyper", "psi", "--p", "3", "--z", "1/2", "--prec", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "4\n"
